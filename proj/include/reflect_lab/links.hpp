// SPDX-License-Identifier: Apache-2.0
//
// reflect-lab  Link-budget simulation for massive MIMO and reflecting surfaces
// Copyright (C) 2026 reflect-lab developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Line-of-sight channel vectors, receive combining, reflecting-surface phase
// optimization, and the SNR expressions of the active-array and surface-aided
// setups (linear and exact receiver-side gain models).

#ifndef REFLECT_LAB_LINKS_HPP
#define REFLECT_LAB_LINKS_HPP

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "reflect_lab/errors.hpp"
#include "reflect_lab/propagation.hpp"

namespace reflect_lab
{
    namespace detail
    {
        template <std::floating_point T>
        T wrap_phase(T phase)
        {
            const T two_pi = T(2) * std::numbers::pi_v<T>;
            T wrapped = std::fmod(phase, two_pi);
            if (wrapped < T(0))
                wrapped += two_pi;
            if (wrapped >= two_pi)
                wrapped = T(0);
            return wrapped;
        }

        template <std::floating_point T>
        void check_reflection_coefficient(T mu)
        {
            if (!std::isfinite(mu) || !(mu > T(0)) || !(mu <= T(1)))
                throw InvalidInput("reflection coefficient mu must lie in (0, 1]");
        }

        // mu^2 * N * beta_g, with a pinned evaluation order so every caller
        // computes the identical floating-point value.
        template <std::floating_point T>
        T reflected_fraction(T mu, std::uint64_t n, T beta_g)
        {
            return mu * mu * static_cast<T>(n) * beta_g;
        }
    } // namespace detail

    // Transmit power and receiver noise power, both in watts.
    template <std::floating_point T>
    struct RadioBudget
    {
        T p_tx;
        T noise;

        // P_tx / sigma^2, the SNR a unit-gain channel would see.
        T snr_scale() const { return p_tx / noise; }

        friend bool operator==(const RadioBudget &, const RadioBudget &) = default;
    };

    template <std::floating_point T>
    void validate(const RadioBudget<T> &budget)
    {
        detail::check_positive(budget.p_tx, "transmit power");
        detail::check_positive(budget.noise, "noise power");
    }

    // Line-of-sight channel of N entries sqrt(gain) * e^{j phi_n}. Phases are
    // wrapped into [0, 2 pi) on construction; immutable afterwards, so values
    // can be shared freely across concurrent sweep workers.
    template <std::floating_point T>
    class ChannelVector
    {
    public:
        ChannelVector(T gain, std::vector<T> phases)
            : gain_(gain), phases_(std::move(phases))
        {
            detail::check_unit_interval(gain_, "channel gain");
            if (phases_.empty())
                throw InvalidInput("channel needs at least one element");
            for (T &p : phases_)
            {
                if (!std::isfinite(p))
                    throw InvalidInput("channel phases must be finite");
                p = detail::wrap_phase(p);
            }
        }

        T gain() const noexcept { return gain_; }
        std::size_t size() const noexcept { return phases_.size(); }
        const std::vector<T> &phases() const noexcept { return phases_; }
        T amplitude() const { return std::sqrt(gain_); }

        std::complex<T> entry(std::size_t i) const
        {
            return {amplitude() * std::cos(phases_[i]), amplitude() * std::sin(phases_[i])};
        }

        std::vector<std::complex<T>> entries() const
        {
            std::vector<std::complex<T>> out(size());
            for (std::size_t i = 0; i < size(); ++i)
                out[i] = entry(i);
            return out;
        }

    private:
        T gain_;
        std::vector<T> phases_;
    };

    template <std::floating_point T>
    ChannelVector<T> build_los_channel(T gain, std::vector<T> phases)
    {
        return ChannelVector<T>(gain, std::move(phases));
    }

    // Per-element reflection behavior of a surface: one common amplitude
    // coefficient and one phase shift per element.
    template <std::floating_point T>
    struct ReflectionConfig
    {
        T mu;                  // amplitude reflection coefficient, (0, 1]
        std::vector<T> thetas; // applied phase shifts [rad]
    };

    // Receive combining weights.
    template <std::floating_point T>
    struct Combiner
    {
        std::vector<std::complex<T>> weights;
    };

    // Deterministic pseudo-random phases, uniform on [0, 2 pi). Generator and
    // integer-to-unit-interval mapping are pinned, so equal seeds reproduce
    // the same phases everywhere.
    template <std::floating_point T = double>
    std::vector<T> random_phases(std::size_t n, std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        const double two_pi = 2.0 * std::numbers::pi;
        std::vector<T> phases(n);
        for (T &p : phases)
        {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53; // [0, 1)
            p = detail::wrap_phase(static_cast<T>(u * two_pi));
        }
        return phases;
    }

    // SNR after applying combining weights v: |v^T h|^2 P_tx / (||v||^2 sigma^2).
    // Invariant under rescaling of v by any nonzero complex constant.
    template <std::floating_point T>
    T combiner_snr(const Combiner<T> &v, const ChannelVector<T> &h, const RadioBudget<T> &budget)
    {
        validate(budget);
        if (v.weights.size() != h.size())
            throw InvalidInput("combiner and channel must have the same length");
        std::complex<T> dot{};
        T norm_sq{};
        for (std::size_t i = 0; i < h.size(); ++i)
        {
            dot += v.weights[i] * h.entry(i);
            norm_sq += std::norm(v.weights[i]);
        }
        if (!(norm_sq > T(0)))
            throw InvalidInput("combiner must not be all zero");
        return std::norm(dot) / norm_sq * budget.snr_scale();
    }

    // Maximum ratio combining weights, v = conj(h) / ||h||.
    template <std::floating_point T>
    Combiner<T> mrc_combiner(const ChannelVector<T> &h)
    {
        if (!(h.gain() > T(0)))
            throw InvalidInput("maximum ratio combining needs a nonzero channel");
        const T inv_norm = T(1) / std::sqrt(static_cast<T>(h.size()) * h.gain());
        Combiner<T> v;
        v.weights.resize(h.size());
        for (std::size_t i = 0; i < h.size(); ++i)
            v.weights[i] = std::conj(h.entry(i)) * inv_norm;
        return v;
    }

    // SNR of maximum ratio combining in closed form: N beta_h P_tx / sigma^2.
    // Depends on the channel only through its length and gain, never on the
    // phases.
    template <std::floating_point T>
    T mrc_snr(const ChannelVector<T> &h, const RadioBudget<T> &budget)
    {
        validate(budget);
        return static_cast<T>(h.size()) * h.gain() * budget.snr_scale();
    }

    // Reflection phases that align every term of the cascaded channel:
    // theta_n = phi_n + psi_n (mod 2 pi). With these, each summand of
    // g^T diag(e^{-j theta}) h is real and non-negative, so the terms add
    // constructively.
    template <std::floating_point T>
    std::vector<T> optimal_irs_phases(const ChannelVector<T> &h, const ChannelVector<T> &g)
    {
        if (h.size() != g.size())
            throw InvalidInput("channels must have the same length");
        std::vector<T> thetas(h.size());
        for (std::size_t i = 0; i < h.size(); ++i)
            thetas[i] = detail::wrap_phase(h.phases()[i] + g.phases()[i]);
        return thetas;
    }

    // Surface-aided SNR evaluated from the cascaded vector product:
    // mu^2 |g^T diag(e^{-j theta}) h|^2 P_tx / sigma^2. The diagonal carries
    // unit-modulus phase factors; the amplitude coefficient enters as mu^2.
    template <std::floating_point T>
    T irs_snr(const ChannelVector<T> &h, const ChannelVector<T> &g,
              const ReflectionConfig<T> &cfg, const RadioBudget<T> &budget)
    {
        validate(budget);
        detail::check_reflection_coefficient(cfg.mu);
        if (h.size() != g.size())
            throw InvalidInput("channels must have the same length");
        if (cfg.thetas.size() != h.size())
            throw InvalidInput("reflection phases must match the channel length");
        std::complex<T> sum{};
        for (std::size_t i = 0; i < h.size(); ++i)
        {
            const std::complex<T> shift{std::cos(cfg.thetas[i]), -std::sin(cfg.thetas[i])};
            sum += g.entry(i) * shift * h.entry(i);
        }
        return cfg.mu * cfg.mu * std::norm(sum) * budget.snr_scale();
    }

    // The optimally phased surface SNR split into the fraction of captured
    // power re-radiated to the receiver and the SNR an active array of the
    // same size would deliver. product is their product; since the fraction
    // cannot exceed 1 inside the linear model's validity range, product can
    // never exceed mmimo_snr there.
    template <std::floating_point T>
    struct IrsFactorization
    {
        T reflected_fraction;       // mu^2 N beta_g
        T mmimo_snr;                // N beta_h P_tx / sigma^2
        T product;                  // surface SNR under optimal phasing
        bool energy_bound_exceeded; // linear model pushed past reflected_fraction = 1
    };

    template <std::floating_point T>
    IrsFactorization<T> irs_snr_factorized(const ChannelVector<T> &h, const ChannelVector<T> &g,
                                           T mu, const RadioBudget<T> &budget)
    {
        detail::check_reflection_coefficient(mu);
        if (h.size() != g.size())
            throw InvalidInput("channels must have the same length");
        IrsFactorization<T> out;
        out.reflected_fraction = detail::reflected_fraction(mu, g.size(), g.gain());
        out.mmimo_snr = mrc_snr(h, budget);
        out.product = out.reflected_fraction * out.mmimo_snr;
        out.energy_bound_exceeded = out.reflected_fraction > T(1);
        return out;
    }

    // Squared norm of the combining vector the surface implicitly applies,
    // ||Theta g||^2 = mu^2 beta_g N. Equals the reflected_fraction term of the
    // factorization; depends only on the channel magnitude, not its phases.
    template <std::floating_point T>
    T irs_combiner_loss(const ChannelVector<T> &g, T mu)
    {
        detail::check_reflection_coefficient(mu);
        return detail::reflected_fraction(mu, g.size(), g.gain());
    }

    // Surface-aided SNR with the receiver-side link evaluated by the exact
    // planar-array gain instead of the linear model:
    // mu^2 N alpha_g beta_h P_tx / sigma^2. Since alpha_g < 1/2, this stays
    // below half the SNR of the equally sized active array for every N.
    template <std::floating_point T>
    T irs_snr_exact(std::uint64_t n, const ElementGeometry<T> &geom, T d_g, T beta_h, T mu,
                    const RadioBudget<T> &budget)
    {
        validate(budget);
        detail::check_reflection_coefficient(mu);
        detail::check_unit_interval(beta_h, "beta_h");
        const T alpha_g = planar_exact_gain(n, geom, PropagationPath<T>{d_g}).value;
        const T mmimo = static_cast<T>(n) * beta_h * budget.snr_scale();
        return (mu * mu * alpha_g) * mmimo;
    }

} // namespace reflect_lab

#endif
