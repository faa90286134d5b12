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
// Rates, sweeps over the element count, breakeven solving, and required-power
// scaling curves for the active-array and surface-aided link models.

#ifndef REFLECT_LAB_ANALYSIS_HPP
#define REFLECT_LAB_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reflect_lab/errors.hpp"
#include "reflect_lab/links.hpp"
#include "reflect_lab/propagation.hpp"
#include "reflect_lab/version.hpp"

namespace reflect_lab
{
    enum class LinkModel
    {
        mmimo,         // active array with maximum ratio combining
        irs_far_field, // passive surface, linear receiver-side gain
        irs_exact      // passive surface, exact planar receiver-side gain
    };

    inline const char *to_string(LinkModel model)
    {
        switch (model)
        {
        case LinkModel::mmimo:
            return "mmimo";
        case LinkModel::irs_far_field:
            return "irs-far-field";
        case LinkModel::irs_exact:
            return "irs-exact";
        }
        return "unknown";
    }

    inline LinkModel parse_link_model(std::string_view name)
    {
        if (name == "mmimo")
            return LinkModel::mmimo;
        if (name == "irs-far-field")
            return LinkModel::irs_far_field;
        if (name == "irs-exact")
            return LinkModel::irs_exact;
        throw InvalidInput("unknown model '" + std::string(name) +
                           "' (expected mmimo, irs-far-field or irs-exact)");
    }

    // Full parameterization of one experiment. The per-element gains default
    // to the free-space law applied to (geometry, distance); the overrides pin
    // them directly when a stated gain should be reproduced instead.
    template <std::floating_point T>
    struct Scenario
    {
        ElementGeometry<T> geometry{};
        T d_h{}; // transmitter -> array distance [m]
        T d_g{}; // array -> receiver distance [m]
        RadioBudget<T> budget{};
        T mu = T(1);
        std::optional<T> beta_override_h;
        std::optional<T> beta_override_g;
        std::vector<std::uint64_t> n_grid; // strictly increasing, >= 1
        std::uint64_t seed = 0;

        T beta_h() const
        {
            return beta_override_h ? *beta_override_h
                                   : free_space_gain(geometry, PropagationPath<T>{d_h});
        }

        T beta_g() const
        {
            return beta_override_g ? *beta_override_g
                                   : free_space_gain(geometry, PropagationPath<T>{d_g});
        }

        friend bool operator==(const Scenario &, const Scenario &) = default;
    };

    namespace detail
    {
        template <std::floating_point T>
        void validate_scenario_core(const Scenario<T> &s)
        {
            check_positive(s.geometry.wavelength, "wavelength");
            check_positive(s.geometry.area, "area");
            check_positive(s.d_h, "d_h");
            check_positive(s.d_g, "d_g");
            validate(s.budget);
            check_reflection_coefficient(s.mu);
            if (s.beta_override_h)
                check_unit_interval(*s.beta_override_h, "beta_h override");
            if (s.beta_override_g)
                check_unit_interval(*s.beta_override_g, "beta_g override");
        }
    } // namespace detail

    template <std::floating_point T>
    void validate_scenario(const Scenario<T> &s)
    {
        detail::validate_scenario_core(s);
        if (s.n_grid.empty())
            throw InvalidInput("n_grid must not be empty");
        if (s.n_grid.front() < 1)
            throw InvalidInput("n_grid entries must be at least 1");
        for (std::size_t i = 1; i < s.n_grid.size(); ++i)
            if (s.n_grid[i] <= s.n_grid[i - 1])
                throw InvalidInput("n_grid must be strictly increasing");
    }

    // One evaluated point of a sweep.
    template <std::floating_point T>
    struct LinkResult
    {
        std::uint64_t n{};
        LinkModel model{};
        T snr{};
        T rate{}; // log2(1 + snr) [bit per channel use]
        bool far_field_valid = false;
        bool energy_bound_exceeded = false; // far-field surface model past N = 1/beta_g
    };

    template <std::floating_point T>
    struct SweepTable
    {
        std::string scenario_digest;
        std::vector<LinkResult<T>> rows; // sorted by (model, n), one row per pair
        std::uint64_t seed = 0;
        std::string tool_version;
    };

    // Spectral rate at the given SNR, log2(1 + snr) bits per channel use.
    template <std::floating_point T>
    T rate(T snr)
    {
        if (std::isnan(snr) || snr < T(0))
            throw InvalidInput("snr must be non-negative");
        return std::log1p(snr) / std::numbers::ln2_v<T>;
    }

    // Log-spaced integer grid between n_min and n_max, endpoints included,
    // duplicates removed.
    inline std::vector<std::uint64_t> log_grid(std::uint64_t n_min, std::uint64_t n_max,
                                               unsigned points_per_decade)
    {
        if (n_min < 1 || n_max < n_min)
            throw InvalidInput("grid bounds must satisfy 1 <= n_min <= n_max");
        if (points_per_decade < 1)
            throw InvalidInput("points_per_decade must be at least 1");
        std::vector<std::uint64_t> grid{n_min};
        const double lo = std::log10(static_cast<double>(n_min));
        const double hi = std::log10(static_cast<double>(n_max));
        for (std::uint64_t k = 1;; ++k)
        {
            const double exponent = lo + static_cast<double>(k) / points_per_decade;
            if (exponent >= hi)
                break;
            const auto n = static_cast<std::uint64_t>(std::llround(std::pow(10.0, exponent)));
            if (n > grid.back() && n < n_max)
                grid.push_back(n);
        }
        if (n_max > grid.back())
            grid.push_back(n_max);
        return grid;
    }

    // Closed-form SNR of one model at one array size. The surface models are
    // evaluated as (gain fraction) x (active-array SNR), so comparisons between
    // the two setups at equal N are exact in floating point whenever the
    // fraction is at most 1.
    template <std::floating_point T>
    T model_snr(const Scenario<T> &s, LinkModel model, std::uint64_t n)
    {
        if (n < 1)
            throw InvalidInput("element count must be at least 1");
        const T mmimo = static_cast<T>(n) * s.beta_h() * s.budget.snr_scale();
        switch (model)
        {
        case LinkModel::mmimo:
            return mmimo;
        case LinkModel::irs_far_field:
            return detail::reflected_fraction(s.mu, n, s.beta_g()) * mmimo;
        case LinkModel::irs_exact:
        {
            const T alpha_g = planar_exact_gain(n, s.geometry, PropagationPath<T>{s.d_g}).value;
            return (s.mu * s.mu * alpha_g) * mmimo;
        }
        }
        throw InvalidInput("unknown model");
    }

    namespace detail
    {
        inline std::uint64_t fnv1a64(std::string_view text)
        {
            std::uint64_t hash = 1469598103934665603ULL;
            for (const char c : text)
            {
                hash ^= static_cast<unsigned char>(c);
                hash *= 1099511628211ULL;
            }
            return hash;
        }

        inline std::string format_full(double value)
        {
            char buffer[40];
            std::snprintf(buffer, sizeof buffer, "%.17g", value);
            return buffer;
        }
    } // namespace detail

    // Order-stable fingerprint over every scenario field that affects results.
    template <std::floating_point T>
    std::string scenario_digest(const Scenario<T> &s)
    {
        std::string text;
        text += "lambda=" + detail::format_full(static_cast<double>(s.geometry.wavelength));
        text += ";area=" + detail::format_full(static_cast<double>(s.geometry.area));
        text += ";d_h=" + detail::format_full(static_cast<double>(s.d_h));
        text += ";d_g=" + detail::format_full(static_cast<double>(s.d_g));
        text += ";p_tx=" + detail::format_full(static_cast<double>(s.budget.p_tx));
        text += ";noise=" + detail::format_full(static_cast<double>(s.budget.noise));
        text += ";mu=" + detail::format_full(static_cast<double>(s.mu));
        text += ";beta_h=";
        text += s.beta_override_h ? detail::format_full(static_cast<double>(*s.beta_override_h))
                                  : "auto";
        text += ";beta_g=";
        text += s.beta_override_g ? detail::format_full(static_cast<double>(*s.beta_override_g))
                                  : "auto";
        text += ";seed=" + std::to_string(s.seed);
        text += ";grid=";
        for (const std::uint64_t n : s.n_grid)
        {
            text += std::to_string(n);
            text += ',';
        }
        char digest[17];
        std::snprintf(digest, sizeof digest, "%016llx",
                      static_cast<unsigned long long>(detail::fnv1a64(text)));
        return digest;
    }

    // One row per (model, n) pair, rows ordered by (model, n). A row whose
    // gain model fails to evaluate is dropped; the rest of the sweep proceeds.
    template <std::floating_point T>
    SweepTable<T> run_sweep(const Scenario<T> &s, std::vector<LinkModel> models)
    {
        validate_scenario(s);
        if (models.empty())
            throw InvalidInput("select at least one model");
        std::sort(models.begin(), models.end());
        models.erase(std::unique(models.begin(), models.end()), models.end());

        SweepTable<T> table;
        table.scenario_digest = scenario_digest(s);
        table.seed = s.seed;
        table.tool_version = version_string;
        table.rows.reserve(models.size() * s.n_grid.size());

        const std::uint64_t rule_h = rule_of_thumb_max(s.geometry, PropagationPath<T>{s.d_h});
        const std::uint64_t rule_g = rule_of_thumb_max(s.geometry, PropagationPath<T>{s.d_g});

        for (const LinkModel model : models)
        {
            for (const std::uint64_t n : s.n_grid)
            {
                try
                {
                    LinkResult<T> row;
                    row.n = n;
                    row.model = model;
                    row.snr = model_snr(s, model, n);
                    row.rate = rate(row.snr);
                    // The linear gain model enters through beta_h for every
                    // model, and additionally through beta_g for the far-field
                    // surface model.
                    row.far_field_valid = model == LinkModel::irs_far_field
                                              ? (n <= rule_h && n <= rule_g)
                                              : n <= rule_h;
                    row.energy_bound_exceeded = model == LinkModel::irs_far_field &&
                                                static_cast<T>(n) * s.beta_g() > T(1);
                    table.rows.push_back(row);
                }
                catch (const Error &)
                {
                    // leave this row out, keep sweeping
                }
            }
        }
        if (table.rows.empty())
            throw InvalidInput("sweep produced no rows");
        return table;
    }

    // Smallest surface size whose rate reaches the rate of a reference active
    // array with n_ref elements. Brackets by doubling (capped at 1e12) and
    // finishes with integer bisection; both surface models have rates that are
    // non-decreasing in N, so the answer is exact.
    template <std::floating_point T>
    std::uint64_t breakeven_elements(const Scenario<T> &s, LinkModel irs_model, std::uint64_t n_ref)
    {
        detail::validate_scenario_core(s);
        if (irs_model == LinkModel::mmimo)
            throw InvalidInput("breakeven needs a surface model (irs-far-field or irs-exact)");
        if (n_ref < 1)
            throw InvalidInput("reference element count must be at least 1");

        constexpr std::uint64_t search_cap = 1'000'000'000'000ULL;
        const T target = rate(model_snr(s, LinkModel::mmimo, n_ref));
        const auto reaches = [&](std::uint64_t n)
        { return rate(model_snr(s, irs_model, n)) >= target; };

        if (reaches(1))
            return 1;
        std::uint64_t lo = 1;
        std::uint64_t hi = 2;
        while (!reaches(hi))
        {
            if (hi >= search_cap)
            {
                const T best = rate(model_snr(s, irs_model, search_cap));
                throw UnreachableTargetError(
                    "target rate " + detail::format_full(static_cast<double>(target)) +
                        " bit/cu not reachable with " + std::string(to_string(irs_model)) +
                        " below N = 1e12; best achievable there is " +
                        detail::format_full(static_cast<double>(best)) + " bit/cu",
                    static_cast<double>(best));
            }
            lo = hi;
            hi = hi > search_cap / 2 ? search_cap : hi * 2;
        }
        while (hi - lo > 1)
        {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            (reaches(mid) ? hi : lo) = mid;
        }
        return hi;
    }

    // Transmit power that meets the target SNR for the given model and size.
    // Doubling N halves the answer exactly for the active array and quarters
    // it exactly for the far-field surface model.
    template <std::floating_point T>
    T required_power(const Scenario<T> &s, LinkModel model, std::uint64_t n, T target_snr)
    {
        detail::validate_scenario_core(s);
        if (n < 1)
            throw InvalidInput("element count must be at least 1");
        if (!std::isfinite(target_snr) || !(target_snr > T(0)))
            throw InvalidInput("target snr must be positive and finite");

        T gain{};
        switch (model)
        {
        case LinkModel::mmimo:
            gain = static_cast<T>(n) * s.beta_h();
            break;
        case LinkModel::irs_far_field:
            gain = s.mu * s.mu * (static_cast<T>(n) * static_cast<T>(n)) * s.beta_g() * s.beta_h();
            break;
        case LinkModel::irs_exact:
        {
            const T alpha_g = planar_exact_gain(n, s.geometry, PropagationPath<T>{s.d_g}).value;
            gain = (s.mu * s.mu * alpha_g) * (static_cast<T>(n) * s.beta_h());
            break;
        }
        }
        return target_snr * s.budget.noise / gain;
    }

} // namespace reflect_lab

#endif
