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
// Scalar propagation-gain models: free-space element gain, the linear
// (far-field) total gain of an N-element array with its energy-conservation
// cap, the exact total gain of a square broadside planar array, and the
// relative error between the linear and exact models.

#ifndef REFLECT_LAB_PROPAGATION_HPP
#define REFLECT_LAB_PROPAGATION_HPP

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "reflect_lab/errors.hpp"

namespace reflect_lab
{
    inline constexpr double speed_of_light_mps = 299792458.0;

    namespace detail
    {
        template <std::floating_point T>
        void check_positive(T value, const char *name)
        {
            if (!std::isfinite(value) || !(value > T(0)))
                throw InvalidInput(std::string(name) + " must be positive and finite");
        }

        template <std::floating_point T>
        void check_unit_interval(T value, const char *name)
        {
            if (!std::isfinite(value) || !(value >= T(0)) || !(value <= T(1)))
                throw InvalidInput(std::string(name) + " must lie in [0, 1]");
        }
    } // namespace detail

    // Which total-gain model produced a value.
    enum class GainModel
    {
        spherical,
        planar_exact,
        far_field
    };

    inline const char *to_string(GainModel model)
    {
        switch (model)
        {
        case GainModel::spherical:
            return "spherical";
        case GainModel::planar_exact:
            return "planar-exact";
        case GainModel::far_field:
            return "far-field";
        }
        return "unknown";
    }

    // Wavelength and effective aperture of one receiving element.
    template <std::floating_point T>
    struct ElementGeometry
    {
        T wavelength; // lambda [m]
        T area;       // effective aperture A [m^2]

        // Lossless isotropic element: A = lambda^2 / (4 pi).
        static ElementGeometry isotropic(T wavelength)
        {
            detail::check_positive(wavelength, "wavelength");
            return {wavelength, wavelength * wavelength / (T(4) * std::numbers::pi_v<T>)};
        }

        static ElementGeometry isotropic_from_frequency(T frequency_hz)
        {
            detail::check_positive(frequency_hz, "frequency");
            return isotropic(static_cast<T>(speed_of_light_mps) / frequency_hz);
        }

        static ElementGeometry with_area(T wavelength, T area)
        {
            detail::check_positive(wavelength, "wavelength");
            detail::check_positive(area, "area");
            return {wavelength, area};
        }

        friend bool operator==(const ElementGeometry &, const ElementGeometry &) = default;
    };

    // Perpendicular distance from the transmitter to the array center, which
    // must be the closest point of the array.
    template <std::floating_point T>
    struct PropagationPath
    {
        T distance; // d [m]
    };

    // Total channel gain rho = P_rx / P_tx of an N-element array.
    template <std::floating_point T>
    struct TotalGain
    {
        T value;
        GainModel model;
        bool far_field_valid; // N within the linear-model rule of thumb
    };

    // Fraction of isotropically radiated power captured by a single element of
    // aperture A at distance d: beta = A / (4 pi d^2). Rejects geometries whose
    // aperture exceeds the sphere surface, since the gain would exceed 1.
    template <std::floating_point T>
    T free_space_gain(const ElementGeometry<T> &geom, const PropagationPath<T> &path)
    {
        detail::check_positive(geom.wavelength, "wavelength");
        detail::check_positive(geom.area, "area");
        detail::check_positive(path.distance, "distance");
        const T sphere_surface = T(4) * std::numbers::pi_v<T> * path.distance * path.distance;
        if (geom.area > sphere_surface)
            throw InvalidInput("element aperture exceeds the sphere surface at this distance; "
                               "free-space gain would exceed 1");
        return geom.area / sphere_surface;
    }

    // Largest element count N for which the linear total-gain model is taken
    // to be trustworthy: floor(10 d^2 / A), from the rule N * A / 10 < d^2.
    // Returns 0 when no count qualifies.
    template <std::floating_point T>
    std::uint64_t rule_of_thumb_max(const ElementGeometry<T> &geom, const PropagationPath<T> &path)
    {
        detail::check_positive(geom.area, "area");
        detail::check_positive(path.distance, "distance");
        const T bound = std::floor(T(10) * path.distance * path.distance / geom.area);
        if (bound < T(0))
            return 0;
        if (bound >= static_cast<T>(std::numeric_limits<std::uint64_t>::max()))
            return std::numeric_limits<std::uint64_t>::max();
        return static_cast<std::uint64_t>(bound);
    }

    // Largest N whose linear gain N * beta stays within the unit energy bound.
    // Starts from floor(1 / beta) and nudges so the result is consistent with
    // the multiplication used by spherical_total_gain.
    template <std::floating_point T>
    std::uint64_t spherical_saturation_cap(T beta)
    {
        detail::check_positive(beta, "beta");
        T raw = std::floor(T(1) / beta);
        if (raw >= static_cast<T>(std::numeric_limits<std::uint64_t>::max()))
            return std::numeric_limits<std::uint64_t>::max();
        std::uint64_t cap = raw < T(1) ? 0 : static_cast<std::uint64_t>(raw);
        while (static_cast<T>(cap + 1) * beta <= T(1))
            ++cap;
        while (cap > 0 && static_cast<T>(cap) * beta > T(1))
            --cap;
        return cap;
    }

    // Linear array gain N * beta of N identical elements spread on the sphere
    // around the transmitter. Valid while energy conservation permits; when
    // N * beta would exceed 1 the call fails with the largest admissible count
    // instead of clamping, so the physical-validity boundary stays visible.
    template <std::floating_point T>
    TotalGain<T> spherical_total_gain(std::uint64_t n, T beta)
    {
        if (n < 1)
            throw InvalidInput("element count must be at least 1");
        detail::check_unit_interval(beta, "beta");
        const T value = static_cast<T>(n) * beta;
        if (value > T(1))
        {
            const std::uint64_t cap = spherical_saturation_cap(beta);
            throw SaturationError("spherical gain saturates: " + std::to_string(n) +
                                      " elements exceed the full-sphere cap of " + std::to_string(cap),
                                  cap);
        }
        return {value, GainModel::spherical, true};
    }

    // Exact received-power fraction of a square broadside array of N elements
    // with per-element aperture A, centered at perpendicular distance d:
    //
    //   alpha = (1/pi) * atan( N A / (4 d sqrt(N A + d^2)) )
    //
    // Strictly increasing in N, strictly decreasing in d, and below 1/2 for
    // every finite N. N A + d^2 is formed in one expression; the evaluation
    // stays well conditioned in double precision for N below about 1e15.
    template <std::floating_point T>
    TotalGain<T> planar_exact_gain(std::uint64_t n, const ElementGeometry<T> &geom,
                                   const PropagationPath<T> &path)
    {
        if (n < 1)
            throw InvalidInput("element count must be at least 1");
        detail::check_positive(geom.area, "area");
        detail::check_positive(path.distance, "distance");
        const T na = static_cast<T>(n) * geom.area;
        const T d = path.distance;
        const T value = std::atan(na / (T(4) * d * std::sqrt(na + d * d))) / std::numbers::pi_v<T>;
        return {value, GainModel::planar_exact, n <= rule_of_thumb_max(geom, path)};
    }

    // Linear approximation N * beta of the planar-array gain. Deliberately
    // evaluable past its validity range (sweep consumers plot both regimes);
    // far_field_valid reports the rule of thumb instead of failing.
    template <std::floating_point T>
    TotalGain<T> far_field_gain(std::uint64_t n, const ElementGeometry<T> &geom,
                                const PropagationPath<T> &path)
    {
        if (n < 1)
            throw InvalidInput("element count must be at least 1");
        const T beta = free_space_gain(geom, path);
        return {static_cast<T>(n) * beta, GainModel::far_field, n <= rule_of_thumb_max(geom, path)};
    }

    // Relative deviation |N beta - alpha| / alpha between the linear model and
    // the exact planar gain. Non-negative, and grows once the array leaves the
    // far-field regime.
    template <std::floating_point T>
    T far_field_relative_error(std::uint64_t n, const ElementGeometry<T> &geom,
                               const PropagationPath<T> &path)
    {
        const T exact = planar_exact_gain(n, geom, path).value;
        const T linear = far_field_gain(n, geom, path).value;
        return std::abs(linear - exact) / exact;
    }

} // namespace reflect_lab

#endif
