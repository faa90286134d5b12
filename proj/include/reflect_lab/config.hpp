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
// Flat key-value scenario documents. Sections: [geometry], [link], [budget],
// [sweep]. Unknown keys are rejected with the offending line number; the
// serializer emits a canonical document that parses back to the identical
// configuration.

#ifndef REFLECT_LAB_CONFIG_HPP
#define REFLECT_LAB_CONFIG_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reflect_lab/analysis.hpp"
#include "reflect_lab/errors.hpp"

namespace reflect_lab
{
    // Grid bounds as written in the document; the scenario's n_grid is derived
    // from them so a round trip through the serializer is lossless.
    struct SweepSpec
    {
        std::uint64_t n_min = 1;
        std::uint64_t n_max = 1'000'000;
        unsigned points_per_decade = 40;

        friend bool operator==(const SweepSpec &, const SweepSpec &) = default;
    };

    struct RunConfig
    {
        Scenario<double> scenario;
        SweepSpec sweep;
        std::vector<LinkModel> models = {LinkModel::mmimo, LinkModel::irs_far_field,
                                         LinkModel::irs_exact};
        bool isotropic_area = true; // element_area_m2 given as "isotropic"

        friend bool operator==(const RunConfig &, const RunConfig &) = default;
    };

    namespace detail
    {
        inline std::string_view trim(std::string_view text)
        {
            const auto begin = text.find_first_not_of(" \t\r");
            if (begin == std::string_view::npos)
                return {};
            const auto end = text.find_last_not_of(" \t\r");
            return text.substr(begin, end - begin + 1);
        }

        struct ConfigEntry
        {
            std::string value;
            std::size_t line = 0;
        };

        using ConfigMap = std::map<std::string, ConfigEntry>; // "section.key" -> entry

        inline double parse_double(const ConfigEntry &entry, const std::string &key)
        {
            const std::string_view text = entry.value;
            double value{};
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc{} || ptr != text.data() + text.size())
                throw ConfigError("value '" + entry.value + "' for " + key + " is not a number",
                                  entry.line);
            if (!std::isfinite(value))
                throw ConfigError("value for " + key + " must be finite", entry.line);
            return value;
        }

        inline std::uint64_t parse_uint(const ConfigEntry &entry, const std::string &key)
        {
            const std::string_view text = entry.value;
            std::uint64_t value{};
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc{} || ptr != text.data() + text.size())
                throw ConfigError("value '" + entry.value + "' for " + key +
                                      " is not an unsigned integer",
                                  entry.line);
            return value;
        }

        inline bool known_key(std::string_view section, std::string_view key)
        {
            if (section == "geometry")
                return key == "frequency_hz" || key == "wavelength_m" || key == "element_area_m2";
            if (section == "link")
                return key == "d_h_m" || key == "d_g_m" || key == "mu" ||
                       key == "beta_h_override" || key == "beta_g_override";
            if (section == "budget")
                return key == "p_tx_w" || key == "noise_w";
            if (section == "sweep")
                return key == "n_min" || key == "n_max" || key == "points_per_decade" ||
                       key == "models" || key == "seed";
            return false;
        }

        inline ConfigMap tokenize_config(std::string_view text)
        {
            ConfigMap entries;
            std::string section;
            std::size_t line_number = 0;
            std::size_t position = 0;
            while (position <= text.size())
            {
                const auto newline = text.find('\n', position);
                std::string_view raw = newline == std::string_view::npos
                                           ? text.substr(position)
                                           : text.substr(position, newline - position);
                position = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
                ++line_number;

                const auto comment = raw.find_first_of("#;");
                if (comment != std::string_view::npos)
                    raw = raw.substr(0, comment);
                const std::string_view stripped = trim(raw);
                if (stripped.empty())
                    continue;

                if (stripped.front() == '[')
                {
                    if (stripped.back() != ']')
                        throw ConfigError("unterminated section header", line_number);
                    const std::string_view name = trim(stripped.substr(1, stripped.size() - 2));
                    if (name != "geometry" && name != "link" && name != "budget" && name != "sweep")
                        throw ConfigError("unknown section [" + std::string(name) + "]", line_number);
                    section = std::string(name);
                    continue;
                }

                const auto equals = stripped.find('=');
                if (equals == std::string_view::npos)
                    throw ConfigError("expected 'key = value'", line_number);
                const std::string key{trim(stripped.substr(0, equals))};
                const std::string value{trim(stripped.substr(equals + 1))};
                if (key.empty())
                    throw ConfigError("empty key", line_number);
                if (value.empty())
                    throw ConfigError("empty value for " + key, line_number);
                if (section.empty())
                    throw ConfigError("key '" + key + "' appears before any section", line_number);
                if (!known_key(section, key))
                    throw ConfigError("unknown key '" + key + "' in section [" + section + "]",
                                      line_number);
                const auto [it, inserted] =
                    entries.emplace(section + "." + key, ConfigEntry{value, line_number});
                if (!inserted)
                    throw ConfigError("duplicate key '" + key + "' (first set on line " +
                                          std::to_string(it->second.line) + ")",
                                      line_number);
            }
            return entries;
        }

        inline const ConfigEntry *find_entry(const ConfigMap &entries, const std::string &qualified)
        {
            const auto it = entries.find(qualified);
            return it == entries.end() ? nullptr : &it->second;
        }
    } // namespace detail

    // Parses and validates a configuration document. Defaults: isotropic
    // element aperture, mu = 1, seed = 0, grid 1..1e6 at 40 points per decade,
    // all three models.
    inline RunConfig parse_config(std::string_view text)
    {
        detail::ConfigMap entries = detail::tokenize_config(text);
        RunConfig config;

        const auto *frequency = detail::find_entry(entries, "geometry.frequency_hz");
        const auto *wavelength = detail::find_entry(entries, "geometry.wavelength_m");
        if (frequency && wavelength)
            throw ConfigError("frequency_hz conflicts with wavelength_m; give exactly one",
                              std::max(frequency->line, wavelength->line));
        if (!frequency && !wavelength)
            throw ConfigError("missing key: one of frequency_hz or wavelength_m");

        double lambda{};
        if (wavelength)
        {
            lambda = detail::parse_double(*wavelength, "wavelength_m");
            if (!(lambda > 0))
                throw ConfigError("wavelength_m must be positive", wavelength->line);
        }
        else
        {
            const double f = detail::parse_double(*frequency, "frequency_hz");
            if (!(f > 0))
                throw ConfigError("frequency_hz must be positive", frequency->line);
            lambda = speed_of_light_mps / f;
        }

        if (const auto *area = detail::find_entry(entries, "geometry.element_area_m2"))
        {
            if (area->value == "isotropic")
            {
                config.isotropic_area = true;
                config.scenario.geometry = ElementGeometry<double>::isotropic(lambda);
            }
            else
            {
                const double a = detail::parse_double(*area, "element_area_m2");
                if (!(a > 0))
                    throw ConfigError("element_area_m2 must be positive", area->line);
                config.isotropic_area = false;
                config.scenario.geometry = ElementGeometry<double>::with_area(lambda, a);
            }
        }
        else
        {
            config.isotropic_area = true;
            config.scenario.geometry = ElementGeometry<double>::isotropic(lambda);
        }

        const auto require_positive = [&](const char *section_key, const char *key) -> double
        {
            const auto *entry = detail::find_entry(entries, section_key);
            if (!entry)
                throw ConfigError(std::string("missing key: ") + key);
            const double value = detail::parse_double(*entry, key);
            if (!(value > 0))
                throw ConfigError(std::string(key) + " must be positive", entry->line);
            return value;
        };

        config.scenario.d_h = require_positive("link.d_h_m", "d_h_m");
        config.scenario.d_g = require_positive("link.d_g_m", "d_g_m");
        config.scenario.budget.p_tx = require_positive("budget.p_tx_w", "p_tx_w");
        config.scenario.budget.noise = require_positive("budget.noise_w", "noise_w");

        if (const auto *mu = detail::find_entry(entries, "link.mu"))
        {
            const double value = detail::parse_double(*mu, "mu");
            if (!(value > 0) || value > 1)
                throw ConfigError("mu must lie in (0, 1]", mu->line);
            config.scenario.mu = value;
        }

        const auto optional_unit = [&](const char *section_key, const char *key,
                                       std::optional<double> &target)
        {
            if (const auto *entry = detail::find_entry(entries, section_key))
            {
                const double value = detail::parse_double(*entry, key);
                if (value < 0 || value > 1)
                    throw ConfigError(std::string(key) + " must lie in [0, 1]", entry->line);
                target = value;
            }
        };
        optional_unit("link.beta_h_override", "beta_h_override", config.scenario.beta_override_h);
        optional_unit("link.beta_g_override", "beta_g_override", config.scenario.beta_override_g);

        if (const auto *n_min = detail::find_entry(entries, "sweep.n_min"))
        {
            config.sweep.n_min = detail::parse_uint(*n_min, "n_min");
            if (config.sweep.n_min < 1)
                throw ConfigError("n_min must be at least 1", n_min->line);
        }
        std::size_t n_max_line = 0;
        if (const auto *n_max = detail::find_entry(entries, "sweep.n_max"))
        {
            config.sweep.n_max = detail::parse_uint(*n_max, "n_max");
            n_max_line = n_max->line;
        }
        if (config.sweep.n_max < config.sweep.n_min)
            throw ConfigError("n_max must be at least n_min", n_max_line);
        if (const auto *ppd = detail::find_entry(entries, "sweep.points_per_decade"))
        {
            const std::uint64_t value = detail::parse_uint(*ppd, "points_per_decade");
            if (value < 1 || value > 100000)
                throw ConfigError("points_per_decade must lie in [1, 100000]", ppd->line);
            config.sweep.points_per_decade = static_cast<unsigned>(value);
        }
        if (const auto *seed = detail::find_entry(entries, "sweep.seed"))
            config.scenario.seed = detail::parse_uint(*seed, "seed");

        if (const auto *models = detail::find_entry(entries, "sweep.models"))
        {
            config.models.clear();
            std::string_view rest = models->value;
            while (!rest.empty())
            {
                const auto comma = rest.find(',');
                const std::string_view token = detail::trim(rest.substr(0, comma));
                rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
                if (token.empty())
                    throw ConfigError("empty entry in models list", models->line);
                try
                {
                    config.models.push_back(parse_link_model(token));
                }
                catch (const InvalidInput &error)
                {
                    throw ConfigError(error.what(), models->line);
                }
            }
            if (config.models.empty())
                throw ConfigError("models list must not be empty", models->line);
            std::sort(config.models.begin(), config.models.end());
            config.models.erase(std::unique(config.models.begin(), config.models.end()),
                                config.models.end());
        }

        config.scenario.n_grid =
            log_grid(config.sweep.n_min, config.sweep.n_max, config.sweep.points_per_decade);
        validate_scenario(config.scenario);
        return config;
    }

    // Canonical text form; parse_config(serialize_config(c)) == c.
    inline std::string serialize_config(const RunConfig &config)
    {
        const auto f = [](double value)
        { return detail::format_full(value); };
        std::string out;
        out += "[geometry]\n";
        out += "wavelength_m = " + f(config.scenario.geometry.wavelength) + "\n";
        out += "element_area_m2 = ";
        out += config.isotropic_area ? "isotropic" : f(config.scenario.geometry.area);
        out += "\n\n[link]\n";
        out += "d_h_m = " + f(config.scenario.d_h) + "\n";
        out += "d_g_m = " + f(config.scenario.d_g) + "\n";
        out += "mu = " + f(config.scenario.mu) + "\n";
        if (config.scenario.beta_override_h)
            out += "beta_h_override = " + f(*config.scenario.beta_override_h) + "\n";
        if (config.scenario.beta_override_g)
            out += "beta_g_override = " + f(*config.scenario.beta_override_g) + "\n";
        out += "\n[budget]\n";
        out += "p_tx_w = " + f(config.scenario.budget.p_tx) + "\n";
        out += "noise_w = " + f(config.scenario.budget.noise) + "\n";
        out += "\n[sweep]\n";
        out += "n_min = " + std::to_string(config.sweep.n_min) + "\n";
        out += "n_max = " + std::to_string(config.sweep.n_max) + "\n";
        out += "points_per_decade = " + std::to_string(config.sweep.points_per_decade) + "\n";
        out += "models = ";
        for (std::size_t i = 0; i < config.models.size(); ++i)
        {
            if (i > 0)
                out += ',';
            out += to_string(config.models[i]);
        }
        out += "\nseed = " + std::to_string(config.scenario.seed) + "\n";
        return out;
    }

    // REFLECT_LAB_SEED, when set, takes precedence over the document's seed.
    inline void apply_seed_override(RunConfig &config)
    {
        const char *env = std::getenv("REFLECT_LAB_SEED");
        if (env == nullptr)
            return;
        const std::string_view text = env;
        std::uint64_t seed{};
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw ConfigError("REFLECT_LAB_SEED must be an unsigned integer, got '" +
                              std::string(text) + "'");
        config.scenario.seed = seed;
    }

} // namespace reflect_lab

#endif
