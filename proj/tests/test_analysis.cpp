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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "reflect_lab/analysis.hpp"
#include "reflect_lab/config.hpp"
#include "reflect_lab/presets.hpp"
#include "test_support.hpp"

using namespace reflect_lab;
using Catch::Approx;

namespace
{
    Scenario<double> reference_scenario(double d_g)
    {
        Scenario<double> s;
        s.geometry = ElementGeometry<double>::isotropic(0.1);
        s.d_h = 25.0;
        s.d_g = d_g;
        s.budget = {0.01, 1.0e-8};
        s.mu = 1.0;
        s.beta_override_h = 1.0e-4; // pins the per-element SNR at 20 dB
        s.n_grid = log_grid(1, 1000000, 40);
        return s;
    }

    std::vector<LinkResult<double>> rows_for(const SweepTable<double> &table, LinkModel model)
    {
        std::vector<LinkResult<double>> out;
        for (const auto &row : table.rows)
            if (row.model == model)
                out.push_back(row);
        return out;
    }
} // namespace

TEST_CASE("spectral rate")
{
    CHECK(rate(0.0) == 0.0);
    CHECK(rate(1.0) == 1.0);
    CHECK(rate(6400.0) == Approx(12.644081593265675).epsilon(1e-13));
    CHECK_THROWS_AS(rate(-1.0e-9), InvalidInput);
    CHECK_THROWS_AS(rate(std::nan("")), InvalidInput);

    test_support::Rng rng(77);
    for (int trial = 0; trial < 200; ++trial)
    {
        const double a = rng.log_uniform(1e-9, 1e9);
        const double b = a * (1.0 + rng.uniform(0.01, 10.0));
        CHECK(rate(b) > rate(a));
    }
}

TEST_CASE("log-spaced integer grid")
{
    const auto grid = log_grid(1, 1000000, 40);
    CHECK(grid.front() == 1);
    CHECK(grid.back() == 1000000);
    CHECK(grid.size() == 208);
    for (std::size_t i = 1; i < grid.size(); ++i)
        CHECK(grid[i] > grid[i - 1]);

    CHECK(log_grid(5, 5, 40) == std::vector<std::uint64_t>{5});
    CHECK(log_grid(1, 1000, 1) == std::vector<std::uint64_t>{1, 10, 100, 1000});
    CHECK_THROWS_AS(log_grid(0, 10, 40), InvalidInput);
    CHECK_THROWS_AS(log_grid(10, 5, 40), InvalidInput);
    CHECK_THROWS_AS(log_grid(1, 10, 0), InvalidInput);
}

TEST_CASE("per-model SNR closed forms")
{
    const auto s = reference_scenario(2.5);

    SECTION("active array: N beta_h P/noise")
    {
        CHECK(model_snr(s, LinkModel::mmimo, 64) == Approx(6400.0).epsilon(1e-12));
    }

    SECTION("far-field surface: fraction times the active-array SNR")
    {
        const double mm = model_snr(s, LinkModel::mmimo, 1000);
        const double expected = (s.mu * s.mu * 1000.0 * s.beta_g()) * mm;
        CHECK(model_snr(s, LinkModel::irs_far_field, 1000) == expected);
    }

    SECTION("exact surface: mu^2 alpha_g times the active-array SNR")
    {
        const double alpha =
            planar_exact_gain(5000, s.geometry, PropagationPath<double>{s.d_g}).value;
        const double mm = model_snr(s, LinkModel::mmimo, 5000);
        CHECK(model_snr(s, LinkModel::irs_exact, 5000) == (s.mu * s.mu * alpha) * mm);
    }

    SECTION("count must be positive")
    {
        CHECK_THROWS_AS(model_snr(s, LinkModel::mmimo, 0), InvalidInput);
    }
}

TEST_CASE("degenerate single-element sweep with pinned unit gains")
{
    Scenario<double> s;
    s.geometry = ElementGeometry<double>::isotropic(0.1);
    s.d_h = 25.0;
    s.d_g = 25.0;
    s.budget = {1.0e-8, 1.0e-8}; // P_tx equals the noise power
    s.beta_override_h = 1.0;
    s.beta_override_g = 1.0;
    s.n_grid = {1};

    const auto table = run_sweep(
        s, {LinkModel::mmimo, LinkModel::irs_far_field, LinkModel::irs_exact});
    REQUIRE(table.rows.size() == 3);

    const auto mm = rows_for(table, LinkModel::mmimo).at(0);
    const auto ff = rows_for(table, LinkModel::irs_far_field).at(0);
    const auto ex = rows_for(table, LinkModel::irs_exact).at(0);

    CHECK(mm.snr == 1.0);
    CHECK(mm.rate == 1.0);
    CHECK(ff.snr == 1.0);
    CHECK(ff.rate == 1.0);

    // The exact receiver-side model keeps its geometric gain even when the
    // linear per-element gains are pinned, and that gain is below one half.
    const double alpha = planar_exact_gain(1, s.geometry, PropagationPath<double>{s.d_g}).value;
    CHECK(ex.snr == alpha);
    CHECK(ex.snr < 0.5);
    CHECK(ex.rate == rate(alpha));
}

TEST_CASE("sweep rows, ordering and flags")
{
    const auto config = parse_config(preset_config("fig4-near"));
    const auto &s = config.scenario;
    const auto table = run_sweep(s, config.models);

    SECTION("table metadata")
    {
        CHECK(table.scenario_digest == scenario_digest(s));
        CHECK(table.seed == s.seed);
        CHECK(table.tool_version == version_string);
    }

    SECTION("one row per (model, n), sorted")
    {
        CHECK(table.rows.size() == 3 * s.n_grid.size());
        for (std::size_t i = 1; i < table.rows.size(); ++i)
        {
            const auto &a = table.rows[i - 1];
            const auto &b = table.rows[i];
            const bool ordered = a.model < b.model || (a.model == b.model && a.n < b.n);
            CHECK(ordered);
        }
    }

    SECTION("rate column is log2(1 + snr)")
    {
        for (const auto &row : table.rows)
            CHECK(row.rate == Approx(std::log2(1.0 + row.snr)).epsilon(1e-12));
    }

    SECTION("energy-bound flag trips exactly past N = 1/beta_g")
    {
        for (const auto &row : rows_for(table, LinkModel::irs_far_field))
            CHECK(row.energy_bound_exceeded == (static_cast<double>(row.n) * s.beta_g() > 1.0));
        for (const auto &row : rows_for(table, LinkModel::mmimo))
            CHECK_FALSE(row.energy_bound_exceeded);
        for (const auto &row : rows_for(table, LinkModel::irs_exact))
            CHECK_FALSE(row.energy_bound_exceeded);
    }

    SECTION("far-field validity flags per model")
    {
        const auto rule_h = rule_of_thumb_max(s.geometry, PropagationPath<double>{s.d_h});
        const auto rule_g = rule_of_thumb_max(s.geometry, PropagationPath<double>{s.d_g});
        for (const auto &row : rows_for(table, LinkModel::mmimo))
            CHECK(row.far_field_valid == (row.n <= rule_h));
        for (const auto &row : rows_for(table, LinkModel::irs_far_field))
            CHECK(row.far_field_valid == (row.n <= rule_h && row.n <= rule_g));
        for (const auto &row : rows_for(table, LinkModel::irs_exact))
            CHECK(row.far_field_valid == (row.n <= rule_h));
    }

    SECTION("duplicate model selections collapse")
    {
        const auto deduped = run_sweep(s, {LinkModel::mmimo, LinkModel::mmimo});
        CHECK(deduped.rows.size() == s.n_grid.size());
    }

    SECTION("validation")
    {
        CHECK_THROWS_AS(run_sweep(s, {}), InvalidInput);
        auto bad = s;
        bad.n_grid = {10, 10};
        CHECK_THROWS_AS(run_sweep(bad, config.models), InvalidInput);
        bad.n_grid = {};
        CHECK_THROWS_AS(run_sweep(bad, config.models), InvalidInput);
    }

    SECTION("a sweep whose every row fails reports the failure")
    {
        // Aperture larger than the sphere surface at d_h: the per-element
        // gain is undefined, every row is dropped, nothing remains.
        Scenario<double> impossible;
        impossible.geometry = ElementGeometry<double>::with_area(0.1, 1.0);
        impossible.d_h = 0.1;
        impossible.d_g = 0.1;
        impossible.budget = {0.01, 1.0e-8};
        impossible.n_grid = {1, 2, 4};
        CHECK_THROWS_AS(run_sweep(impossible, {LinkModel::mmimo}), InvalidInput);

        // Pinning the gain sidesteps the geometric failure.
        impossible.beta_override_h = 1.0e-4;
        const auto table = run_sweep(impossible, {LinkModel::mmimo});
        CHECK(table.rows.size() == 3);
    }
}

TEST_CASE("the active array dominates both surface models across the sweep")
{
    for (const char *preset : {"fig4-far", "fig4-near"})
    {
        const auto config = parse_config(preset_config(preset));
        const auto table = run_sweep(config.scenario, config.models);
        const auto mm = rows_for(table, LinkModel::mmimo);
        const auto ff = rows_for(table, LinkModel::irs_far_field);
        const auto ex = rows_for(table, LinkModel::irs_exact);
        REQUIRE(mm.size() == ff.size());
        REQUIRE(mm.size() == ex.size());
        for (std::size_t i = 0; i < mm.size(); ++i)
        {
            CHECK(mm[i].rate >= ex[i].rate);
            if (!ff[i].energy_bound_exceeded)
                CHECK(mm[i].rate >= ff[i].rate);
        }
    }

    // With the receiver far away the gap is strict everywhere on the grid.
    const auto config = parse_config(preset_config("fig4-far"));
    const auto table = run_sweep(config.scenario, config.models);
    const auto mm = rows_for(table, LinkModel::mmimo);
    const auto ff = rows_for(table, LinkModel::irs_far_field);
    for (std::size_t i = 0; i < mm.size(); ++i)
        CHECK(mm[i].rate > ff[i].rate);
}

TEST_CASE("far-field surface curve meets the active array at N = 1/beta_g")
{
    const auto config = parse_config(preset_config("fig4-near"));
    const auto &s = config.scenario;
    const auto table = run_sweep(s, config.models);
    const auto mm = rows_for(table, LinkModel::mmimo);
    const auto ff = rows_for(table, LinkModel::irs_far_field);

    const double crossing = 1.0 / s.beta_g(); // 98696.04...
    std::size_t first_at_or_above = ff.size();
    for (std::size_t i = 0; i < ff.size(); ++i)
    {
        if (ff[i].snr >= mm[i].snr)
        {
            first_at_or_above = i;
            break;
        }
    }
    REQUIRE(first_at_or_above < ff.size());
    REQUIRE(first_at_or_above > 0);
    CHECK(static_cast<double>(ff[first_at_or_above - 1].n) <= crossing);
    CHECK(static_cast<double>(ff[first_at_or_above].n) >= crossing);
}

TEST_CASE("surface models agree while the receiver-side link stays linear")
{
    const auto config = parse_config(preset_config("fig4-near"));
    const auto &s = config.scenario;
    const auto table = run_sweep(s, config.models);
    const auto ff = rows_for(table, LinkModel::irs_far_field);
    const auto ex = rows_for(table, LinkModel::irs_exact);

    // 10 N A <= d_g^2 keeps the linear receiver-side gain within 5%.
    const double linear_bound = s.d_g * s.d_g / (10.0 * s.geometry.area); // ~785
    for (std::size_t i = 0; i < ff.size(); ++i)
    {
        const double n = static_cast<double>(ff[i].n);
        const double deviation = std::abs(ff[i].snr - ex[i].snr) / ex[i].snr;
        if (n <= linear_bound)
            CHECK(deviation <= 0.05);
        if (n >= 2.0 * linear_bound)
            CHECK(deviation > 0.05);
    }
}

TEST_CASE("breakeven element counts")
{
    SECTION("exact surface model, receiver at 2.5 m, reference of 64")
    {
        const auto config = parse_config(preset_config("fig4-near"));
        const std::uint64_t n = breakeven_elements(config.scenario, LinkModel::irs_exact, 64);
        CHECK(n == 2710); // frozen from bisection on N * alpha_g(N) = 64
        CHECK(n >= 2500);
        CHECK(n <= 3500);
    }

    SECTION("far-field model matches the closed form ceil(8 / (mu sqrt(beta_g)))")
    {
        const auto config = parse_config(preset_config("fig4-far"));
        const std::uint64_t n = breakeven_elements(config.scenario, LinkModel::irs_far_field, 64);
        const double beta_g = config.scenario.beta_g();
        CHECK(n == static_cast<std::uint64_t>(std::ceil(8.0 / std::sqrt(beta_g))));
        CHECK(n == 25133);
        CHECK(n > 10000);
    }

    SECTION("solver equals the closed form across random scenarios")
    {
        test_support::Rng rng(5005);
        for (int trial = 0; trial < 200; ++trial)
        {
            auto s = reference_scenario(25.0);
            s.beta_override_g = rng.log_uniform(1e-10, 1e-3);
            s.mu = rng.uniform(0.05, 1.0);
            const auto closed = static_cast<std::uint64_t>(
                std::ceil(8.0 / (s.mu * std::sqrt(*s.beta_override_g))));
            CHECK(breakeven_elements(s, LinkModel::irs_far_field, 64) == closed);
        }
    }

    SECTION("the answer is the exact threshold integer")
    {
        const auto config = parse_config(preset_config("fig4-near"));
        const auto &s = config.scenario;
        for (const LinkModel model : {LinkModel::irs_far_field, LinkModel::irs_exact})
        {
            const std::uint64_t n = breakeven_elements(s, model, 64);
            const double target = rate(model_snr(s, LinkModel::mmimo, 64));
            CHECK(rate(model_snr(s, model, n)) >= target);
            CHECK(rate(model_snr(s, model, n - 1)) < target);
        }
    }

    SECTION("a surface can already match a one-element reference")
    {
        auto s = reference_scenario(25.0);
        s.beta_override_g = 1.0;
        CHECK(breakeven_elements(s, LinkModel::irs_far_field, 1) == 1);
    }

    SECTION("unreachable targets carry the best achievable rate")
    {
        auto s = reference_scenario(2.5);
        s.mu = 1.0e-6;
        try
        {
            breakeven_elements(s, LinkModel::irs_exact, 64);
            FAIL("expected UnreachableTargetError");
        }
        catch (const UnreachableTargetError &error)
        {
            CHECK(error.supremum_rate() > 0.0);
            CHECK(error.supremum_rate() < rate(model_snr(s, LinkModel::mmimo, 64)));
        }
    }

    SECTION("validation")
    {
        const auto config = parse_config(preset_config("fig4-near"));
        CHECK_THROWS_AS(breakeven_elements(config.scenario, LinkModel::mmimo, 64), InvalidInput);
        CHECK_THROWS_AS(breakeven_elements(config.scenario, LinkModel::irs_exact, 0),
                        InvalidInput);
    }
}

TEST_CASE("required transmit power")
{
    const auto s = reference_scenario(2.5);
    test_support::Rng rng(6006);

    SECTION("inverts the SNR expression of every model")
    {
        for (const LinkModel model :
             {LinkModel::mmimo, LinkModel::irs_far_field, LinkModel::irs_exact})
        {
            const double target = 316.227766; // 25 dB
            auto tuned = s;
            tuned.budget.p_tx = required_power(s, model, 4096, target);
            CHECK(model_snr(tuned, model, 4096) == Approx(target).epsilon(1e-12));
        }
    }

    SECTION("doubling the active array halves the power exactly")
    {
        for (int trial = 0; trial < 200; ++trial)
        {
            const std::uint64_t n = rng.integer(1, 1u << 25);
            const double target = rng.log_uniform(1e-3, 1e4);
            CHECK(2.0 * required_power(s, LinkModel::mmimo, 2 * n, target) ==
                  required_power(s, LinkModel::mmimo, n, target));
        }
    }

    SECTION("doubling the far-field surface quarters the power exactly")
    {
        for (int trial = 0; trial < 200; ++trial)
        {
            const std::uint64_t n = rng.integer(1, 1u << 25);
            const double target = rng.log_uniform(1e-3, 1e4);
            CHECK(4.0 * required_power(s, LinkModel::irs_far_field, 2 * n, target) ==
                  required_power(s, LinkModel::irs_far_field, n, target));
        }
    }

    SECTION("the exact surface model still gets cheaper with size")
    {
        CHECK(required_power(s, LinkModel::irs_exact, 2000, 100.0) <
              required_power(s, LinkModel::irs_exact, 1000, 100.0));
    }

    SECTION("validation")
    {
        CHECK_THROWS_AS(required_power(s, LinkModel::mmimo, 0, 1.0), InvalidInput);
        CHECK_THROWS_AS(required_power(s, LinkModel::mmimo, 1, 0.0), InvalidInput);
        CHECK_THROWS_AS(required_power(s, LinkModel::mmimo, 1, -5.0), InvalidInput);
    }
}

TEST_CASE("scenario digest reacts to every field")
{
    const auto s = reference_scenario(2.5);
    const std::string base = scenario_digest(s);
    CHECK(base.size() == 16);
    CHECK(scenario_digest(s) == base);

    auto changed = s;
    changed.mu = 0.5;
    CHECK(scenario_digest(changed) != base);

    changed = s;
    changed.seed = 1;
    CHECK(scenario_digest(changed) != base);

    changed = s;
    changed.beta_override_h.reset();
    CHECK(scenario_digest(changed) != base);

    changed = s;
    changed.n_grid.push_back(2000000);
    CHECK(scenario_digest(changed) != base);
}

TEST_CASE("link model names round-trip")
{
    for (const LinkModel model :
         {LinkModel::mmimo, LinkModel::irs_far_field, LinkModel::irs_exact})
        CHECK(parse_link_model(to_string(model)) == model);
    CHECK_THROWS_AS(parse_link_model("irs_exact"), InvalidInput);
    CHECK_THROWS_AS(parse_link_model(""), InvalidInput);
}
