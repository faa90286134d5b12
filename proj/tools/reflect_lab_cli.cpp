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
// reflect-lab <command> [--config FILE | --preset NAME] [--out DIR] ...
//
// Commands
//   gain-sweep     total channel gain vs element count (exact and linear)
//   rate-compare   SNR and rate vs element count for the selected models
//   breakeven      smallest surface matching a reference active array
//   power-scaling  transmit power needed to hold a target SNR
//   preset         print (and optionally write) a bundled scenario document
//
// Every data command writes <command>.csv plus <command>.manifest.json into
// the output directory. Outputs are byte-identical across runs for the same
// configuration and seed. Exit codes: 0 success, 2 configuration error,
// 3 solver/model error, 4 I/O error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reflect_lab/reflect_lab.hpp"

namespace
{
    namespace rl = reflect_lab;
    using nlohmann::json;

    struct Sources
    {
        std::string config_path;
        std::string preset_name;
        std::string out_dir = ".";
    };

    std::string read_file(const std::filesystem::path &path)
    {
        std::ifstream file(path, std::ios::binary);
        if (!file)
            throw rl::IoError("cannot read '" + path.string() + "'");
        std::ostringstream buffer;
        buffer << file.rdbuf();
        if (file.bad())
            throw rl::IoError("failed while reading '" + path.string() + "'");
        return buffer.str();
    }

    void write_file(const std::filesystem::path &path, const std::string &text)
    {
        std::ofstream file(path, std::ios::binary | std::ios::trunc);
        if (!file)
            throw rl::IoError("cannot open '" + path.string() + "' for writing");
        file << text;
        file.flush();
        if (!file)
            throw rl::IoError("failed while writing '" + path.string() + "'");
    }

    rl::RunConfig load_run_config(const Sources &sources)
    {
        std::string text;
        if (!sources.config_path.empty())
            text = read_file(sources.config_path);
        else if (!sources.preset_name.empty())
            text = rl::preset_config(sources.preset_name);
        else
            throw rl::ConfigError("a scenario is required: pass --config FILE or --preset NAME");
        rl::RunConfig config = rl::parse_config(text);
        rl::apply_seed_override(config);
        return config;
    }

    std::filesystem::path ensure_out_dir(const std::string &out_dir)
    {
        const std::filesystem::path dir(out_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (!std::filesystem::is_directory(dir))
            throw rl::IoError("cannot create output directory '" + dir.string() + "'");
        return dir;
    }

    json base_manifest(const char *command, const Sources &sources, const rl::RunConfig &config)
    {
        json manifest;
        manifest["tool"] = "reflect-lab";
        manifest["version"] = rl::version_string;
        manifest["command"] = command;
        manifest["preset"] = sources.preset_name;
        manifest["config_path"] = sources.config_path;
        manifest["config"] = rl::serialize_config(config);
        manifest["scenario_digest"] = rl::scenario_digest(config.scenario);
        manifest["seed"] = config.scenario.seed;
        json models = json::array();
        for (const rl::LinkModel model : config.models)
            models.push_back(rl::to_string(model));
        manifest["models"] = models;
        manifest["beta_h_source"] = config.scenario.beta_override_h ? "override" : "free-space";
        manifest["beta_g_source"] = config.scenario.beta_override_g ? "override" : "free-space";
        return manifest;
    }

    void write_manifest(const std::filesystem::path &dir, const char *command, json manifest,
                        const std::string &csv_name)
    {
        manifest["outputs"] = json::array({csv_name});
        write_file(dir / (std::string(command) + ".manifest.json"), manifest.dump(2) + "\n");
    }

    // Gains of the exact planar model and the linear model over the grid,
    // evaluated on the transmitter-to-array path d_h_m.
    int run_gain_sweep(const Sources &sources)
    {
        const rl::RunConfig config = load_run_config(sources);
        const auto dir = ensure_out_dir(sources.out_dir);
        const rl::PropagationPath<double> path{config.scenario.d_h};

        std::vector<rl::GainRow> rows;
        rows.reserve(2 * config.scenario.n_grid.size());
        for (const std::uint64_t n : config.scenario.n_grid)
        {
            const auto gain = rl::planar_exact_gain(n, config.scenario.geometry, path);
            rows.push_back({n, gain.model, gain.value, gain.far_field_valid});
        }
        for (const std::uint64_t n : config.scenario.n_grid)
        {
            const auto gain = rl::far_field_gain(n, config.scenario.geometry, path);
            rows.push_back({n, gain.model, gain.value, gain.far_field_valid});
        }

        rl::emit_gain_csv(rows, dir / "gain-sweep.csv");
        write_manifest(dir, "gain-sweep", base_manifest("gain-sweep", sources, config),
                       "gain-sweep.csv");
        return 0;
    }

    int run_rate_compare(const Sources &sources)
    {
        const rl::RunConfig config = load_run_config(sources);
        const auto dir = ensure_out_dir(sources.out_dir);
        const auto table = rl::run_sweep(config.scenario, config.models);
        rl::emit_csv(table, dir / "rate-compare.csv");
        write_manifest(dir, "rate-compare", base_manifest("rate-compare", sources, config),
                       "rate-compare.csv");
        return 0;
    }

    int run_breakeven(const Sources &sources, std::uint64_t n_ref, const std::string &model_name)
    {
        rl::LinkModel model{};
        try
        {
            model = rl::parse_link_model(model_name);
        }
        catch (const rl::InvalidInput &error)
        {
            throw rl::ConfigError(error.what());
        }
        if (model == rl::LinkModel::mmimo)
            throw rl::ConfigError("--model must be irs-far-field or irs-exact");
        if (n_ref < 1)
            throw rl::ConfigError("--ref must be at least 1");

        const rl::RunConfig config = load_run_config(sources);
        const auto dir = ensure_out_dir(sources.out_dir);

        const std::uint64_t n_breakeven = rl::breakeven_elements(config.scenario, model, n_ref);
        rl::BreakevenRow row;
        row.model = model;
        row.n_ref = n_ref;
        row.n_breakeven = n_breakeven;
        row.target_rate_bpcu = rl::rate(rl::model_snr(config.scenario, rl::LinkModel::mmimo, n_ref));
        row.rate_at_breakeven_bpcu = rl::rate(rl::model_snr(config.scenario, model, n_breakeven));
        rl::emit_breakeven_csv(row, dir / "breakeven.csv");

        json manifest = base_manifest("breakeven", sources, config);
        manifest["breakeven_model"] = rl::to_string(model);
        manifest["n_ref"] = n_ref;
        manifest["n_breakeven"] = n_breakeven;
        write_manifest(dir, "breakeven", std::move(manifest), "breakeven.csv");

        std::cout << n_breakeven << "\n";
        return 0;
    }

    int run_power_scaling(const Sources &sources, double target_snr_db)
    {
        const rl::RunConfig config = load_run_config(sources);
        const auto dir = ensure_out_dir(sources.out_dir);
        const double target_snr = std::pow(10.0, target_snr_db / 10.0);

        std::vector<rl::PowerRow> rows;
        rows.reserve(config.models.size() * config.scenario.n_grid.size());
        for (const rl::LinkModel model : config.models)
            for (const std::uint64_t n : config.scenario.n_grid)
                rows.push_back({n, model, rl::required_power(config.scenario, model, n, target_snr)});

        rl::emit_power_csv(rows, dir / "power-scaling.csv");
        json manifest = base_manifest("power-scaling", sources, config);
        manifest["target_snr_db"] = target_snr_db;
        write_manifest(dir, "power-scaling", std::move(manifest), "power-scaling.csv");
        return 0;
    }

    int run_preset(const std::string &name, const std::string &out_dir, bool write_out)
    {
        const std::string text = rl::preset_config(name);
        if (write_out)
        {
            const auto dir = ensure_out_dir(out_dir);
            write_file(dir / (name + ".ini"), text);
        }
        std::cout << text;
        return 0;
    }

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Link-budget simulator comparing massive MIMO arrays with passive "
                 "reflecting surfaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", reflect_lab::version_string);

    Sources sources;
    std::uint64_t n_ref = 64;
    std::string breakeven_model = "irs-exact";
    double target_snr_db = 20.0;
    std::string preset_name;

    const auto add_scenario_options = [&sources](CLI::App *cmd)
    {
        auto *config = cmd->add_option("--config", sources.config_path, "Scenario document");
        auto *preset = cmd->add_option("--preset", sources.preset_name, "Bundled scenario name");
        config->excludes(preset);
        cmd->add_option("--out", sources.out_dir, "Output directory (default: .)");
    };

    auto *gain_sweep = app.add_subcommand("gain-sweep", "Total channel gain vs element count");
    add_scenario_options(gain_sweep);

    auto *rate_compare = app.add_subcommand("rate-compare", "SNR and rate vs element count");
    add_scenario_options(rate_compare);

    auto *breakeven = app.add_subcommand(
        "breakeven", "Smallest surface whose rate matches a reference active array");
    add_scenario_options(breakeven);
    breakeven->add_option("--ref", n_ref, "Reference active-array element count (default: 64)");
    breakeven->add_option("--model", breakeven_model,
                          "Surface model: irs-far-field or irs-exact (default: irs-exact)");

    auto *power_scaling =
        app.add_subcommand("power-scaling", "Required transmit power at a fixed target SNR");
    add_scenario_options(power_scaling);
    power_scaling->add_option("--target-snr-db", target_snr_db,
                              "Target SNR in dB (default: 20)");

    auto *preset = app.add_subcommand("preset", "Print a bundled scenario document");
    preset->add_option("name", preset_name, "One of: example1, fig2, fig4-far, fig4-near")
        ->required();
    std::string preset_out_dir = ".";
    auto *preset_out =
        preset->add_option("--out", preset_out_dir, "Also write <name>.ini into this directory");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &error)
    {
        if (error.get_exit_code() == 0)
            return app.exit(error); // --help / --version
        std::cerr << "error: config: " << error.what() << "\n";
        return 2;
    }

    try
    {
        if (gain_sweep->parsed())
            return run_gain_sweep(sources);
        if (rate_compare->parsed())
            return run_rate_compare(sources);
        if (breakeven->parsed())
            return run_breakeven(sources, n_ref, breakeven_model);
        if (power_scaling->parsed())
            return run_power_scaling(sources, target_snr_db);
        if (preset->parsed())
            return run_preset(preset_name, preset_out_dir, preset_out->count() > 0);
        std::cerr << "error: config: no command given\n";
        return 2;
    }
    catch (const reflect_lab::Error &error)
    {
        std::cerr << "error: " << error.category() << ": " << error.what() << "\n";
        if (error.category() == "config")
            return 2;
        if (error.category() == "io")
            return 4;
        return 3;
    }
    catch (const std::exception &error)
    {
        std::cerr << "error: internal: " << error.what() << "\n";
        return 3;
    }
}
