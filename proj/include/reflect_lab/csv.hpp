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
// CSV emission. Numbers are rendered with 12 significant digits, every line
// ends with a single '\n', and the byte stream depends only on the input
// table, making repeated runs byte-identical.

#ifndef REFLECT_LAB_CSV_HPP
#define REFLECT_LAB_CSV_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "reflect_lab/analysis.hpp"
#include "reflect_lab/errors.hpp"

namespace reflect_lab
{
    namespace detail
    {
        inline std::string format_sig12(double value)
        {
            char buffer[40];
            std::snprintf(buffer, sizeof buffer, "%.12g", value);
            return buffer;
        }

        inline double power_db(double ratio) { return 10.0 * std::log10(ratio); }

        template <typename WriteBody>
        void emit_to_file(const std::filesystem::path &destination, WriteBody &&write_body)
        {
            std::ofstream file(destination, std::ios::binary | std::ios::trunc);
            if (!file)
                throw IoError("cannot open '" + destination.string() + "' for writing");
            write_body(file);
            file.flush();
            if (!file)
                throw IoError("failed while writing '" + destination.string() + "'");
        }
    } // namespace detail

    inline constexpr const char *sweep_csv_header =
        "n,model,snr,snr_db,rate_bpcu,far_field_valid,energy_bound_exceeded";

    inline void emit_csv(const SweepTable<double> &table, std::ostream &out)
    {
        if (table.rows.empty())
            throw InvalidInput("refusing to emit an empty sweep table");
        out << sweep_csv_header << '\n';
        for (const auto &row : table.rows)
        {
            out << row.n << ',' << to_string(row.model) << ','
                << detail::format_sig12(row.snr) << ','
                << detail::format_sig12(detail::power_db(row.snr)) << ','
                << detail::format_sig12(row.rate) << ','
                << (row.far_field_valid ? '1' : '0') << ','
                << (row.energy_bound_exceeded ? '1' : '0') << '\n';
        }
    }

    inline void emit_csv(const SweepTable<double> &table, const std::filesystem::path &destination)
    {
        detail::emit_to_file(destination, [&](std::ostream &out)
                             { emit_csv(table, out); });
    }

    // Gain sweeps carry total channel gains instead of SNRs.
    struct GainRow
    {
        std::uint64_t n{};
        GainModel model{};
        double gain{};
        bool far_field_valid = false;
    };

    inline constexpr const char *gain_csv_header = "n,model,gain,gain_db,far_field_valid";

    inline void emit_gain_csv(const std::vector<GainRow> &rows, std::ostream &out)
    {
        if (rows.empty())
            throw InvalidInput("refusing to emit an empty gain table");
        out << gain_csv_header << '\n';
        for (const auto &row : rows)
        {
            out << row.n << ',' << to_string(row.model) << ','
                << detail::format_sig12(row.gain) << ','
                << detail::format_sig12(detail::power_db(row.gain)) << ','
                << (row.far_field_valid ? '1' : '0') << '\n';
        }
    }

    inline void emit_gain_csv(const std::vector<GainRow> &rows,
                              const std::filesystem::path &destination)
    {
        detail::emit_to_file(destination, [&](std::ostream &out)
                             { emit_gain_csv(rows, out); });
    }

    // Required transmit power per grid point at a fixed target SNR.
    struct PowerRow
    {
        std::uint64_t n{};
        LinkModel model{};
        double p_tx_w{};
    };

    inline constexpr const char *power_csv_header = "n,model,required_p_tx_w,required_p_tx_dbm";

    inline void emit_power_csv(const std::vector<PowerRow> &rows, std::ostream &out)
    {
        if (rows.empty())
            throw InvalidInput("refusing to emit an empty power table");
        out << power_csv_header << '\n';
        for (const auto &row : rows)
        {
            out << row.n << ',' << to_string(row.model) << ','
                << detail::format_sig12(row.p_tx_w) << ','
                << detail::format_sig12(detail::power_db(row.p_tx_w) + 30.0) << '\n';
        }
    }

    inline void emit_power_csv(const std::vector<PowerRow> &rows,
                               const std::filesystem::path &destination)
    {
        detail::emit_to_file(destination, [&](std::ostream &out)
                             { emit_power_csv(rows, out); });
    }

    struct BreakevenRow
    {
        LinkModel model{};
        std::uint64_t n_ref{};
        std::uint64_t n_breakeven{};
        double target_rate_bpcu{};
        double rate_at_breakeven_bpcu{};
    };

    inline constexpr const char *breakeven_csv_header =
        "model,n_ref,n_breakeven,target_rate_bpcu,rate_at_breakeven_bpcu";

    inline void emit_breakeven_csv(const BreakevenRow &row, std::ostream &out)
    {
        out << breakeven_csv_header << '\n'
            << to_string(row.model) << ',' << row.n_ref << ',' << row.n_breakeven << ','
            << detail::format_sig12(row.target_rate_bpcu) << ','
            << detail::format_sig12(row.rate_at_breakeven_bpcu) << '\n';
    }

    inline void emit_breakeven_csv(const BreakevenRow &row,
                                   const std::filesystem::path &destination)
    {
        detail::emit_to_file(destination, [&](std::ostream &out)
                             { emit_breakeven_csv(row, out); });
    }

} // namespace reflect_lab

#endif
