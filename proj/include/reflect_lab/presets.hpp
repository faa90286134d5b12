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
// Bundled scenario documents.
//
//   example1   single isotropic element at 3 GHz; free-space reference link
//   fig2       planar-array total-gain curve, exact vs linear model
//   fig4-far   rate comparison with the receiver far from the surface
//   fig4-near  same, receiver close to the surface (only d_g_m differs)
//
// The fig4 presets pin beta_h_override so the reference per-element SNR is
// exactly 20 dB (beta_h * p_tx / noise = 1e-4 * 1e6 = 100); the manifest of
// every run records whether gains were pinned or derived from geometry.

#ifndef REFLECT_LAB_PRESETS_HPP
#define REFLECT_LAB_PRESETS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "reflect_lab/errors.hpp"

namespace reflect_lab
{
    inline const std::vector<std::string> &preset_names()
    {
        static const std::vector<std::string> names = {"example1", "fig2", "fig4-far", "fig4-near"};
        return names;
    }

    inline std::string preset_config(std::string_view name)
    {
        if (name == "example1")
            return "# Free-space reference link, single isotropic element at 3 GHz.\n"
                   "[geometry]\n"
                   "frequency_hz = 3e9\n"
                   "element_area_m2 = isotropic\n"
                   "\n"
                   "[link]\n"
                   "d_h_m = 2.5\n"
                   "d_g_m = 25\n"
                   "mu = 1\n"
                   "\n"
                   "[budget]\n"
                   "p_tx_w = 0.01\n"
                   "noise_w = 1e-8\n"
                   "\n"
                   "[sweep]\n"
                   "n_min = 1\n"
                   "n_max = 1000000\n"
                   "points_per_decade = 40\n"
                   "models = mmimo,irs-far-field,irs-exact\n"
                   "seed = 0\n";
        if (name == "fig2")
            return "# Total gain of a square planar array: exact model vs linear model.\n"
                   "[geometry]\n"
                   "wavelength_m = 0.1\n"
                   "element_area_m2 = isotropic\n"
                   "\n"
                   "[link]\n"
                   "d_h_m = 2.5\n"
                   "d_g_m = 2.5\n"
                   "mu = 1\n"
                   "\n"
                   "[budget]\n"
                   "p_tx_w = 0.01\n"
                   "noise_w = 1e-8\n"
                   "\n"
                   "[sweep]\n"
                   "n_min = 1\n"
                   "n_max = 100000000\n"
                   "points_per_decade = 40\n"
                   "models = mmimo,irs-far-field,irs-exact\n"
                   "seed = 0\n";
        if (name == "fig4-far")
            return "# Rate comparison between an active array and a passive surface.\n"
                   "[geometry]\n"
                   "wavelength_m = 0.1\n"
                   "element_area_m2 = isotropic\n"
                   "\n"
                   "[link]\n"
                   "d_h_m = 25\n"
                   "d_g_m = 25\n"
                   "mu = 1\n"
                   "beta_h_override = 1e-4\n"
                   "\n"
                   "[budget]\n"
                   "p_tx_w = 0.01\n"
                   "noise_w = 1e-8\n"
                   "\n"
                   "[sweep]\n"
                   "n_min = 1\n"
                   "n_max = 1000000\n"
                   "points_per_decade = 40\n"
                   "models = mmimo,irs-far-field,irs-exact\n"
                   "seed = 0\n";
        if (name == "fig4-near")
            return "# Rate comparison between an active array and a passive surface.\n"
                   "[geometry]\n"
                   "wavelength_m = 0.1\n"
                   "element_area_m2 = isotropic\n"
                   "\n"
                   "[link]\n"
                   "d_h_m = 25\n"
                   "d_g_m = 2.5\n"
                   "mu = 1\n"
                   "beta_h_override = 1e-4\n"
                   "\n"
                   "[budget]\n"
                   "p_tx_w = 0.01\n"
                   "noise_w = 1e-8\n"
                   "\n"
                   "[sweep]\n"
                   "n_min = 1\n"
                   "n_max = 1000000\n"
                   "points_per_decade = 40\n"
                   "models = mmimo,irs-far-field,irs-exact\n"
                   "seed = 0\n";
        throw ConfigError("unknown preset '" + std::string(name) +
                          "' (available: example1, fig2, fig4-far, fig4-near)");
    }

} // namespace reflect_lab

#endif
