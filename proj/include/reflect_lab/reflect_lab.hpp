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

#ifndef REFLECT_LAB_REFLECT_LAB_HPP
#define REFLECT_LAB_REFLECT_LAB_HPP

#include "reflect_lab/analysis.hpp"
#include "reflect_lab/config.hpp"
#include "reflect_lab/csv.hpp"
#include "reflect_lab/errors.hpp"
#include "reflect_lab/links.hpp"
#include "reflect_lab/presets.hpp"
#include "reflect_lab/propagation.hpp"
#include "reflect_lab/version.hpp"

#endif
