// SPDX-License-Identifier: Apache-2.0
//
// pnmimo: massive MIMO downlink simulation under oscillator phase noise
// Copyright (C) 2026 The pnmimo authors
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

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pnmimo/sweep.hpp"

namespace pnmimo::sim {

struct Preset
{
    std::string name;
    std::string description;
    std::string provenance; // source scenario and the rate definition it reports
    rates::RateDefinition rate;
    std::function<SweepPlan()> build;
};

const std::vector<Preset> &list_presets();

// Throws ConfigError for unknown names.
const Preset &find_preset(const std::string &name);

} // namespace pnmimo::sim
