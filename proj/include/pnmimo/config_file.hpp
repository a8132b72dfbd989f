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

#include <filesystem>
#include <istream>
#include <string>

#include "pnmimo/sweep.hpp"

namespace pnmimo::sim {

// Flat text format:
//
//   # comment
//   [scenario]
//   M = 50
//   K = 10
//   M_osc = 5            # or M for one oscillator per antenna
//   sigma_deg = 6        # sets sigma_deg_bs and sigma_deg_ue
//   snr_db = 10          # or sigma_w2 = 0.1
//   precoders = rzf, zf, mf
//
//   [sweep]
//   name = low-snr
//   axis = snr           # snr | m_osc | beta | sigma_phi | alpha
//   values = -10, 0, 10
//   q0 = 0.8             # any scenario key overrides the base per sweep
//
// Errors are ConfigError with "source:line: key" context.
SweepPlan parse_plan(std::istream &in, const std::string &source = "<input>");
SweepPlan load_plan(const std::filesystem::path &path);

// Applies one scenario key to a config (shared by the parser and the CLI).
void set_config_key(SystemConfig &config, const std::string &key, const std::string &value);

} // namespace pnmimo::sim
