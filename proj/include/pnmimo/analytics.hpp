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

#include <cstddef>

#include "pnmimo/rmt.hpp"
#include "pnmimo/system_config.hpp"

namespace pnmimo::analytics {

struct SinrPrediction
{
    double sinr = 0.0;
    PrecoderKind kind = PrecoderKind::rzf;
    // For ZF and MF these hold the alpha -> 0 and alpha -> inf limits
    // (m = inf, t = 1 and m = 0, t = 0 respectively).
    rmt::DeterministicEquivalents equivalents;
    double q_eff = 0.0; // q0 * E|T_PN|^2
    double alpha = 0.0;
};

double effective_quality(double q0, double e_tpn2);

// Large-system effective SINR of UE k under RZF with regularization alpha.
SinrPrediction sinr_rzf(const SystemConfig &config, double alpha, std::size_t k = 0);

// alpha -> 0 limit; requires beta > 1.
SinrPrediction sinr_zf(const SystemConfig &config, std::size_t k = 0);

// Matched filter with the interference sum taken over all K users.
SinrPrediction sinr_mf(const SystemConfig &config, std::size_t k = 0);

// alpha -> inf limit of sinr_rzf keeping the K - 1 interferer sum.
SinrPrediction sinr_mf_finite_users(const SystemConfig &config, std::size_t k = 0);

// Closed-form optimal regularization for the scenario.
double optimal_alpha(const SystemConfig &config);

// Alpha actually used for RZF: optimal_alpha or the configured fixed value.
double resolve_alpha(const SystemConfig &config);

// Numerical maximizer of sinr_rzf over alpha in [lo, hi]: log grid then golden section.
double numeric_argmax_alpha(const SystemConfig &config, std::size_t k = 0, double lo = 1e-6, double hi = 1e4);

SinrPrediction predict(const SystemConfig &config, PrecoderKind kind, std::size_t k = 0);

} // namespace pnmimo::analytics
