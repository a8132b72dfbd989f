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
#include <optional>
#include <string>

namespace pnmimo::rates {

// 1 when all antennas share one oscillator, else 0.
int delta_pn(std::size_t M_osc);

// log2(1 + sinr).
double rate_awgn_bound(double sinr);

// High-SNR bound 0.5 log2(2 pi sinr) - 0.5 log2(2 pi e tau (s2_ue + delta_pn s2_bs)).
// Throws DomainError when the phase-variance argument or sinr is zero.
double rate_lapidoth(double sinr, std::size_t tau, double sigma2_ue, double sigma2_bs, std::size_t M_osc);

std::optional<double> try_rate_lapidoth(double sinr, std::size_t tau, double sigma2_ue, double sigma2_bs,
                                        std::size_t M_osc);

// min of both bounds; falls back to max(0, awgn) when Lapidoth is undefined or negative.
double rate_min(double awgn, std::optional<double> lapidoth);

// log2(1 + effective sinr). Ignores the phase-noise entropy penalty.
double rate_ergodic(double sinr_effective);

struct RateReport
{
    double rate_awgn_bound = 0.0;
    std::optional<double> rate_lapidoth;
    double rate_min = 0.0;
    double rate_ergodic = 0.0;
    int delta_pn = 0;
};

RateReport rate_report(double sinr, std::size_t tau, double sigma2_ue, double sigma2_bs, std::size_t M_osc);

enum class RateDefinition
{
    ergodic,  // log2(1 + effective SINR)
    min_bound // min(AWGN bound, Lapidoth bound)
};

std::string to_string(RateDefinition def);
RateDefinition parse_rate_definition(const std::string &s);
double reported_rate(const RateReport &report, RateDefinition def);

} // namespace pnmimo::rates
