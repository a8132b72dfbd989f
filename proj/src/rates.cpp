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

#include "pnmimo/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pnmimo/types.hpp"

namespace pnmimo::rates {

int delta_pn(std::size_t M_osc)
{
    if (M_osc < 1)
        throw DomainError("M_osc must be >= 1");
    return M_osc == 1 ? 1 : 0;
}

double rate_awgn_bound(double sinr)
{
    if (!(sinr >= 0.0))
        throw DomainError("sinr must be non-negative");
    return std::log2(1.0 + sinr);
}

double rate_lapidoth(double sinr, std::size_t tau, double sigma2_ue, double sigma2_bs, std::size_t M_osc)
{
    if (!(sigma2_ue >= 0.0) || !(sigma2_bs >= 0.0))
        throw DomainError("phase-noise variances must be non-negative");
    const double var = static_cast<double>(tau) * (sigma2_ue + delta_pn(M_osc) * sigma2_bs);
    if (!(var > 0.0))
        throw DomainError("Lapidoth bound undefined without phase-noise variance");
    if (!(sinr > 0.0))
        throw DomainError("Lapidoth bound undefined for sinr <= 0");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return 0.5 * std::log2(two_pi * sinr) - 0.5 * std::log2(two_pi * std::numbers::e * var);
}

std::optional<double> try_rate_lapidoth(double sinr, std::size_t tau, double sigma2_ue, double sigma2_bs,
                                        std::size_t M_osc)
{
    try {
        return rate_lapidoth(sinr, tau, sigma2_ue, sigma2_bs, M_osc);
    } catch (const DomainError &) {
        return std::nullopt;
    }
}

double rate_min(double awgn, std::optional<double> lapidoth)
{
    if (!lapidoth || *lapidoth < 0.0)
        return std::max(0.0, awgn);
    return std::min(awgn, *lapidoth);
}

double rate_ergodic(double sinr_effective)
{
    return rate_awgn_bound(sinr_effective);
}

RateReport rate_report(double sinr, std::size_t tau, double sigma2_ue, double sigma2_bs, std::size_t M_osc)
{
    RateReport r;
    r.delta_pn = delta_pn(M_osc);
    r.rate_awgn_bound = rate_awgn_bound(sinr);
    r.rate_lapidoth = try_rate_lapidoth(sinr, tau, sigma2_ue, sigma2_bs, M_osc);
    r.rate_min = rate_min(r.rate_awgn_bound, r.rate_lapidoth);
    r.rate_ergodic = rate_ergodic(sinr);
    return r;
}

std::string to_string(RateDefinition def)
{
    return def == RateDefinition::ergodic ? "ergodic" : "min_bound";
}

RateDefinition parse_rate_definition(const std::string &s)
{
    if (s == "ergodic")
        return RateDefinition::ergodic;
    if (s == "min_bound")
        return RateDefinition::min_bound;
    throw ConfigError("rate", "expected ergodic or min_bound, got '" + s + "'");
}

double reported_rate(const RateReport &report, RateDefinition def)
{
    return def == RateDefinition::ergodic ? report.rate_ergodic : report.rate_min;
}

} // namespace pnmimo::rates
