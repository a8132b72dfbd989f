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

#include "pnmimo/system_config.hpp"

#include <cmath>
#include <numeric>

namespace pnmimo {

std::string to_string(SnrReference ref)
{
    return ref == SnrReference::total ? "total" : "per_ue";
}

std::string to_string(AlphaMode mode)
{
    switch (mode) {
    case AlphaMode::optimal:
        return "optimal";
    case AlphaMode::fixed:
        return "fixed";
    case AlphaMode::zf:
        return "zf";
    case AlphaMode::mf:
        return "mf";
    }
    return "unknown";
}

SnrReference parse_snr_reference(const std::string &s)
{
    if (s == "per_ue")
        return SnrReference::per_ue;
    if (s == "total")
        return SnrReference::total;
    throw ConfigError("snr_reference", "expected per_ue or total, got '" + s + "'");
}

AlphaMode parse_alpha_mode(const std::string &s)
{
    if (s == "optimal")
        return AlphaMode::optimal;
    if (s == "fixed")
        return AlphaMode::fixed;
    if (s == "zf")
        return AlphaMode::zf;
    if (s == "mf")
        return AlphaMode::mf;
    throw ConfigError("alpha_mode", "expected optimal, fixed, zf or mf, got '" + s + "'");
}

void SystemConfig::validate() const
{
    if (M < 1)
        throw ConfigError("M", "must be >= 1");
    if (K < 1)
        throw ConfigError("K", "must be >= 1");
    if (K > M)
        throw ConfigError("K", "must not exceed M = " + std::to_string(M));
    if (oscillators() > M || M % oscillators() != 0)
        throw ConfigError("M_osc", std::to_string(oscillators()) + " must divide M = " + std::to_string(M));
    if (!(q0 >= 0.0 && q0 <= 1.0))
        throw ConfigError("q0", "must lie in [0, 1]");
    if (!(sigma_deg_bs >= 0.0) || !std::isfinite(sigma_deg_bs))
        throw ConfigError("sigma_deg_bs", "must be finite and >= 0");
    if (!(sigma_deg_ue >= 0.0) || !std::isfinite(sigma_deg_ue))
        throw ConfigError("sigma_deg_ue", "must be finite and >= 0");
    if (tau < 1)
        throw ConfigError("tau", "must be >= 1");
    if (tau >= T_c)
        throw ConfigError("tau", "must be smaller than the coherence length T_c = " + std::to_string(T_c));
    if (sigma_w2) {
        if (!(*sigma_w2 >= 0.0) || !std::isfinite(*sigma_w2))
            throw ConfigError("sigma_w2", "must be finite and >= 0");
    } else if (!std::isfinite(snr_db)) {
        throw ConfigError("snr_db", "must be finite");
    }
    if (!powers.empty()) {
        if (powers.size() != K)
            throw ConfigError("powers", "expected " + std::to_string(K) + " entries, got " + std::to_string(powers.size()));
        for (double p : powers)
            if (!(p >= 0.0) || !std::isfinite(p))
                throw ConfigError("powers", "entries must be finite and >= 0");
        if (!(std::accumulate(powers.begin(), powers.end(), 0.0) > 0.0))
            throw ConfigError("powers", "sum must be positive");
    }
    if (alpha_mode == AlphaMode::fixed && !(alpha > 0.0 && std::isfinite(alpha)))
        throw ConfigError("alpha", "fixed alpha must be positive and finite");
    if (parallelism < 1)
        throw ConfigError("parallelism", "must be >= 1");
    if (!(condition_cap > 1.0))
        throw ConfigError("condition_cap", "must exceed 1");
}

std::vector<double> SystemConfig::resolved_powers() const
{
    if (powers.empty())
        return std::vector<double>(K, 1.0 / static_cast<double>(K));
    return powers;
}

double SystemConfig::noise_variance() const
{
    if (sigma_w2)
        return *sigma_w2;
    const double snr = std::pow(10.0, snr_db / 10.0);
    const double share = snr_reference == SnrReference::total ? 1.0 : 1.0 / static_cast<double>(K);
    return share / snr;
}

double SystemConfig::e_tpn2() const
{
    return phase_noise::t_pn_second_moment(oscillators(), tau, phase_noise::degrees_to_variance(sigma_deg_bs));
}

phase_noise::OscillatorTopology SystemConfig::topology() const
{
    return {M, oscillators()};
}

phase_noise::PhaseNoiseParams SystemConfig::phase_params() const
{
    return phase_noise::PhaseNoiseParams::from_degrees(sigma_deg_bs, sigma_deg_ue, tau);
}

channel::EstimateQuality SystemConfig::quality() const
{
    return channel::EstimateQuality::from_q0(q0);
}

} // namespace pnmimo
