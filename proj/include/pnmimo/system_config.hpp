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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pnmimo/channel.hpp"
#include "pnmimo/phase_noise.hpp"

namespace pnmimo {

// per_ue: SNR = (1/K) / sigma_w2, the average per-UE share of unit transmit power.
// total:  SNR = 1 / sigma_w2.
enum class SnrReference
{
    per_ue,
    total
};

enum class AlphaMode
{
    optimal,
    fixed,
    zf,
    mf
};

std::string to_string(SnrReference ref);
std::string to_string(AlphaMode mode);
SnrReference parse_snr_reference(const std::string &s);
AlphaMode parse_alpha_mode(const std::string &s);

struct SystemConfig
{
    std::size_t M = 50;
    std::size_t K = 10;
    std::size_t M_osc = 1; // 0 selects one oscillator per antenna
    double q0 = 0.9;
    double sigma_deg_bs = 6.0;
    double sigma_deg_ue = 6.0;
    std::size_t tau = 10;
    std::size_t T_c = 100;
    double snr_db = 10.0;
    SnrReference snr_reference = SnrReference::per_ue;
    std::optional<double> sigma_w2; // overrides snr_db when set
    std::vector<double> powers;     // empty means equal power
    AlphaMode alpha_mode = AlphaMode::optimal;
    double alpha = 0.0;             // used when alpha_mode is fixed
    std::size_t n_realizations = 2000;
    std::uint64_t master_seed = 1;
    unsigned parallelism = 1;
    double condition_cap = 1e12;

    // Throws ConfigError naming the first offending field.
    void validate() const;

    std::size_t oscillators() const noexcept { return M_osc == 0 ? M : M_osc; }
    double beta() const noexcept { return static_cast<double>(M) / static_cast<double>(K); }
    std::vector<double> resolved_powers() const;
    double noise_variance() const;
    double e_tpn2() const;
    phase_noise::OscillatorTopology topology() const;
    phase_noise::PhaseNoiseParams phase_params() const;
    channel::EstimateQuality quality() const;
};

} // namespace pnmimo
