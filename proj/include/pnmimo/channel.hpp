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

#include "pnmimo/phase_noise.hpp"
#include "pnmimo/rng.hpp"
#include "pnmimo/types.hpp"

namespace pnmimo::channel {

// Gauss-Markov coupling between true channel and estimate; q0 + q1 = 1.
struct EstimateQuality
{
    double q0 = 1.0;
    double q1 = 0.0;
    double q2 = 0.0;

    static EstimateQuality from_q0(double q0);
    void validate() const;
};

// LMMSE estimate quality p_u / (p_u + sigma_w2) for a unit-variance channel.
// Convenience for callers that start from pilot power; the simulator takes q0 directly.
double q0_from_pilot_snr(double pilot_power, double noise_var);

// K x M i.i.d. CN(0, 1) Rayleigh channel.
CMatrix draw_channel(std::size_t M, std::size_t K, Rng &rng);

struct ChannelPair
{
    CMatrix H;
    CMatrix H_hat;
    CMatrix estimation_noise;
};

// Row k: sqrt(q0) Theta_{0,k} h_k + sqrt(q1) w_k.
ChannelPair synthesize_estimate(CMatrix H, CMatrix estimation_noise, const phase_noise::PhaseTrace &trace,
                                const phase_noise::OscillatorTopology &topology, const EstimateQuality &quality);

ChannelPair synthesize_estimate(CMatrix H, const phase_noise::PhaseTrace &trace,
                                const phase_noise::OscillatorTopology &topology, const EstimateQuality &quality,
                                Rng &rng);

} // namespace pnmimo::channel
