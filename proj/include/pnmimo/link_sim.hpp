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

#include "pnmimo/channel.hpp"
#include "pnmimo/phase_noise.hpp"
#include "pnmimo/precoding.hpp"
#include "pnmimo/system_config.hpp"

namespace pnmimo::linksim {

// Scalar channel seen by one UE: y_k = zeta_sig s_k + zeta_int^T s_{-k} + w_k.
struct SignalDecomposition
{
    Complex zeta_sig;
    CVector zeta_int;
    double noise_var = 0.0;

    double signal_power() const { return std::norm(zeta_sig); }
    double interference_power() const { return zeta_int.squaredNorm(); }
};

// Rows h_k^T Theta_{tau,k}: the channel the data symbols actually see.
CMatrix effective_channel(const CMatrix &H, const phase_noise::PhaseTrace &trace,
                          const phase_noise::OscillatorTopology &topology);

SignalDecomposition decompose(const CMatrix &H, const CMatrix &G, const phase_noise::PhaseTrace &trace,
                              const phase_noise::OscillatorTopology &topology, std::size_t ue, double noise_var);

enum class SymbolAlphabet
{
    gaussian,
    qpsk
};

CVector draw_symbols(std::size_t K, SymbolAlphabet alphabet, Rng &rng);
CVector draw_noise(std::size_t K, double noise_var, Rng &rng);

// Received samples of all K UEs for one data symbol.
CVector transmit_symbols(const CMatrix &G, const CVector &symbols, const CMatrix &H,
                         const phase_noise::PhaseTrace &trace, const phase_noise::OscillatorTopology &topology,
                         const CVector &noise);

// Channel, estimate and phases of one Monte-Carlo draw.
struct Realization
{
    channel::ChannelPair channels;
    phase_noise::PhaseTrace trace;
};

// Deterministic in (config.master_seed, index).
Realization draw_realization(const SystemConfig &config, std::size_t index);

precoding::PrecoderMatrix build_precoder(const SystemConfig &config, PrecoderKind kind, const CMatrix &H_hat);

struct SinrEstimate
{
    double mean_sig_power = 0.0;
    double mean_int_power = 0.0;
    double noise_var = 0.0;
    double sinr = 0.0;
    std::size_t n_realizations = 0; // accepted draws
    std::size_t n_rejected = 0;
    double std_error = 0.0;
};

// Fraction of rejected ZF draws above which empirical_sinr fails.
inline constexpr double max_rejection_rate = 1e-3;

// Averages signal and interference power over config.n_realizations joint
// channel / estimate / phase draws. Without 'ue', UE powers equal and all UEs
// are pooled; otherwise only that UE is measured (UE 0 for unequal powers).
SinrEstimate empirical_sinr(const SystemConfig &config, PrecoderKind kind, std::optional<std::size_t> ue = {});

} // namespace pnmimo::linksim
