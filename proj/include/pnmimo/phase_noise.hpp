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
#include <vector>

#include "pnmimo/rng.hpp"
#include "pnmimo/types.hpp"

namespace pnmimo::phase_noise {

// M antennas driven by M_osc free-running oscillators, M/M_osc antennas each.
class OscillatorTopology
{
public:
    OscillatorTopology(std::size_t M, std::size_t M_osc);

    static OscillatorTopology common(std::size_t M) { return {M, 1}; }
    static OscillatorTopology distributed(std::size_t M) { return {M, M}; }

    std::size_t M() const noexcept { return M_; }
    std::size_t M_osc() const noexcept { return M_osc_; }
    std::size_t block_size() const noexcept { return M_ / M_osc_; }
    std::size_t oscillator_of(std::size_t antenna) const;
    bool is_common() const noexcept { return M_osc_ == 1; }
    bool is_distributed() const noexcept { return M_osc_ == M_; }

private:
    std::size_t M_;
    std::size_t M_osc_;
};

// Per-symbol Wiener increment variances in rad^2.
struct PhaseNoiseParams
{
    double sigma2_bs = 0.0;
    double sigma2_ue = 0.0;
    std::size_t tau = 1;

    static PhaseNoiseParams from_degrees(double sigma_deg_bs, double sigma_deg_ue, std::size_t tau);
    void validate() const;
};

double degrees_to_variance(double sigma_deg);

// Phases of n independent processes at the training symbol and tau symbols later.
struct WienerSamples
{
    std::vector<double> start;
    std::vector<double> end;
};

enum class WienerMode
{
    single_increment, // one N(0, tau * sigma2) draw per process
    stepwise          // tau accumulated N(0, sigma2) steps
};

WienerSamples simulate_wiener(std::size_t n, std::size_t tau, double sigma2, Rng &rng,
                              WienerMode mode = WienerMode::single_increment);

// Full sample paths (n rows, steps + 1 columns) for plotting.
Eigen::MatrixXd simulate_wiener_path(std::size_t n, std::size_t steps, double sigma2, Rng &rng);

struct PhaseTrace
{
    WienerSamples bs; // one entry per oscillator
    WienerSamples ue; // one entry per UE
    std::size_t tau = 1;
};

PhaseTrace simulate_trace(const OscillatorTopology &topology, std::size_t K, const PhaseNoiseParams &params,
                          Rng &rng, WienerMode mode = WienerMode::single_increment);

enum class Instant
{
    training,
    data
};

// Diagonal of Theta_{j,k}: exp(i (ue phase of k + phase of the antenna's oscillator)).
CVector theta_matrix(const PhaseTrace &trace, std::size_t ue, Instant when, const OscillatorTopology &topology);

// Diagonal of the BS drift matrix between training and data.
CVector delta_phi(const PhaseTrace &trace, const OscillatorTopology &topology);

// (1/M) tr(Delta Phi).
Complex t_pn(const CVector &delta_phi_diag);
Complex t_pn(const PhaseTrace &trace, const OscillatorTopology &topology);

double t_pn_second_moment(std::size_t M_osc, std::size_t tau, double sigma2_bs);

} // namespace pnmimo::phase_noise
