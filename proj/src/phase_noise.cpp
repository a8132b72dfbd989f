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

#include "pnmimo/phase_noise.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pnmimo::phase_noise {

OscillatorTopology::OscillatorTopology(std::size_t M, std::size_t M_osc) : M_(M), M_osc_(M_osc)
{
    if (M == 0)
        throw ConfigError("M", "must be positive");
    if (M_osc == 0 || M_osc > M)
        throw ConfigError("M_osc", "must satisfy 1 <= M_osc <= M");
    if (M % M_osc != 0)
        throw ConfigError("M_osc", std::to_string(M_osc) + " does not divide M = " + std::to_string(M));
}

std::size_t OscillatorTopology::oscillator_of(std::size_t antenna) const
{
    if (antenna >= M_)
        throw std::out_of_range("antenna index " + std::to_string(antenna) + " out of range");
    return antenna / block_size();
}

double degrees_to_variance(double sigma_deg)
{
    const double rad = sigma_deg * std::numbers::pi / 180.0;
    return rad * rad;
}

PhaseNoiseParams PhaseNoiseParams::from_degrees(double sigma_deg_bs, double sigma_deg_ue, std::size_t tau)
{
    PhaseNoiseParams p{degrees_to_variance(sigma_deg_bs), degrees_to_variance(sigma_deg_ue), tau};
    p.validate();
    return p;
}

void PhaseNoiseParams::validate() const
{
    if (!(sigma2_bs >= 0.0) || !(sigma2_ue >= 0.0))
        throw ConfigError("sigma", "phase-noise variances must be non-negative");
    if (tau < 1)
        throw ConfigError("tau", "must be >= 1");
}

WienerSamples simulate_wiener(std::size_t n, std::size_t tau, double sigma2, Rng &rng, WienerMode mode)
{
    if (!(sigma2 >= 0.0))
        throw DomainError("sigma2 must be non-negative");
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
    WienerSamples s;
    s.start.resize(n);
    s.end.resize(n);
    for (auto &phi : s.start)
        phi = uniform(rng);
    if (sigma2 == 0.0) {
        s.end = s.start;
        return s;
    }
    if (mode == WienerMode::single_increment) {
        std::normal_distribution<double> inc(0.0, std::sqrt(static_cast<double>(tau) * sigma2));
        for (std::size_t i = 0; i < n; ++i)
            s.end[i] = s.start[i] + inc(rng);
    } else {
        std::normal_distribution<double> step(0.0, std::sqrt(sigma2));
        for (std::size_t i = 0; i < n; ++i) {
            double phi = s.start[i];
            for (std::size_t j = 0; j < tau; ++j)
                phi += step(rng);
            s.end[i] = phi;
        }
    }
    return s;
}

Eigen::MatrixXd simulate_wiener_path(std::size_t n, std::size_t steps, double sigma2, Rng &rng)
{
    if (!(sigma2 >= 0.0))
        throw DomainError("sigma2 must be non-negative");
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> step(0.0, std::sqrt(sigma2));
    Eigen::MatrixXd path(n, steps + 1);
    for (std::size_t i = 0; i < n; ++i) {
        path(i, 0) = uniform(rng);
        for (std::size_t j = 1; j <= steps; ++j)
            path(i, j) = path(i, j - 1) + (sigma2 > 0.0 ? step(rng) : 0.0);
    }
    return path;
}

PhaseTrace simulate_trace(const OscillatorTopology &topology, std::size_t K, const PhaseNoiseParams &params,
                          Rng &rng, WienerMode mode)
{
    params.validate();
    PhaseTrace trace;
    trace.tau = params.tau;
    trace.bs = simulate_wiener(topology.M_osc(), params.tau, params.sigma2_bs, rng, mode);
    trace.ue = simulate_wiener(K, params.tau, params.sigma2_ue, rng, mode);
    return trace;
}

namespace {

void check_trace(const PhaseTrace &trace, const OscillatorTopology &topology)
{
    if (trace.bs.start.size() != topology.M_osc() || trace.bs.end.size() != topology.M_osc())
        throw std::invalid_argument("phase trace does not match the oscillator topology");
}

} // namespace

CVector theta_matrix(const PhaseTrace &trace, std::size_t ue, Instant when, const OscillatorTopology &topology)
{
    check_trace(trace, topology);
    const auto &bs = when == Instant::training ? trace.bs.start : trace.bs.end;
    const auto &uep = when == Instant::training ? trace.ue.start : trace.ue.end;
    if (ue >= uep.size())
        throw std::out_of_range("UE index " + std::to_string(ue) + " out of range");
    const std::size_t block = topology.block_size();
    CVector d(static_cast<Eigen::Index>(topology.M()));
    for (std::size_t l = 0; l < topology.M_osc(); ++l) {
        const Complex v = std::polar(1.0, uep[ue] + bs[l]);
        d.segment(static_cast<Eigen::Index>(l * block), static_cast<Eigen::Index>(block)).setConstant(v);
    }
    return d;
}

CVector delta_phi(const PhaseTrace &trace, const OscillatorTopology &topology)
{
    check_trace(trace, topology);
    const std::size_t block = topology.block_size();
    CVector d(static_cast<Eigen::Index>(topology.M()));
    for (std::size_t l = 0; l < topology.M_osc(); ++l) {
        const Complex v = std::polar(1.0, trace.bs.end[l] - trace.bs.start[l]);
        d.segment(static_cast<Eigen::Index>(l * block), static_cast<Eigen::Index>(block)).setConstant(v);
    }
    return d;
}

Complex t_pn(const CVector &delta_phi_diag)
{
    if (delta_phi_diag.size() == 0)
        throw std::invalid_argument("empty phase matrix");
    return delta_phi_diag.mean();
}

Complex t_pn(const PhaseTrace &trace, const OscillatorTopology &topology)
{
    check_trace(trace, topology);
    Complex s = 0.0;
    for (std::size_t l = 0; l < topology.M_osc(); ++l)
        s += std::polar(1.0, trace.bs.end[l] - trace.bs.start[l]);
    return s / static_cast<double>(topology.M_osc());
}

double t_pn_second_moment(std::size_t M_osc, std::size_t tau, double sigma2_bs)
{
    if (M_osc < 1)
        throw DomainError("M_osc must be >= 1");
    if (!(sigma2_bs >= 0.0))
        throw DomainError("sigma2_bs must be non-negative");
    const double e = std::exp(-static_cast<double>(tau) * sigma2_bs);
    return (1.0 - e) / static_cast<double>(M_osc) + e;
}

} // namespace pnmimo::phase_noise
