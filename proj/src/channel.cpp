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

#include "pnmimo/channel.hpp"

#include <cmath>

namespace pnmimo::channel {

EstimateQuality EstimateQuality::from_q0(double q0)
{
    if (!(q0 >= 0.0 && q0 <= 1.0))
        throw ConfigError("q0", "must lie in [0, 1]");
    const double q1 = 1.0 - q0;
    EstimateQuality q{q0, q1, std::sqrt(q0 * q1)};
    return q;
}

void EstimateQuality::validate() const
{
    if (!(q0 >= 0.0 && q0 <= 1.0 && q1 >= 0.0 && q1 <= 1.0))
        throw ConfigError("q0", "quality coefficients must lie in [0, 1]");
    if (std::abs(q0 + q1 - 1.0) > 1e-12)
        throw ConfigError("q1", "q0 + q1 must equal 1");
    if (std::abs(q2 - std::sqrt(q0 * q1)) > 1e-12)
        throw ConfigError("q2", "q2 must equal sqrt(q0 q1)");
}

double q0_from_pilot_snr(double pilot_power, double noise_var)
{
    if (!(pilot_power >= 0.0) || !(noise_var >= 0.0) || pilot_power + noise_var == 0.0)
        throw DomainError("pilot power and noise variance must be non-negative and not both zero");
    return pilot_power / (pilot_power + noise_var);
}

CMatrix draw_channel(std::size_t M, std::size_t K, Rng &rng)
{
    if (M == 0 || K == 0)
        throw DomainError("M and K must be positive");
    return complex_normal_matrix(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(M), rng);
}

ChannelPair synthesize_estimate(CMatrix H, CMatrix estimation_noise, const phase_noise::PhaseTrace &trace,
                                const phase_noise::OscillatorTopology &topology, const EstimateQuality &quality)
{
    quality.validate();
    if (H.cols() != static_cast<Eigen::Index>(topology.M()) || estimation_noise.rows() != H.rows()
        || estimation_noise.cols() != H.cols())
        throw std::invalid_argument("channel, noise and topology dimensions disagree");
    const double a = std::sqrt(quality.q0);
    const double b = std::sqrt(quality.q1);
    CMatrix H_hat(H.rows(), H.cols());
    for (Eigen::Index k = 0; k < H.rows(); ++k) {
        const CVector theta = phase_noise::theta_matrix(trace, static_cast<std::size_t>(k),
                                                        phase_noise::Instant::training, topology);
        H_hat.row(k) = a * H.row(k).cwiseProduct(theta.transpose()) + b * estimation_noise.row(k);
    }
    return {std::move(H), std::move(H_hat), std::move(estimation_noise)};
}

ChannelPair synthesize_estimate(CMatrix H, const phase_noise::PhaseTrace &trace,
                                const phase_noise::OscillatorTopology &topology, const EstimateQuality &quality,
                                Rng &rng)
{
    CMatrix W = complex_normal_matrix(H.rows(), H.cols(), rng);
    return synthesize_estimate(std::move(H), std::move(W), trace, topology, quality);
}

} // namespace pnmimo::channel
