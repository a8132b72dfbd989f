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
#include <span>
#include <vector>

#include "pnmimo/types.hpp"

namespace pnmimo::rmt {

// Large-system parameters of one scenario. beta is always M/K.
struct AsymptoticParams
{
    double alpha = 0.0;
    double beta = 1.0;
    std::size_t M = 1;
    std::vector<double> powers;

    static AsymptoticParams make(std::size_t M, std::vector<double> powers, double alpha);
    static AsymptoticParams equal_power(std::size_t M, std::size_t K, double alpha);

    std::size_t K() const noexcept { return powers.size(); }
    double power_sum() const;
    double power_sum_except(std::size_t k) const;
    void validate() const;
};

struct DeterministicEquivalents
{
    double m = 0.0;
    double m_prime = 0.0;
    double t = 0.0;
    double t2 = 0.0;
    double xi = 0.0;
    double e_tpn2 = 1.0;
};

// Stieltjes transform of the Marchenko-Pastur law evaluated at z = -alpha.
double stieltjes_mp(double alpha, double beta);

// dm/dz at z = -alpha.
double stieltjes_mp_derivative(double alpha, double beta);

double hardening_t(double m);

double normalization_xi(const AsymptoticParams &params);

// Interference factor seen by UE k (0-based).
double interference_t2(const AsymptoticParams &params, std::size_t k);

// Regularization maximizing the RZF SINR as K grows with q_eff = q0 * e_tpn2.
double optimal_alpha(double q0, double e_tpn2, double sigma_w2, double beta);

// Same expression with q0^2 in place of q0, kept for comparison.
double optimal_alpha_printed(double q0, double e_tpn2, double sigma_w2, double beta);

// Exact maximizer at finite K: the noise term is weighted by sum(p) / sum_{k1 != k}(p).
double optimal_alpha_finite_users(double q0, double e_tpn2, double sigma_w2, double beta,
                                  double power_sum, double power_sum_others);

struct ZfLimit
{
    double t2 = 0.0;
    double xi2 = 0.0;
};

// alpha -> 0 limits for beta > 1. Cross-checked against a direct evaluation
// at a tiny alpha; throws NumericalError if the two routes disagree.
ZfLimit zf_limit(const AsymptoticParams &params, std::size_t k);

// Probe alpha used by zf_limit for the direct route.
double zf_probe_alpha(double beta);

DeterministicEquivalents equivalents(const AsymptoticParams &params, std::size_t k, double e_tpn2);

} // namespace pnmimo::rmt
