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

#include "pnmimo/rmt.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace pnmimo::rmt {

namespace {

void check_domain(double alpha, double beta)
{
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("alpha must be positive and finite, got " + std::to_string(alpha));
    if (!(beta >= 1.0) || !std::isfinite(beta))
        throw DomainError("beta must be >= 1, got " + std::to_string(beta));
}

double discriminant_root(double alpha, double beta)
{
    const double ab = alpha * beta;
    return std::sqrt(ab * ab + 2.0 * (beta + 1.0) * ab + (1.0 - beta) * (1.0 - beta));
}

// m / (S (1 + m)) where S is the discriminant root; shared by t2 and xi.
struct Core
{
    double m;
    double S;
};

Core core(double alpha, double beta)
{
    return {stieltjes_mp(alpha, beta), discriminant_root(alpha, beta)};
}

double t2_from(const Core &c, double beta, double others)
{
    return others * beta * c.m / (c.S * (1.0 + c.m));
}

double xi2_from(const Core &c, double beta, std::size_t M, double total)
{
    return static_cast<double>(M) * (1.0 + c.m) * c.S / (beta * c.m * total);
}

double check_q_eff(double q0, double e_tpn2)
{
    if (q0 < 0.0 || q0 > 1.0)
        throw DomainError("q0 must lie in [0, 1]");
    if (e_tpn2 < 0.0 || e_tpn2 > 1.0)
        throw DomainError("e_tpn2 must lie in [0, 1]");
    if (q0 == 0.0 || e_tpn2 == 0.0)
        throw DegenerateError("optimal alpha undefined without usable CSI (q0 * E|T_PN|^2 = 0); MF is optimal");
    return q0 * e_tpn2;
}

} // namespace

AsymptoticParams AsymptoticParams::make(std::size_t M, std::vector<double> powers, double alpha)
{
    AsymptoticParams p;
    p.M = M;
    p.alpha = alpha;
    p.powers = std::move(powers);
    p.beta = p.powers.empty() ? 0.0 : static_cast<double>(M) / static_cast<double>(p.powers.size());
    p.validate();
    return p;
}

AsymptoticParams AsymptoticParams::equal_power(std::size_t M, std::size_t K, double alpha)
{
    if (K == 0)
        throw DomainError("K must be positive");
    return make(M, std::vector<double>(K, 1.0 / static_cast<double>(K)), alpha);
}

double AsymptoticParams::power_sum() const
{
    return std::accumulate(powers.begin(), powers.end(), 0.0);
}

double AsymptoticParams::power_sum_except(std::size_t k) const
{
    if (k >= powers.size())
        throw std::out_of_range("UE index " + std::to_string(k) + " out of range");
    double s = 0.0;
    for (std::size_t i = 0; i < powers.size(); ++i)
        if (i != k)
            s += powers[i];
    return s;
}

void AsymptoticParams::validate() const
{
    if (M == 0 || powers.empty())
        throw DomainError("M and K must be positive");
    const double ratio = static_cast<double>(M) / static_cast<double>(powers.size());
    if (std::abs(beta - ratio) > 1e-12 * ratio)
        throw DomainError("beta must equal M/K");
    if (beta < 1.0)
        throw DomainError("beta = M/K must be >= 1");
    for (double p : powers)
        if (!(p >= 0.0) || !std::isfinite(p))
            throw DomainError("powers must be finite and non-negative");
    if (!(power_sum() > 0.0))
        throw DomainError("sum of powers must be positive");
}

double stieltjes_mp(double alpha, double beta)
{
    check_domain(alpha, beta);
    const double b = beta - 1.0 - alpha * beta;
    const double S = discriminant_root(alpha, beta);
    // Rationalized branch avoids cancellation when b < 0 (large alpha).
    if (b >= 0.0)
        return (b + S) / (2.0 * alpha * beta);
    return 2.0 * beta / (S - b);
}

double stieltjes_mp_derivative(double alpha, double beta)
{
    const double m = stieltjes_mp(alpha, beta);
    return beta * m * (1.0 + m) / discriminant_root(alpha, beta);
}

double hardening_t(double m)
{
    if (!(m > 0.0))
        throw DomainError("m must be positive");
    if (std::isinf(m))
        return 1.0;
    return m / (m + 1.0);
}

double normalization_xi(const AsymptoticParams &params)
{
    params.validate();
    check_domain(params.alpha, params.beta);
    return std::sqrt(xi2_from(core(params.alpha, params.beta), params.beta, params.M, params.power_sum()));
}

double interference_t2(const AsymptoticParams &params, std::size_t k)
{
    params.validate();
    check_domain(params.alpha, params.beta);
    return t2_from(core(params.alpha, params.beta), params.beta, params.power_sum_except(k));
}

double optimal_alpha(double q0, double e_tpn2, double sigma_w2, double beta)
{
    if (sigma_w2 < 0.0 || beta < 1.0)
        throw DomainError("sigma_w2 must be >= 0 and beta >= 1");
    const double q = check_q_eff(q0, e_tpn2);
    return (sigma_w2 + 1.0 - q) / (q * beta);
}

double optimal_alpha_printed(double q0, double e_tpn2, double sigma_w2, double beta)
{
    if (sigma_w2 < 0.0 || beta < 1.0)
        throw DomainError("sigma_w2 must be >= 0 and beta >= 1");
    check_q_eff(q0, e_tpn2);
    const double q = e_tpn2 * q0 * q0;
    return (sigma_w2 + 1.0 - q) / (q * beta);
}

double optimal_alpha_finite_users(double q0, double e_tpn2, double sigma_w2, double beta,
                                  double power_sum, double power_sum_others)
{
    if (sigma_w2 < 0.0 || beta < 1.0)
        throw DomainError("sigma_w2 must be >= 0 and beta >= 1");
    if (!(power_sum > 0.0) || power_sum_others < 0.0)
        throw DomainError("power sums must be positive");
    const double q = check_q_eff(q0, e_tpn2);
    if (power_sum_others == 0.0)
        return std::numeric_limits<double>::infinity();
    return (sigma_w2 * power_sum / power_sum_others + 1.0 - q) / (q * beta);
}

double zf_probe_alpha(double beta)
{
    // First-order bias of the direct route is about alpha * beta * (beta + 1) / (beta - 1)^2.
    const double d = beta - 1.0;
    return 1e-8 * d * d / (beta * (beta + 1.0));
}

ZfLimit zf_limit(const AsymptoticParams &params, std::size_t k)
{
    params.validate();
    const double beta = params.beta;
    if (!(beta > 1.0))
        throw DomainError("zero-forcing limit requires beta > 1");
    const double total = params.power_sum();
    const double others = params.power_sum_except(k);

    ZfLimit closed;
    closed.t2 = others * beta / (beta - 1.0);
    closed.xi2 = static_cast<double>(params.M) * (beta - 1.0) / (beta * total);

    const Core c = core(zf_probe_alpha(beta), beta);
    const double t2_direct = t2_from(c, beta, others);
    const double xi2_direct = xi2_from(c, beta, params.M, total);

    auto rel = [](double a, double b) { return b == 0.0 ? std::abs(a) : std::abs(a - b) / std::abs(b); };
    if (rel(t2_direct, closed.t2) > 1e-6 || rel(xi2_direct, closed.xi2) > 1e-6)
        throw NumericalError("zero-forcing limit cross-check failed for beta = " + std::to_string(beta));
    return closed;
}

DeterministicEquivalents equivalents(const AsymptoticParams &params, std::size_t k, double e_tpn2)
{
    params.validate();
    check_domain(params.alpha, params.beta);
    const Core c = core(params.alpha, params.beta);
    DeterministicEquivalents eq;
    eq.m = c.m;
    eq.m_prime = params.beta * c.m * (1.0 + c.m) / c.S;
    eq.t = hardening_t(c.m);
    eq.t2 = t2_from(c, params.beta, params.power_sum_except(k));
    eq.xi = std::sqrt(xi2_from(c, params.beta, params.M, params.power_sum()));
    eq.e_tpn2 = e_tpn2;
    return eq;
}

} // namespace pnmimo::rmt
