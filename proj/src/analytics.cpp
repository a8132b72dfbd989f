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

#include "pnmimo/analytics.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace pnmimo::analytics {

namespace {

struct Scenario
{
    std::vector<double> powers;
    double total;
    double others;
    double e;
    double q_eff;
    double noise;
};

Scenario scenario(const SystemConfig &config, std::size_t k)
{
    config.validate();
    if (k >= config.K)
        throw std::out_of_range("UE index " + std::to_string(k) + " out of range");
    Scenario s;
    s.powers = config.resolved_powers();
    s.total = std::accumulate(s.powers.begin(), s.powers.end(), 0.0);
    s.others = s.total - s.powers[k];
    s.e = config.e_tpn2();
    s.q_eff = effective_quality(config.q0, s.e);
    s.noise = config.noise_variance();
    return s;
}

} // namespace

double effective_quality(double q0, double e_tpn2)
{
    if (!(q0 >= 0.0 && q0 <= 1.0) || !(e_tpn2 >= 0.0 && e_tpn2 <= 1.0))
        throw DomainError("q0 and e_tpn2 must lie in [0, 1]");
    return q0 * e_tpn2;
}

SinrPrediction sinr_rzf(const SystemConfig &config, double alpha, std::size_t k)
{
    const Scenario s = scenario(config, k);
    const auto params = rmt::AsymptoticParams::make(config.M, s.powers, alpha);
    const auto eq = rmt::equivalents(params, k, s.e);
    const double M = static_cast<double>(config.M);
    const double tq = eq.t * s.q_eff;
    const double num = s.powers[k] * eq.t * eq.t * s.q_eff;
    const double den = eq.t2 / M * (1.0 - tq - tq / (1.0 + eq.m)) + s.noise / (eq.xi * eq.xi);
    return {num / den, PrecoderKind::rzf, eq, s.q_eff, alpha};
}

SinrPrediction sinr_zf(const SystemConfig &config, std::size_t k)
{
    const Scenario s = scenario(config, k);
    if (!(config.beta() > 1.0))
        throw DomainError("ZF prediction requires beta > 1");
    const auto params = rmt::AsymptoticParams::make(config.M, s.powers, 1.0);
    const auto lim = rmt::zf_limit(params, k);
    rmt::DeterministicEquivalents eq;
    eq.m = std::numeric_limits<double>::infinity();
    eq.m_prime = std::numeric_limits<double>::infinity();
    eq.t = 1.0;
    eq.t2 = lim.t2;
    eq.xi = std::sqrt(lim.xi2);
    eq.e_tpn2 = s.e;
    const double num = s.powers[k] * s.q_eff;
    const double den = lim.t2 / static_cast<double>(config.M) * (1.0 - s.q_eff) + s.noise / lim.xi2;
    return {num / den, PrecoderKind::zf, eq, s.q_eff, 0.0};
}

namespace {

SinrPrediction mf_prediction(const SystemConfig &config, std::size_t k, bool finite_users)
{
    const Scenario s = scenario(config, k);
    rmt::DeterministicEquivalents eq;
    eq.m = 0.0;
    eq.m_prime = 0.0;
    eq.t = 0.0;
    eq.t2 = s.others;
    eq.xi = 0.0;
    eq.e_tpn2 = s.e;
    const double M = static_cast<double>(config.M);
    const double interference = finite_users ? s.others : s.total;
    const double sinr = M * s.q_eff * s.powers[k] / (interference + s.noise * s.total);
    return {sinr, PrecoderKind::mf, eq, s.q_eff, std::numeric_limits<double>::infinity()};
}

} // namespace

SinrPrediction sinr_mf(const SystemConfig &config, std::size_t k)
{
    return mf_prediction(config, k, false);
}

SinrPrediction sinr_mf_finite_users(const SystemConfig &config, std::size_t k)
{
    return mf_prediction(config, k, true);
}

double optimal_alpha(const SystemConfig &config)
{
    config.validate();
    return rmt::optimal_alpha(config.q0, config.e_tpn2(), config.noise_variance(), config.beta());
}

double resolve_alpha(const SystemConfig &config)
{
    switch (config.alpha_mode) {
    case AlphaMode::fixed:
        return config.alpha;
    case AlphaMode::optimal:
        return optimal_alpha(config);
    default:
        throw ConfigError("alpha_mode", "RZF needs alpha_mode optimal or fixed");
    }
}

double numeric_argmax_alpha(const SystemConfig &config, std::size_t k, double lo, double hi)
{
    if (!(lo > 0.0 && hi > lo))
        throw DomainError("invalid alpha search interval");
    auto f = [&](double log_a) { return sinr_rzf(config, std::exp(log_a), k).sinr; };
    const double a = std::log(lo);
    const double b = std::log(hi);
    constexpr int n = 400;
    int best = 0;
    double best_val = -1.0;
    for (int i = 0; i <= n; ++i) {
        const double v = f(a + (b - a) * i / n);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double x0 = a + (b - a) * std::max(best - 1, 0) / n;
    double x3 = a + (b - a) * std::min(best + 1, n) / n;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = x3 - g * (x3 - x0);
    double x2 = x0 + g * (x3 - x0);
    double f1 = f(x1);
    double f2 = f(x2);
    while (x3 - x0 > 1e-12) {
        if (f1 < f2) {
            x0 = x1;
            x1 = x2;
            f1 = f2;
            x2 = x0 + g * (x3 - x0);
            f2 = f(x2);
        } else {
            x3 = x2;
            x2 = x1;
            f2 = f1;
            x1 = x3 - g * (x3 - x0);
            f1 = f(x1);
        }
    }
    return std::exp(0.5 * (x0 + x3));
}

SinrPrediction predict(const SystemConfig &config, PrecoderKind kind, std::size_t k)
{
    switch (kind) {
    case PrecoderKind::rzf:
        return sinr_rzf(config, resolve_alpha(config), k);
    case PrecoderKind::zf:
        return sinr_zf(config, k);
    case PrecoderKind::mf:
        return sinr_mf(config, k);
    }
    throw std::invalid_argument("unknown precoder kind");
}

} // namespace pnmimo::analytics
