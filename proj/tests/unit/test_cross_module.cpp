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

#include <doctest.h>

#include "pnmimo/analytics.hpp"
#include "pnmimo/link_sim.hpp"
#include "pnmimo/precoding.hpp"
#include "pnmimo/rates.hpp"
#include "pnmimo/rmt.hpp"
#include "test_util.hpp"

using namespace pnmimo;
using pnmimo::testing::rel_err;

namespace {

double mean_rzf_xi(std::size_t M, std::size_t K, double alpha, std::size_t draws, std::uint64_t seed)
{
    const std::vector<double> p(K, 1.0 / static_cast<double>(K));
    double acc = 0.0;
    for (std::uint64_t i = 0; i < draws; ++i) {
        Rng rng = make_stream(seed, {i});
        const CMatrix Hh = complex_normal_matrix(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(M), rng);
        acc += precoding::build_rzf(Hh, alpha, p).xi_empirical;
    }
    return acc / static_cast<double>(draws);
}

} // namespace

TEST_CASE("closed-form normalization matches the built precoders")
{
    for (double alpha : {0.05, 0.5, 2.0}) {
        const double xi128 = rmt::normalization_xi(rmt::AsymptoticParams::equal_power(128, 32, alpha));
        const double xi256 = rmt::normalization_xi(rmt::AsymptoticParams::equal_power(256, 64, alpha));
        INFO("alpha " << alpha);
        CHECK(rel_err(mean_rzf_xi(128, 32, alpha, 200, 1), xi128) <= 0.05);
        CHECK(rel_err(mean_rzf_xi(256, 64, alpha, 200, 2), xi256) <= 0.03);
    }
}

TEST_CASE("ZF normalization at M = 256 against the closed-form limit")
{
    const auto lim = rmt::zf_limit(rmt::AsymptoticParams::equal_power(256, 64, 1.0), 0);
    const std::vector<double> p(64, 1.0 / 64.0);
    double acc = 0.0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        Rng rng = make_stream(3, {i});
        acc += std::pow(precoding::build_zf(complex_normal_matrix(64, 256, rng), p).xi_empirical, 2);
    }
    CHECK(rel_err(acc / 200.0, lim.xi2) <= 0.03);
}

TEST_CASE("analytical RZF SINR matches simulation at 10 dB")
{
    SystemConfig c;
    c.snr_db = 10.0;
    for (std::size_t M_osc : {1, 0}) {
        c.M_osc = M_osc;
        const double th = analytics::predict(c, PrecoderKind::rzf).sinr;
        const double mc = linksim::empirical_sinr(c, PrecoderKind::rzf).sinr;
        INFO("M_osc " << M_osc << ": closed form " << th << ", simulated " << mc);
        CHECK(rel_err(mc, th) <= 0.05);
    }
}

TEST_CASE("simulated hardening factor follows the Stieltjes transform")
{
    const std::size_t M = 256, K = 64;
    const double alpha = 0.4;
    double acc = 0.0;
    const int draws = 100;
    for (int i = 0; i < draws; ++i) {
        Rng rng = make_stream(4, {static_cast<std::uint64_t>(i)});
        const CMatrix Hh = complex_normal_matrix(K, M, rng);
        const auto P = precoding::build_rzf(Hh, alpha, std::vector<double>(K, 1.0 / K));
        // Unnormalized beam (H^H H + M alpha I)^-1 h*; h^T times it is x^H (H^H H / M + alpha I)^-1 x.
        const Complex g = (Hh.row(0) * P.G.col(0))(0) / (P.xi_empirical * std::sqrt(1.0 / K));
        acc += g.real();
    }
    const double t = rmt::hardening_t(rmt::stieltjes_mp(alpha, 4.0));
    CHECK(rel_err(acc / draws, t) <= 0.02);
}

TEST_CASE("MF rates cross between CO and DO as beta grows")
{
    const double s2 = phase_noise::degrees_to_variance(6.0);
    auto rate = [&](std::size_t M_osc, std::size_t beta) {
        SystemConfig c;
        c.K = 25;
        c.M = 25 * beta;
        c.M_osc = M_osc;
        c.tau = 25;
        c.T_c = 100;
        c.snr_db = 0.0;
        c.snr_reference = SnrReference::total;
        const double sinr = analytics::sinr_mf(c).sinr;
        return rates::rate_report(sinr, c.tau, s2, s2, c.oscillators()).rate_min;
    };
    CHECK(rate(1, 1) > rate(0, 1));
    CHECK(rate(0, 10) > rate(1, 10));
}
