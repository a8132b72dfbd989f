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

#include <cmath>

#include "pnmimo/analytics.hpp"
#include "pnmimo/link_sim.hpp"
#include "test_util.hpp"

using namespace pnmimo;
using namespace pnmimo::linksim;
using phase_noise::OscillatorTopology;
using phase_noise::PhaseNoiseParams;

namespace {

SystemConfig reference(std::size_t M_osc = 1)
{
    SystemConfig c;
    c.M = 50;
    c.K = 10;
    c.M_osc = M_osc;
    c.q0 = 0.9;
    c.sigma_deg_bs = 6.0;
    c.sigma_deg_ue = 6.0;
    c.tau = 10;
    c.T_c = 100;
    c.n_realizations = 2000;
    c.master_seed = 1;
    return c;
}

struct Draw
{
    CMatrix H;
    CMatrix H_hat;
    phase_noise::PhaseTrace trace;
    OscillatorTopology topo;
};

Draw noiseless_draw(std::size_t M, std::size_t K, Rng &rng)
{
    const OscillatorTopology topo(M, 1);
    auto tr = phase_noise::simulate_trace(topo, K, PhaseNoiseParams{0.0, 0.0, 10}, rng);
    auto pair = channel::synthesize_estimate(channel::draw_channel(M, K, rng), tr, topo,
                                             channel::EstimateQuality::from_q0(1.0), rng);
    return {pair.H, pair.H_hat, tr, topo};
}

} // namespace

TEST_CASE("ZF nulls interference without phase noise and with perfect CSI")
{
    Rng rng = make_stream(1, {0});
    const auto d = noiseless_draw(64, 16, rng);
    const auto P = precoding::build_zf(d.H_hat, std::vector<double>(16, 1.0 / 16.0));
    for (std::size_t k = 0; k < 16; ++k) {
        const auto s = decompose(d.H, P.G, d.trace, d.topo, k, 0.1);
        CHECK(s.interference_power() <= 1e-18);
        CHECK(s.zeta_int.size() == 15);
        CHECK(s.signal_power() > 0.0);
    }
}

TEST_CASE("single user has no interference term")
{
    Rng rng = make_stream(2, {0});
    const auto d = noiseless_draw(16, 1, rng);
    const auto P = precoding::build_mf(d.H_hat, std::vector<double>{1.0});
    const auto s = decompose(d.H, P.G, d.trace, d.topo, 0, 0.5);
    CHECK(s.zeta_int.size() == 0);
    CHECK(s.interference_power() == 0.0);

    SystemConfig c = reference();
    c.M = 16;
    c.K = 1;
    c.sigma_w2 = 0.5;
    c.n_realizations = 50;
    const auto est = empirical_sinr(c, PrecoderKind::mf);
    CHECK(est.mean_int_power == 0.0);
    CHECK(est.sinr == doctest::Approx(est.mean_sig_power / 0.5).epsilon(1e-14));
}

TEST_CASE("received samples agree with the decomposition")
{
    Rng rng = make_stream(3, {0});
    const OscillatorTopology topo(32, 4);
    const auto tr = phase_noise::simulate_trace(topo, 8, PhaseNoiseParams::from_degrees(6, 6, 10), rng);
    const auto pair = channel::synthesize_estimate(channel::draw_channel(32, 8, rng), tr, topo,
                                                   channel::EstimateQuality::from_q0(0.9), rng);
    const std::vector<double> p(8, 1.0 / 8.0);
    const auto P = precoding::build_rzf(pair.H_hat, 0.1, p);
    for (auto alphabet : {SymbolAlphabet::gaussian, SymbolAlphabet::qpsk}) {
        const CVector s = draw_symbols(8, alphabet, rng);
        const CVector w = draw_noise(8, 0.3, rng);
        const CVector y = transmit_symbols(P.G, s, pair.H, tr, topo, w);
        for (std::size_t k = 0; k < 8; ++k) {
            const auto d = decompose(pair.H, P.G, tr, topo, k, 0.3);
            Complex expect = d.zeta_sig * s(static_cast<Eigen::Index>(k)) + w(static_cast<Eigen::Index>(k));
            for (Eigen::Index j = 0, o = 0; j < 8; ++j)
                if (j != static_cast<Eigen::Index>(k))
                    expect += d.zeta_int(o++) * s(j);
            CHECK(std::abs(y(static_cast<Eigen::Index>(k)) - expect) <= 1e-12);
        }
    }
}

TEST_CASE("QPSK symbols have unit modulus")
{
    Rng rng = make_stream(4, {0});
    const CVector s = draw_symbols(1000, SymbolAlphabet::qpsk, rng);
    CHECK((s.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-15);
    CHECK_THROWS_AS(draw_noise(3, -1.0, rng), DomainError);
}

TEST_CASE("exact ZF link delivers scaled symbols")
{
    Rng rng = make_stream(5, {0});
    const auto d = noiseless_draw(40, 8, rng);
    std::vector<double> p{0.05, 0.1, 0.15, 0.2, 0.1, 0.1, 0.2, 0.1};
    const auto P = precoding::build_zf(d.H_hat, p);
    const CVector s = draw_symbols(8, SymbolAlphabet::gaussian, rng);
    const CVector y = transmit_symbols(P.G, s, d.H, d.trace, d.topo, CVector::Zero(8));
    for (Eigen::Index k = 0; k < 8; ++k)
        CHECK(std::abs(y(k) - P.xi_empirical * std::sqrt(p[static_cast<std::size_t>(k)]) * s(k)) <= 1e-12);
}

TEST_CASE("received power equals signal plus interference plus noise")
{
    Rng rng = make_stream(6, {0});
    const OscillatorTopology topo(24, 24);
    const auto tr = phase_noise::simulate_trace(topo, 6, PhaseNoiseParams::from_degrees(6, 6, 10), rng);
    const auto pair = channel::synthesize_estimate(channel::draw_channel(24, 6, rng), tr, topo,
                                                   channel::EstimateQuality::from_q0(0.8), rng);
    const auto P = precoding::build_mf(pair.H_hat, std::vector<double>(6, 1.0 / 6.0));
    const auto d = decompose(pair.H, P.G, tr, topo, 2, 0.2);
    const int n = 100000;
    std::vector<double> pw(n);
    for (int i = 0; i < n; ++i) {
        const CVector y = transmit_symbols(P.G, draw_symbols(6, SymbolAlphabet::gaussian, rng), pair.H, tr, topo,
                                           draw_noise(6, 0.2, rng));
        pw[static_cast<std::size_t>(i)] = std::norm(y(2));
    }
    const auto mv = testing::mean_var(pw);
    const double expect = d.signal_power() + d.interference_power() + 0.2;
    CHECK(std::abs(mv.mean - expect) <= 4.0 * mv.std_error());
}

TEST_CASE("channel is constant over the coherence block")
{
    const SystemConfig c = reference();
    const auto a = draw_realization(c, 17);
    const auto b = draw_realization(c, 17);
    CHECK(a.channels.H == b.channels.H);
    CHECK(a.channels.H_hat == b.channels.H_hat);
    CHECK(a.trace.bs.end == b.trace.bs.end);
    // Every symbol of the block sees the same effective channel.
    const CMatrix R1 = effective_channel(a.channels.H, a.trace, c.topology());
    const CMatrix R2 = effective_channel(a.channels.H, a.trace, c.topology());
    CHECK(R1 == R2);
    CHECK(draw_realization(c, 18).channels.H != a.channels.H);
}

TEST_CASE("a common phase offset on every oscillator leaves the SINR unchanged")
{
    // The estimation noise is circular, so rotating it with the offset keeps the draw equally likely.
    const SystemConfig c = reference(5);
    const auto topo = c.topology();
    const auto r = draw_realization(c, 3);
    auto shifted = r.trace;
    for (auto &v : shifted.bs.start)
        v += 0.7;
    for (auto &v : shifted.bs.end)
        v += 0.7;
    const CMatrix W = r.channels.estimation_noise * std::polar(1.0, 0.7);
    const auto pair = channel::synthesize_estimate(r.channels.H, W, shifted, topo, c.quality());
    for (auto kind : {PrecoderKind::rzf, PrecoderKind::zf, PrecoderKind::mf}) {
        const auto P0 = build_precoder(c, kind, r.channels.H_hat);
        const auto P1 = build_precoder(c, kind, pair.H_hat);
        for (std::size_t k = 0; k < c.K; ++k) {
            const auto d0 = decompose(r.channels.H, P0.G, r.trace, topo, k, 0.1);
            const auto d1 = decompose(pair.H, P1.G, shifted, topo, k, 0.1);
            CHECK(d1.signal_power() == doctest::Approx(d0.signal_power()).epsilon(1e-10));
            CHECK(d1.interference_power() == doctest::Approx(d0.interference_power()).epsilon(1e-9));
        }
    }
}

TEST_CASE("Monte-Carlo SINR reference values")
{
    SUBCASE("matched filter")
    {
        SystemConfig c = reference();
        c.M = 200;
        c.K = 40;
        c.sigma_w2 = 0.1;
        const auto est = empirical_sinr(c, PrecoderKind::mf);
        CHECK(est.sinr == doctest::Approx(4.5 / 1.1).epsilon(0.03));
        CHECK(est.n_realizations == 2000);
        CHECK(est.std_error > 0.0);
    }
    SUBCASE("zero forcing")
    {
        SystemConfig c = reference();
        c.sigma_w2 = 0.1;
        const auto est = empirical_sinr(c, PrecoderKind::zf);
        CHECK(est.sinr == doctest::Approx(0.09 / (0.0225 * 0.1 + 0.1 / 40.0)).epsilon(0.05));
        CHECK(est.n_rejected == 0);
    }
    SUBCASE("noise dominated")
    {
        SystemConfig c = reference();
        c.sigma_w2 = 1e12;
        c.n_realizations = 100;
        const auto est = empirical_sinr(c, PrecoderKind::rzf);
        CHECK(est.sinr < 1e-11);
        CHECK(est.sinr == doctest::Approx(est.mean_sig_power / (est.mean_int_power + 1e12)));
    }
}

TEST_CASE("optimized RZF agrees with the closed form across SNR")
{
    for (double snr : {-10.0, 0.0, 10.0, 20.0, 30.0}) {
        SystemConfig c = reference();
        c.snr_db = snr;
        const double mc = empirical_sinr(c, PrecoderKind::rzf).sinr;
        const double th = analytics::predict(c, PrecoderKind::rzf).sinr;
        INFO("SNR " << snr << " dB: mc " << mc << " closed form " << th);
        CHECK(testing::rel_err(mc, th) <= 0.05);
    }
}

TEST_CASE("agreement improves with the array size")
{
    for (auto kind : {PrecoderKind::rzf, PrecoderKind::zf, PrecoderKind::mf}) {
        double gap[2];
        int i = 0;
        for (std::size_t M : {50, 200}) {
            SystemConfig c = reference();
            c.M = M;
            c.K = M / 5;
            c.snr_db = 10.0;
            gap[i++] = testing::rel_err(empirical_sinr(c, kind).sinr, analytics::predict(c, kind).sinr);
        }
        INFO(to_string(kind) << ": gap M=50 " << gap[0] << ", M=200 " << gap[1]);
        CHECK(gap[1] <= gap[0]);
    }
}

TEST_CASE("more oscillators never help")
{
    const std::size_t sweep[] = {1, 2, 5, 10, 25, 50};
    for (auto kind : {PrecoderKind::rzf, PrecoderKind::zf}) {
        SinrEstimate prev;
        bool first = true;
        for (std::size_t M_osc : sweep) {
            const auto est = empirical_sinr(reference(M_osc), kind);
            if (!first) {
                INFO(to_string(kind) << " M_osc " << M_osc << ": " << est.sinr << " vs " << prev.sinr);
                CHECK(est.sinr <= prev.sinr + 2.0 * std::hypot(est.std_error, prev.std_error));
            }
            prev = est;
            first = false;
        }
    }
    // MF interference, pooled over UEs, with its own standard error.
    std::vector<double> mean, se;
    for (std::size_t M_osc : sweep) {
        const SystemConfig c = reference(M_osc);
        std::vector<double> inter(c.n_realizations);
        for (std::size_t i = 0; i < c.n_realizations; ++i) {
            const auto r = draw_realization(c, i);
            const auto P = build_precoder(c, PrecoderKind::mf, r.channels.H_hat);
            double acc = 0.0;
            for (std::size_t k = 0; k < c.K; ++k)
                acc += decompose(r.channels.H, P.G, r.trace, c.topology(), k, 0.0).interference_power();
            inter[i] = acc / static_cast<double>(c.K);
        }
        const auto mv = testing::mean_var(inter);
        mean.push_back(mv.mean);
        se.push_back(mv.std_error());
    }
    const auto [lo, hi] = std::minmax_element(mean.begin(), mean.end());
    const double se_max = *std::max_element(se.begin(), se.end());
    INFO("MF interference spread " << *hi - *lo << ", standard error " << se_max);
    CHECK(*hi - *lo < 2.0 * se_max);
}

TEST_CASE("results do not depend on the worker count")
{
    SystemConfig c = reference(5);
    c.n_realizations = 300;
    SinrEstimate base;
    for (unsigned workers : {1u, 4u, 16u}) {
        c.parallelism = workers;
        const auto est = empirical_sinr(c, PrecoderKind::rzf);
        if (workers == 1) {
            base = est;
            continue;
        }
        CHECK(est.sinr == base.sinr);
        CHECK(est.mean_sig_power == base.mean_sig_power);
        CHECK(est.mean_int_power == base.mean_int_power);
        CHECK(est.std_error == base.std_error);
    }
}

TEST_CASE("excess ZF rejections fail loudly")
{
    SystemConfig c = reference();
    c.M = 10;
    c.K = 10;
    c.condition_cap = 2.0;
    c.n_realizations = 100;
    CHECK_THROWS_AS(empirical_sinr(c, PrecoderKind::zf), NumericalError);
    c.alpha_mode = AlphaMode::zf;
    CHECK_THROWS_AS(empirical_sinr(c, PrecoderKind::rzf), ConfigError);
    c.n_realizations = 0;
    CHECK_THROWS_AS(empirical_sinr(c, PrecoderKind::mf), ConfigError);
}
