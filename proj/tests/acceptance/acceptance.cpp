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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion,
// followed by indented detail lines, and exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "pnmimo/analytics.hpp"
#include "pnmimo/lemma_lab.hpp"
#include "pnmimo/link_sim.hpp"
#include "pnmimo/phase_noise.hpp"
#include "pnmimo/precoding.hpp"
#include "pnmimo/presets.hpp"
#include "pnmimo/rates.hpp"
#include "pnmimo/results_io.hpp"
#include "pnmimo/rmt.hpp"
#include "pnmimo/sweep.hpp"
#include "test_util.hpp"

using namespace pnmimo;
using pnmimo::testing::rel_err;

namespace {

struct Outcome
{
    bool pass = true;
    std::vector<std::string> details;

    void note(const std::string &s) { details.push_back(s); }
    void require(bool ok, const std::string &s)
    {
        if (!ok)
            pass = false;
        details.push_back(std::string(ok ? "ok   " : "FAIL ") + s);
    }
};

std::string fmt(const char *f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

SystemConfig preset_base(const std::string &preset, std::size_t sweep)
{
    return sim::find_preset(preset).build().sweeps.at(sweep).base;
}

// 1: closed forms against simulation on the reference scenario.
Outcome analytical_vs_simulation()
{
    Outcome o;
    const auto plan = sim::find_preset("fig2").build();
    for (auto kind : {PrecoderKind::rzf, PrecoderKind::zf, PrecoderKind::mf})
        for (const auto &spec : plan.sweeps)
            for (double snr : {-10.0, 0.0, 10.0, 20.0, 30.0}) {
                const auto c = sim::apply_axis(spec.base, sim::SweepAxis::snr, snr);
                const double th = analytics::predict(c, kind).sinr;
                const auto est = linksim::empirical_sinr(c, kind);
                const double gap = rel_err(est.sinr, th);
                std::string line = fmt("%-3s M_osc=%-2zu SNR=%5.1f dB  closed=%.5g  sim=%.5g (se %.2g)  gap=%.2f%%",
                                       to_string(kind).c_str(), c.oscillators(), snr, th, est.sinr, est.std_error,
                                       100.0 * gap);
                if (kind == PrecoderKind::mf)
                    line += fmt("  [finite-user form %.5g, gap %.2f%%]", analytics::sinr_mf_finite_users(c).sinr,
                                100.0 * rel_err(est.sinr, analytics::sinr_mf_finite_users(c).sinr));
                o.require(gap <= 0.05, line);
            }
    return o;
}

// 2: grid-searched optimal alpha against the closed form.
Outcome optimal_alpha_grid()
{
    Outcome o;
    const auto plan = sim::find_preset("fig5").build();
    for (const auto &spec : plan.sweeps)
        for (double snr : spec.values) {
            const auto c = sim::apply_axis(spec.base, sim::SweepAxis::snr, snr);
            const double formula = analytics::optimal_alpha(c);
            const double step = 1e-3;
            const double hi = std::max(1.0, 3.0 * formula);
            double best_a = step, best = -1.0;
            for (double a = step; a <= hi; a += step) {
                const double v = analytics::sinr_rzf(c, a).sinr;
                if (v > best) {
                    best = v;
                    best_a = a;
                }
            }
            const double exact = rmt::optimal_alpha_finite_users(c.q0, c.e_tpn2(), c.noise_variance(), c.beta(), 1.0,
                                                                 1.0 - 1.0 / static_cast<double>(c.K));
            o.require(std::abs(best_a - formula) <= step,
                      fmt("%s SNR=%5.1f dB  grid argmax=%.4f  formula=%.4f  finite-user form=%.4f",
                          c.oscillators() == 1 ? "CO" : "DO", snr, best_a, formula, exact));
        }
    return o;
}

// 3: LTE oscillator example.
Outcome lte_example()
{
    Outcome o;
    auto rate = [](SystemConfig c, std::size_t M_osc, PrecoderKind kind) {
        c.M_osc = M_osc;
        return rates::rate_ergodic(analytics::predict(c, kind).sinr);
    };
    for (std::size_t idx : {0u, 2u}) {
        const auto c = preset_base("lte", idx);
        for (auto kind : {PrecoderKind::rzf, PrecoderKind::zf, PrecoderKind::mf}) {
            const double drop = rate(c, 1, kind) - rate(c, 50, kind);
            const bool high = c.snr_db > 10.0;
            const bool ok = high && kind != PrecoderKind::mf ? std::abs(drop - 0.3) <= 0.1 : drop <= 0.05;
            o.require(ok, fmt("SNR=%4.1f dB %-3s rate drop M_osc 1 -> 50: %.4f bpcu (target %s)", c.snr_db,
                              to_string(kind).c_str(), drop,
                              high && kind != PrecoderKind::mf ? "0.3 +- 0.1" : "<= 0.05"));
        }
    }
    return o;
}

// 4: precoder orderings over the phase-noise sweep.
Outcome scenario_orderings()
{
    Outcome o;
    const auto plan = sim::find_preset("fig6").build();
    for (const auto &spec : plan.sweeps) {
        int mf_wins = 0, zf_wins = 0;
        for (double s : spec.values) {
            const auto c = sim::apply_axis(spec.base, sim::SweepAxis::sigma_phi, s);
            (analytics::sinr_mf(c).sinr > analytics::sinr_zf(c).sinr ? mf_wins : zf_wins)++;
        }
        const int n = static_cast<int>(spec.values.size());
        const char label = spec.name.back();
        bool ok = false;
        std::string want;
        if (label == 'a') {
            ok = mf_wins == n;
            want = "MF > ZF everywhere";
        } else if (label == 'd') {
            ok = zf_wins == n;
            want = "ZF > MF everywhere";
        } else {
            ok = mf_wins > 0 && zf_wins > 0;
            want = "crossover";
        }
        o.require(ok, fmt("%s: MF ahead at %d of %d points, ZF ahead at %d (%s)", spec.name.c_str(), mf_wins, n,
                          zf_wins, want.c_str()));
    }
    return o;
}

// 5: CO/DO crossover with the min-bound rate.
Outcome co_do_crossover()
{
    Outcome o;
    for (const char *preset : {"fig7", "fig8"}) {
        const auto plan = sim::find_preset(preset).build();
        const auto kind = plan.precoders.front();
        const auto &co = plan.sweeps.at(0);
        const auto &dist = plan.sweeps.at(1);
        std::ostringstream trace;
        std::vector<double> diff;
        for (double beta : co.values) {
            auto rate = [&](const sim::SweepSpec &s) {
                const auto c = sim::apply_axis(s.base, sim::SweepAxis::beta, beta);
                const double sinr = analytics::predict(c, kind).sinr;
                const double s2b = phase_noise::degrees_to_variance(c.sigma_deg_bs);
                const double s2u = phase_noise::degrees_to_variance(c.sigma_deg_ue);
                return rates::rate_report(sinr, c.tau, s2u, s2b, c.oscillators()).rate_min;
            };
            diff.push_back(rate(co) - rate(dist));
            trace << fmt(" %g:%+.3f", beta, diff.back());
        }
        const bool ok = diff.front() > 0.0 && diff.back() < 0.0;
        o.require(ok, fmt("%s (%s, SNR 0 dB) CO-DO rate by beta:%s", preset, to_string(kind).c_str(),
                          trace.str().c_str()));
    }
    return o;
}

// 6: second moment of T_PN against Monte Carlo.
Outcome tpn_second_moment()
{
    Outcome o;
    const std::size_t draws = 1000000;
    for (std::size_t M_osc : {2, 5, 10, 50})
        for (auto [tau, deg] : {std::pair<std::size_t, double>{10, 6.0}, {25, 6.0}, {100, 2.0}}) {
            const double s2 = phase_noise::degrees_to_variance(deg);
            Rng rng = make_stream(606, {M_osc, tau});
            std::vector<double> v(draws);
            for (auto &x : v) {
                const auto w = phase_noise::simulate_wiener(M_osc, tau, s2, rng);
                Complex t = 0.0;
                for (std::size_t l = 0; l < M_osc; ++l)
                    t += std::polar(1.0, w.end[l] - w.start[l]);
                x = std::norm(t / static_cast<double>(M_osc));
            }
            const auto mv = testing::mean_var(v);
            const double exact = phase_noise::t_pn_second_moment(M_osc, tau, s2);
            const double z = (mv.mean - exact) / mv.std_error();
            o.require(std::abs(z) <= 3.0, fmt("M_osc=%-2zu tau=%-3zu sigma=%g deg  formula=%.6f  mc=%.6f  z=%+.2f",
                                              M_osc, tau, deg, exact, mv.mean, z));
        }
    return o;
}

// 7: Stieltjes concentration.
Outcome stieltjes_concentration()
{
    Outcome o;
    const std::pair<double, double> pairs[] = {{0.1, 1}, {1, 1}, {0.1, 2}, {1, 2}, {10, 2}, {0.5, 4}};
    for (auto [alpha, beta] : pairs) {
        Rng rng = make_stream(707, {static_cast<std::uint64_t>(alpha * 1000), static_cast<std::uint64_t>(beta)});
        const std::size_t K = static_cast<std::size_t>(1024 / beta);
        const double emp = lemmas::empirical_resolvent_trace(1024, K, alpha, rng);
        const double m = rmt::stieltjes_mp(alpha, beta);
        o.require(rel_err(emp, m) <= 0.02,
                  fmt("alpha=%-4g beta=%g  M=1024  trace=%.6f  m=%.6f  rel=%.2e", alpha, beta, emp, m, rel_err(emp, m)));

        lemmas::SuiteOptions opts;
        opts.seed = 708;
        opts.trials = 16;
        const std::vector<std::size_t> Ms{512, 1024};
        const auto rec = lemmas::check_stieltjes_concentration(Ms, alpha, beta, opts);
        o.require(rec.errors[1] < rec.errors[0],
                  fmt("alpha=%-4g beta=%g  rms error M=512 %.3e -> M=1024 %.3e", alpha, beta, rec.errors[0],
                      rec.errors[1]));
    }
    lemmas::SuiteOptions opts;
    opts.seed = 709;
    opts.trials = 40;
    const std::vector<std::size_t> Ms{512, 1024, 2048};
    const auto rec = lemmas::check_stieltjes_concentration(Ms, 0.5, 4.0, opts);
    for (std::size_t i = 1; i < Ms.size(); ++i) {
        const double f = rec.errors[i - 1] / rec.errors[i];
        o.require(f >= 1.5 && f <= 3.0, fmt("alpha=0.5 beta=4  rms error M=%zu -> %zu shrinks by %.2f (want 1.5..3)",
                                            Ms[i - 1], Ms[i], f));
    }
    return o;
}

// 8: lemma lab.
Outcome lemma_suite()
{
    Outcome o;
    double inv = 0.0, res = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        Rng r1 = make_stream(801, {s});
        inv = std::max(inv, lemmas::check_matrix_inversion_identity(64, r1).deviation);
        Rng r2 = make_stream(802, {s});
        res = std::max(res, lemmas::check_resolvent_identity(64, r2).deviation);
    }
    o.require(inv <= 1e-10, fmt("matrix inversion identity, worst of 20 draws: %.2e", inv));
    o.require(res <= 1e-10, fmt("resolvent identity, worst of 20 draws: %.2e", res));

    auto slope = [&](const lemmas::ConvergenceRecord &r, double lo, double hi) {
        bool decreasing = true;
        for (std::size_t i = 1; i < r.errors.size(); ++i)
            decreasing = decreasing && r.errors[i] < r.errors[i - 1];
        std::ostringstream e;
        for (double v : r.errors)
            e << fmt(" %.3g", v);
        o.require(r.slope >= lo && r.slope <= hi && decreasing,
                  fmt("%-22s slope %+.3f in [%g, %g], median errors:%s", r.name.c_str(), r.slope, lo, hi,
                      e.str().c_str()));
    };
    lemmas::SuiteOptions opts;
    opts.trials = 200;
    std::vector<std::size_t> tr_sizes;
    for (std::size_t M = 64; M <= 4096; M *= 2)
        tr_sizes.push_back(M);
    for (const auto &r : lemmas::check_trace_lemma(tr_sizes, opts))
        slope(r, -0.65, -0.35);

    opts.trials = 100;
    const std::vector<std::size_t> r1_sizes{32, 64, 128, 256};
    const auto rank1 = lemmas::check_rank1_perturbation(r1_sizes, opts);
    slope(rank1.record, -1.25, -0.75);
    o.require(rank1.bound_violations == 0,
              fmt("rank-1 bound violations: %zu of %zu draws", rank1.bound_violations, rank1.draws));

    const std::vector<std::size_t> fp_sizes{64, 128, 256, 512, 1024};
    slope(lemmas::check_free_probability_traces(fp_sizes, opts), -1.25, -0.75);

    for (const auto &r : lemmas::lemma9_convergence(fp_sizes, lemmas::Lemma9Options{}, opts))
        slope(r, -0.65, -0.35);

    lemmas::Lemma9Options block;
    block.antennas_per_oscillator = 4;
    const auto d = lemmas::check_lemma9_quadratic_forms(1024, block, opts);
    o.require(d[0] <= 0.05 && d[1] <= 0.05 && d[2] <= 0.05,
              fmt("extended quadratic forms at M=1024, q0=0.9, 4-antenna phase blocks: %.4f %.4f %.4f", d[0], d[1],
                  d[2]));
    return o;
}

// 9: precoder constraints on every draw.
Outcome precoder_constraints()
{
    Outcome o;
    SystemConfig c = preset_base("fig2", 2);
    c.snr_db = 10.0;
    double worst_trace = 0.0, worst_null = 0.0;
    std::size_t draws = 0;
    for (std::size_t i = 0; i < 2000; ++i) {
        const auto r = linksim::draw_realization(c, i);
        for (auto kind : {PrecoderKind::rzf, PrecoderKind::zf, PrecoderKind::mf}) {
            const auto P = linksim::build_precoder(c, kind, r.channels.H_hat);
            worst_trace = std::max(worst_trace, std::abs(precoding::power_trace(P.G) - 1.0));
            if (kind == PrecoderKind::zf) {
                CMatrix E = r.channels.H_hat * P.G;
                const double diag = E.diagonal().cwiseAbs().minCoeff();
                E.diagonal().setZero();
                worst_null = std::max(worst_null, E.cwiseAbs().maxCoeff() / diag);
            }
            ++draws;
        }
    }
    o.require(worst_trace <= 1e-10, fmt("unit power, worst |tr(G^H G) - 1| over %zu precoders: %.2e", draws,
                                        worst_trace));
    o.require(worst_null <= 1e-9, fmt("ZF nulling, worst off-diagonal / diagonal: %.2e", worst_null));
    return o;
}

// 10: byte-identical output across reruns and worker counts.
Outcome determinism()
{
    Outcome o;
    auto csv = [](unsigned workers) {
        auto plan = sim::find_preset("fig2").build();
        sim::apply_overrides(plan, {std::nullopt, 300, workers});
        std::ostringstream os;
        sim::write_csv(os, sim::run_plan(plan));
        return os.str();
    };
    const std::string a = csv(1);
    o.require(csv(1) == a, "rerun with 1 worker reproduces the CSV bytes");
    o.require(csv(4) == a, "4 workers reproduce the CSV bytes");
    o.require(csv(16) == a, "16 workers reproduce the CSV bytes");
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"analytical and simulated SINR agree within 5% (reference scenario)", analytical_vs_simulation},
        {"grid-searched optimal alpha matches the closed form", optimal_alpha_grid},
        {"LTE oscillator example rate drops", lte_example},
        {"scenario orderings of MF and ZF", scenario_orderings},
        {"CO/DO crossover with min-bound rates", co_do_crossover},
        {"E|T_PN|^2 formula within 3 standard errors", tpn_second_moment},
        {"Stieltjes concentration", stieltjes_concentration},
        {"lemma suite", lemma_suite},
        {"precoder power and nulling constraints", precoder_constraints},
        {"deterministic output", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception &e) {
            out.pass = false;
            out.note(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %zu: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    secs);
        for (const auto &d : out.details)
            std::printf("    %s\n", d.c_str());
        std::fflush(stdout);
        failed += out.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
