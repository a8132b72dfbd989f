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

#include "pnmimo/sweep.hpp"

#include <chrono>
#include <cmath>

#include "pnmimo/analytics.hpp"
#include "pnmimo/link_sim.hpp"
#include "pnmimo/phase_noise.hpp"
#include "pnmimo/results_io.hpp"

namespace pnmimo::sim {

std::string to_string(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::snr:
        return "snr";
    case SweepAxis::m_osc:
        return "m_osc";
    case SweepAxis::beta:
        return "beta";
    case SweepAxis::sigma_phi:
        return "sigma_phi";
    case SweepAxis::alpha:
        return "alpha";
    }
    return "unknown";
}

SweepAxis parse_sweep_axis(const std::string &s)
{
    for (auto a : {SweepAxis::snr, SweepAxis::m_osc, SweepAxis::beta, SweepAxis::sigma_phi, SweepAxis::alpha})
        if (to_string(a) == s)
            return a;
    throw ConfigError("axis", "expected snr, m_osc, beta, sigma_phi or alpha, got '" + s + "'");
}

SystemConfig apply_axis(SystemConfig c, SweepAxis axis, double v)
{
    if (!std::isfinite(v))
        throw ConfigError("values", "sweep values must be finite");
    switch (axis) {
    case SweepAxis::snr:
        c.snr_db = v;
        c.sigma_w2.reset();
        break;
    case SweepAxis::m_osc:
        if (v < 0.0 || v != std::floor(v))
            throw ConfigError("M_osc", "sweep values must be non-negative integers");
        c.M_osc = static_cast<std::size_t>(v);
        break;
    case SweepAxis::beta:
        if (!(v >= 1.0))
            throw ConfigError("beta", "sweep values must be >= 1");
        c.M = static_cast<std::size_t>(std::llround(v * static_cast<double>(c.K)));
        break;
    case SweepAxis::sigma_phi:
        c.sigma_deg_bs = c.sigma_deg_ue = v;
        break;
    case SweepAxis::alpha:
        c.alpha_mode = AlphaMode::fixed;
        c.alpha = v;
        break;
    }
    c.validate();
    return c;
}

void SweepPlan::validate() const
{
    if (precoders.empty())
        throw ConfigError("precoders", "at least one precoder is required");
    if (sweeps.empty())
        throw ConfigError("sweep", "at least one [sweep] section is required");
    for (const auto &s : sweeps) {
        if (s.values.empty())
            throw ConfigError(s.name + ": values", "sweep has no values");
        for (double v : s.values) {
            const auto c = apply_axis(s.base, s.axis, v);
            for (auto p : precoders)
                if (p == PrecoderKind::rzf && (c.alpha_mode == AlphaMode::zf || c.alpha_mode == AlphaMode::mf))
                    throw ConfigError(s.name + ": alpha_mode", "rzf needs alpha_mode optimal or fixed");
        }
    }
}

void apply_overrides(SweepPlan &plan, const RunOverrides &o)
{
    for (auto &s : plan.sweeps) {
        if (o.seed)
            s.base.master_seed = *o.seed;
        if (o.realizations)
            s.base.n_realizations = *o.realizations;
        if (o.parallelism)
            s.base.parallelism = *o.parallelism;
    }
    plan.validate();
}

namespace {

std::string powers_field(const SystemConfig &c)
{
    if (c.powers.empty())
        return "equal";
    std::string s;
    for (std::size_t i = 0; i < c.powers.size(); ++i) {
        if (i)
            s += ';';
        s += format_double(c.powers[i]);
    }
    return s;
}

SweepResultRow evaluate(const SystemConfig &c, PrecoderKind kind, rates::RateDefinition rate)
{
    SweepResultRow r;
    r.precoder = to_string(kind);
    r.M = static_cast<std::int64_t>(c.M);
    r.K = static_cast<std::int64_t>(c.K);
    r.M_osc = static_cast<std::int64_t>(c.oscillators());
    r.beta = c.beta();
    r.q0 = c.q0;
    r.sigma_deg_bs = c.sigma_deg_bs;
    r.sigma_deg_ue = c.sigma_deg_ue;
    r.tau = static_cast<std::int64_t>(c.tau);
    r.T_c = static_cast<std::int64_t>(c.T_c);
    r.snr_db = c.snr_db;
    r.snr_reference = c.sigma_w2 ? "explicit" : to_string(c.snr_reference);
    r.sigma_w2 = c.noise_variance();
    r.powers = powers_field(c);
    r.alpha_mode = to_string(c.alpha_mode);
    r.e_tpn2 = c.e_tpn2();
    r.q_eff = c.q0 * r.e_tpn2;
    r.master_seed = c.master_seed;
    r.rate_definition = to_string(rate);

    if (kind == PrecoderKind::rzf) {
        r.alpha = analytics::resolve_alpha(c);
        if (c.q0 > 0.0)
            r.alpha_argmax = analytics::numeric_argmax_alpha(c);
    }
    try {
        r.analytical_sinr = analytics::predict(c, kind).sinr;
    } catch (const DomainError &) {
        // e.g. ZF at beta = 1 or optimal alpha without CSI
    }

    const double s2_bs = phase_noise::degrees_to_variance(c.sigma_deg_bs);
    const double s2_ue = phase_noise::degrees_to_variance(c.sigma_deg_ue);
    if (r.analytical_sinr && std::isfinite(*r.analytical_sinr)) {
        const auto rep = rates::rate_report(*r.analytical_sinr, c.tau, s2_ue, s2_bs, c.oscillators());
        r.rate_awgn = rep.rate_awgn_bound;
        r.rate_lapidoth = rep.rate_lapidoth;
        r.rate_min = rep.rate_min;
        r.rate_ergodic = rep.rate_ergodic;
        r.rate_reported = rates::reported_rate(rep, rate);
    }
    if (c.n_realizations > 0) {
        const auto est = linksim::empirical_sinr(c, kind);
        r.empirical_sinr = est.sinr;
        r.std_error = est.std_error;
        r.n_realizations = static_cast<std::int64_t>(est.n_realizations);
        r.n_rejected = static_cast<std::int64_t>(est.n_rejected);
        if (std::isfinite(est.sinr))
            r.empirical_rate_reported =
                rates::reported_rate(rates::rate_report(est.sinr, c.tau, s2_ue, s2_bs, c.oscillators()), rate);
    }
    return r;
}

} // namespace

ResultTable run_sweep(const SystemConfig &config, SweepAxis axis, std::span<const double> values,
                      std::span<const PrecoderKind> precoders, rates::RateDefinition rate, const std::string &name,
                      const RunOptions &options)
{
    ResultTable t;
    for (double v : values) {
        const SystemConfig c = apply_axis(config, axis, v);
        for (PrecoderKind kind : precoders) {
            const auto start = std::chrono::steady_clock::now();
            SweepResultRow row = evaluate(c, kind, rate);
            row.sweep = name;
            row.axis = to_string(axis);
            row.axis_value = v;
            if (options.timing)
                row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

ResultTable run_plan(const SweepPlan &plan, const RunOptions &options)
{
    plan.validate();
    ResultTable all;
    for (const auto &s : plan.sweeps) {
        auto t = run_sweep(s.base, s.axis, s.values, plan.precoders, plan.rate, s.name, options);
        all.rows.insert(all.rows.end(), t.rows.begin(), t.rows.end());
    }
    return all;
}

} // namespace pnmimo::sim
