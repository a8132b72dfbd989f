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

#include "pnmimo/presets.hpp"

#include <numeric>

namespace pnmimo::sim {

namespace {

// M = 50, q0 = 0.9, 6 degree increments, tau = 10, unit total power.
SystemConfig reference_scenario()
{
    SystemConfig c;
    c.M = 50;
    c.K = 10;
    c.M_osc = 1;
    c.q0 = 0.9;
    c.sigma_deg_bs = 6.0;
    c.sigma_deg_ue = 6.0;
    c.tau = 10;
    c.T_c = 100;
    c.snr_reference = SnrReference::total;
    c.n_realizations = 2000;
    c.master_seed = 1;
    return c;
}

std::vector<double> range(double lo, double hi, double step)
{
    std::vector<double> v;
    for (double x = lo; x <= hi + 1e-9; x += step)
        v.push_back(x);
    return v;
}

SweepSpec snr_sweep(SystemConfig base, std::size_t m_osc, std::vector<double> snrs)
{
    base.M_osc = m_osc;
    const std::string label = m_osc == 0 ? "M" : std::to_string(m_osc);
    return {"M_osc=" + label, SweepAxis::snr, std::move(snrs), base};
}

SweepPlan snr_figure(const std::string &name, PrecoderKind kind)
{
    SweepPlan p;
    p.name = name;
    p.precoders = {kind};
    p.rate = rates::RateDefinition::ergodic;
    for (std::size_t m_osc : {1u, 2u, 5u, 50u})
        p.sweeps.push_back(snr_sweep(reference_scenario(), m_osc, range(-10, 30, 5)));
    return p;
}

SweepPlan alpha_figure()
{
    SweepPlan p;
    p.name = "fig5";
    p.precoders = {PrecoderKind::rzf};
    SystemConfig c = reference_scenario();
    c.M = 200;
    c.K = 40;
    for (std::size_t m_osc : {1u, 0u})
        p.sweeps.push_back(snr_sweep(c, m_osc, range(-10, 30, 5)));
    return p;
}

SweepSpec scenario_sweep(char label)
{
    SystemConfig c = reference_scenario();
    c.M_osc = 5;
    const bool high_snr = label == 'b' || label == 'd';
    const bool wide = label == 'c' || label == 'd';
    c.snr_db = high_snr ? 20.0 : 0.0;
    c.K = wide ? 10 : 25;
    return {std::string("scenario-") + label, SweepAxis::sigma_phi, range(0, 30, 2), c};
}

SweepPlan scenario_plan(const std::string &name, const std::string &labels)
{
    SweepPlan p;
    p.name = name;
    p.precoders = {PrecoderKind::rzf, PrecoderKind::zf, PrecoderKind::mf};
    for (char l : labels)
        p.sweeps.push_back(scenario_sweep(l));
    return p;
}

SweepPlan lte_plan()
{
    SweepPlan p;
    p.name = "lte";
    p.precoders = {PrecoderKind::rzf, PrecoderKind::zf, PrecoderKind::mf};
    for (double snr : {0.0, 10.0, 20.0}) {
        SystemConfig c = reference_scenario();
        c.K = 25;
        c.sigma_deg_bs = c.sigma_deg_ue = 0.06;
        c.tau = 10000;
        c.T_c = 10001;
        c.snr_db = snr;
        p.sweeps.push_back({"snr=" + std::to_string(static_cast<int>(snr)) + "dB", SweepAxis::m_osc,
                            {1, 2, 5, 10, 25, 50}, c});
    }
    return p;
}

SweepPlan beta_plan(const std::string &name, PrecoderKind kind)
{
    SweepPlan p;
    p.name = name;
    p.precoders = {kind};
    p.rate = rates::RateDefinition::min_bound;
    for (double snr : {0.0, 40.0})
        for (std::size_t m_osc : {1u, 0u}) {
            SystemConfig c = reference_scenario();
            c.K = 25;
            c.M = 25;
            c.tau = 25;
            c.snr_db = snr;
            c.M_osc = m_osc;
            const std::string label = (m_osc == 1 ? "CO" : "DO") + std::string(",snr=") + std::to_string(static_cast<int>(snr)) + "dB";
            p.sweeps.push_back({label, SweepAxis::beta, range(1, 10, 1), c});
        }
    return p;
}

std::vector<Preset> build_registry()
{
    using RD = rates::RateDefinition;
    const std::string base = "M=50, q0=0.9, 6 deg, tau=10, unit total power";
    return {
        {"fig2", "optimized RZF vs SNR for M_osc in {1,2,5,50}", "figure 2 scenario (" + base + ", beta=5); ergodic rate",
         RD::ergodic, [] { return snr_figure("fig2", PrecoderKind::rzf); }},
        {"fig3", "ZF vs SNR for M_osc in {1,2,5,50}", "figure 3 scenario (" + base + ", beta=5); ergodic rate", RD::ergodic,
         [] { return snr_figure("fig3", PrecoderKind::zf); }},
        {"fig4", "MF vs SNR for M_osc in {1,2,5,50}", "figure 4 scenario (" + base + ", beta=5); ergodic rate", RD::ergodic,
         [] { return snr_figure("fig4", PrecoderKind::mf); }},
        {"fig5", "optimal RZF alpha vs SNR, CO and DO, M=200, beta=5",
         "figure 5 scenario (alpha_argmax column is the numeric search); ergodic rate", RD::ergodic, alpha_figure},
        {"fig6", "RZF/ZF/MF vs sigma_phi in scenarios a-d, M_osc=5", "figure 6 scenarios; ergodic rate", RD::ergodic,
         [] { return scenario_plan("fig6", "abcd"); }},
        {"scenario-a", "SNR=0 dB, beta=2, sigma_phi sweep", "figure 6 scenario (a); ergodic rate", RD::ergodic,
         [] { return scenario_plan("scenario-a", "a"); }},
        {"scenario-b", "SNR=20 dB, beta=2, sigma_phi sweep", "figure 6 scenario (b); ergodic rate", RD::ergodic,
         [] { return scenario_plan("scenario-b", "b"); }},
        {"scenario-c", "SNR=0 dB, beta=5, sigma_phi sweep", "figure 6 scenario (c); ergodic rate", RD::ergodic,
         [] { return scenario_plan("scenario-c", "c"); }},
        {"scenario-d", "SNR=20 dB, beta=5, sigma_phi sweep", "figure 6 scenario (d); ergodic rate", RD::ergodic,
         [] { return scenario_plan("scenario-d", "d"); }},
        {"lte", "M_osc sweep at 0.06 deg, tau=1e4, beta=2, M=50", "LTE example (tau = T_c = 1e4 symbols, T_c set to 10001); ergodic rate",
         RD::ergodic, lte_plan},
        {"fig7", "optimized RZF, CO vs DO over beta=1..10, tau=K=25", "figure 7 scenario; min(AWGN, Lapidoth) rate",
         RD::min_bound, [] { return beta_plan("fig7", PrecoderKind::rzf); }},
        {"fig8", "MF, CO vs DO over beta=1..10, tau=K=25", "figure 8 scenario; min(AWGN, Lapidoth) rate", RD::min_bound,
         [] { return beta_plan("fig8", PrecoderKind::mf); }},
    };
}

} // namespace

const std::vector<Preset> &list_presets()
{
    static const std::vector<Preset> registry = build_registry();
    return registry;
}

const Preset &find_preset(const std::string &name)
{
    for (const auto &p : list_presets())
        if (p.name == name)
            return p;
    throw ConfigError("preset", "unknown preset '" + name + "'");
}

} // namespace pnmimo::sim
