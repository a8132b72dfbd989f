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

#include "pnmimo/link_sim.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pnmimo/analytics.hpp"
#include "pnmimo/parallel.hpp"

namespace pnmimo::linksim {

CMatrix effective_channel(const CMatrix &H, const phase_noise::PhaseTrace &trace,
                          const phase_noise::OscillatorTopology &topology)
{
    if (H.cols() != static_cast<Eigen::Index>(topology.M()))
        throw std::invalid_argument("channel width does not match the topology");
    if (trace.ue.end.size() != static_cast<std::size_t>(H.rows()) || trace.bs.end.size() != topology.M_osc())
        throw std::invalid_argument("phase trace does not match the channel");
    const auto block = static_cast<Eigen::Index>(topology.block_size());
    CMatrix R(H.rows(), H.cols());
    for (Eigen::Index k = 0; k < H.rows(); ++k)
        for (std::size_t l = 0; l < topology.M_osc(); ++l) {
            const Complex v = std::polar(1.0, trace.ue.end[static_cast<std::size_t>(k)] + trace.bs.end[l]);
            const auto off = static_cast<Eigen::Index>(l) * block;
            R.row(k).segment(off, block) = H.row(k).segment(off, block) * v;
        }
    return R;
}

SignalDecomposition decompose(const CMatrix &H, const CMatrix &G, const phase_noise::PhaseTrace &trace,
                              const phase_noise::OscillatorTopology &topology, std::size_t ue, double noise_var)
{
    if (G.rows() != H.cols() || G.cols() != H.rows())
        throw std::invalid_argument("precoder shape does not match the channel");
    if (ue >= static_cast<std::size_t>(H.rows()))
        throw std::out_of_range("UE index " + std::to_string(ue) + " out of range");
    const CVector theta = phase_noise::theta_matrix(trace, ue, phase_noise::Instant::data, topology);
    const auto k = static_cast<Eigen::Index>(ue);
    const Eigen::RowVectorXcd r = H.row(k).cwiseProduct(theta.transpose());
    const Eigen::RowVectorXcd z = r * G;
    SignalDecomposition d;
    d.zeta_sig = z(k);
    d.zeta_int.resize(z.size() - 1);
    for (Eigen::Index j = 0, o = 0; j < z.size(); ++j)
        if (j != k)
            d.zeta_int(o++) = z(j);
    d.noise_var = noise_var;
    return d;
}

CVector draw_symbols(std::size_t K, SymbolAlphabet alphabet, Rng &rng)
{
    const auto n = static_cast<Eigen::Index>(K);
    if (alphabet == SymbolAlphabet::gaussian)
        return complex_normal_vector(n, rng);
    std::uniform_int_distribution<int> pick(0, 3);
    CVector s(n);
    for (Eigen::Index i = 0; i < n; ++i)
        s(i) = std::polar(1.0, std::numbers::pi / 4.0 + std::numbers::pi / 2.0 * pick(rng));
    return s;
}

CVector draw_noise(std::size_t K, double noise_var, Rng &rng)
{
    if (!(noise_var >= 0.0))
        throw DomainError("noise variance must be non-negative");
    return complex_normal_vector(static_cast<Eigen::Index>(K), rng, noise_var);
}

CVector transmit_symbols(const CMatrix &G, const CVector &symbols, const CMatrix &H,
                         const phase_noise::PhaseTrace &trace, const phase_noise::OscillatorTopology &topology,
                         const CVector &noise)
{
    if (symbols.size() != G.cols() || noise.size() != H.rows() || G.rows() != H.cols())
        throw std::invalid_argument("symbol, noise or precoder shape mismatch");
    return effective_channel(H, trace, topology) * (G * symbols) + noise;
}

Realization draw_realization(const SystemConfig &config, std::size_t index)
{
    Rng rng = make_stream(config.master_seed, {static_cast<std::uint64_t>(index)});
    const auto topology = config.topology();
    CMatrix H = channel::draw_channel(config.M, config.K, rng);
    CMatrix W = complex_normal_matrix(H.rows(), H.cols(), rng);
    auto trace = phase_noise::simulate_trace(topology, config.K, config.phase_params(), rng);
    auto channels = channel::synthesize_estimate(std::move(H), std::move(W), trace, topology, config.quality());
    return {std::move(channels), std::move(trace)};
}

precoding::PrecoderMatrix build_precoder(const SystemConfig &config, PrecoderKind kind, const CMatrix &H_hat)
{
    const auto powers = config.resolved_powers();
    const precoding::SolverOptions opts{config.condition_cap};
    switch (kind) {
    case PrecoderKind::rzf:
        return precoding::build_rzf(H_hat, analytics::resolve_alpha(config), powers, precoding::RzfForm::dual, opts);
    case PrecoderKind::zf:
        return precoding::build_zf(H_hat, powers, opts);
    case PrecoderKind::mf:
        return precoding::build_mf(H_hat, powers);
    }
    throw std::invalid_argument("unknown precoder kind");
}

namespace {

// Neumaier-compensated running sum.
class CompensatedSum
{
public:
    void add(double x)
    {
        const double t = sum_ + x;
        comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct Sample
{
    double sig = 0.0;
    double inter = 0.0;
    bool accepted = false;
};

} // namespace

SinrEstimate empirical_sinr(const SystemConfig &config, PrecoderKind kind, std::optional<std::size_t> ue)
{
    config.validate();
    if (config.n_realizations < 1)
        throw ConfigError("n_realizations", "must be >= 1 for Monte-Carlo estimation");
    if (ue && *ue >= config.K)
        throw std::out_of_range("UE index " + std::to_string(*ue) + " out of range");
    const bool pooled = !ue && config.powers.empty();
    const std::size_t only = ue.value_or(0);
    const auto topology = config.topology();
    // Resolve alpha up front so config errors surface before any work.
    if (kind == PrecoderKind::rzf)
        analytics::resolve_alpha(config);

    std::vector<Sample> samples(config.n_realizations);
    parallel_for(config.n_realizations, config.parallelism, [&](std::size_t i) {
        const Realization r = draw_realization(config, i);
        precoding::PrecoderMatrix P;
        try {
            P = build_precoder(config, kind, r.channels.H_hat);
        } catch (const SingularChannelError &) {
            return; // rejected draw
        }
        const CMatrix Z = effective_channel(r.channels.H, r.trace, topology) * P.G;
        Sample s;
        s.accepted = true;
        const Eigen::Index K = Z.rows();
        const Eigen::Index lo = pooled ? 0 : static_cast<Eigen::Index>(only);
        const Eigen::Index hi = pooled ? K : lo + 1;
        for (Eigen::Index k = lo; k < hi; ++k) {
            s.sig += std::norm(Z(k, k));
            for (Eigen::Index j = 0; j < K; ++j)
                if (j != k)
                    s.inter += std::norm(Z(k, j));
        }
        s.sig /= static_cast<double>(hi - lo);
        s.inter /= static_cast<double>(hi - lo);
        samples[i] = s;
    });

    SinrEstimate est;
    est.noise_var = config.noise_variance();
    CompensatedSum sum_s, sum_i;
    for (const auto &s : samples) {
        if (!s.accepted) {
            ++est.n_rejected;
            continue;
        }
        ++est.n_realizations;
        sum_s.add(s.sig);
        sum_i.add(s.inter);
    }
    const double rate = static_cast<double>(est.n_rejected) / static_cast<double>(config.n_realizations);
    if (est.n_realizations == 0 || rate > max_rejection_rate)
        throw NumericalError("ZF rejected " + std::to_string(est.n_rejected) + " of "
                             + std::to_string(config.n_realizations) + " draws (condition cap exceeded)");

    const double n = static_cast<double>(est.n_realizations);
    est.mean_sig_power = sum_s.value() / n;
    est.mean_int_power = sum_i.value() / n;
    const double D = est.mean_int_power + est.noise_var;
    est.sinr = D > 0.0 ? est.mean_sig_power / D : std::numeric_limits<double>::infinity();

    if (est.n_realizations > 1 && D > 0.0) {
        // Delta method for S / (I + sigma^2).
        CompensatedSum vss, vii, vsi;
        for (const auto &s : samples) {
            if (!s.accepted)
                continue;
            const double ds = s.sig - est.mean_sig_power;
            const double di = s.inter - est.mean_int_power;
            vss.add(ds * ds);
            vii.add(di * di);
            vsi.add(ds * di);
        }
        const double S = est.mean_sig_power;
        const double var_s = vss.value() / (n - 1.0);
        const double var_i = vii.value() / (n - 1.0);
        const double cov = vsi.value() / (n - 1.0);
        const double var = (var_s / (D * D) + S * S * var_i / (D * D * D * D) - 2.0 * S * cov / (D * D * D)) / n;
        est.std_error = std::sqrt(std::max(var, 0.0));
    }
    return est;
}

} // namespace pnmimo::linksim
