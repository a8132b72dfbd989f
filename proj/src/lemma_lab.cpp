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

#include "pnmimo/lemma_lab.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "pnmimo/parallel.hpp"
#include "pnmimo/rmt.hpp"

namespace pnmimo::lemmas {

namespace {

enum LemmaId : std::uint64_t
{
    id_trace = 4,
    id_rank1 = 6,
    id_free = 8,
    id_lemma9 = 9,
    id_stieltjes = 1
};

// Per-size fixed matrices use this trial key.
constexpr std::uint64_t fixed_key = 0xFFFFFFFFull;

double median(std::vector<double> v)
{
    if (v.empty())
        throw std::invalid_argument("median of empty sample");
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    if (v.size() % 2 == 1)
        return *mid;
    const double hi = *mid;
    return 0.5 * (hi + *std::max_element(v.begin(), mid));
}

Rng trial_stream(const SuiteOptions &opts, LemmaId id, std::size_t M, std::uint64_t trial)
{
    return make_stream(opts.seed, {static_cast<std::uint64_t>(id), static_cast<std::uint64_t>(M), trial});
}

void check_sizes(std::span<const std::size_t> M_list)
{
    if (M_list.size() < 2)
        throw std::invalid_argument("need at least two sizes for a convergence fit");
    for (std::size_t i = 0; i < M_list.size(); ++i) {
        if (M_list[i] < 2)
            throw std::invalid_argument("sizes must be >= 2");
        if (i > 0 && M_list[i] <= M_list[i - 1])
            throw std::invalid_argument("sizes must be strictly increasing");
    }
}

CMatrix random_hermitian_positive(std::size_t M, Rng &rng, double shift)
{
    const auto n = static_cast<Eigen::Index>(M);
    const CMatrix X = complex_normal_matrix(n, n, rng);
    CMatrix U = X * X.adjoint() / static_cast<double>(M);
    U.diagonal().array() += shift;
    return U;
}

double max_abs(const CMatrix &A)
{
    return A.cwiseAbs().maxCoeff();
}

// Kac-Murdock-Szego matrix rho^|i-j| applied in O(M).
CVector kms_apply(const CVector &u, double rho)
{
    const Eigen::Index n = u.size();
    CVector f(n), b(n);
    f(0) = u(0);
    for (Eigen::Index i = 1; i < n; ++i)
        f(i) = u(i) + rho * f(i - 1);
    b(n - 1) = u(n - 1);
    for (Eigen::Index i = n - 2; i >= 0; --i)
        b(i) = u(i) + rho * b(i + 1);
    return f + b - u;
}

constexpr double kms_rho = 0.5;

RVector random_scaling(std::size_t M, Rng &rng)
{
    std::uniform_real_distribution<double> d(0.5, 2.0);
    RVector s(static_cast<Eigen::Index>(M));
    for (auto &v : s)
        v = d(rng);
    return s;
}

CMatrix dense_kms_spd(const RVector &scale)
{
    const Eigen::Index n = scale.size();
    CMatrix A(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            A(i, j) = std::sqrt(scale(i) * scale(j)) * std::pow(kms_rho, static_cast<double>(std::abs(i - j)));
    return A;
}

// Factorization of C = H H^H + M alpha I for the Woodbury form of (H^H H / M + alpha I)^-1.
struct WishartResolvent
{
    CMatrix H;
    double alpha;
    Eigen::LLT<CMatrix> llt;

    WishartResolvent(CMatrix H_, double alpha_) : H(std::move(H_)), alpha(alpha_)
    {
        CMatrix C = H * H.adjoint();
        C.diagonal().array() += static_cast<double>(H.cols()) * alpha;
        llt.compute(C);
        if (llt.info() != Eigen::Success)
            throw NumericalError("Cholesky of the regularized Gram matrix failed");
    }

    std::size_t M() const { return static_cast<std::size_t>(H.cols()); }
    std::size_t K() const { return static_cast<std::size_t>(H.rows()); }

    CVector apply_inverse(const CVector &v) const
    {
        return (v - H.adjoint() * llt.solve(H * v)) / alpha;
    }

    // tr(C^-1) via the inverse Cholesky factor.
    double trace_c_inverse() const
    {
        const auto k = H.rows();
        const CMatrix Linv = llt.matrixL().solve(CMatrix::Identity(k, k));
        return Linv.squaredNorm();
    }

    // (1/M) tr (H^H H / M + alpha I)^-1
    double normalized_trace() const
    {
        const double Md = static_cast<double>(M());
        return ((Md - static_cast<double>(K())) / alpha + Md * trace_c_inverse()) / Md;
    }

    RVector diagonal() const
    {
        const CMatrix Y = llt.matrixL().solve(H);
        RVector d(H.cols());
        for (Eigen::Index m = 0; m < H.cols(); ++m)
            d(m) = (1.0 - Y.col(m).squaredNorm()) / alpha;
        return d;
    }
};

WishartResolvent draw_resolvent(std::size_t M, std::size_t K, double alpha, Rng &rng)
{
    return {complex_normal_matrix(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(M), rng), alpha};
}

std::size_t users_for(std::size_t M, double beta)
{
    const auto K = static_cast<std::size_t>(std::llround(static_cast<double>(M) / beta));
    return std::clamp<std::size_t>(K, 1, M);
}

} // namespace

void ConvergenceRecord::validate() const
{
    if (M_values.size() != errors.size() || M_values.empty())
        throw std::invalid_argument("convergence record sizes and errors disagree");
    for (std::size_t i = 0; i < M_values.size(); ++i) {
        if (!(errors[i] > 0.0))
            throw std::invalid_argument("convergence errors must be positive");
        if (i > 0 && M_values[i] <= M_values[i - 1])
            throw std::invalid_argument("sizes must be strictly increasing");
    }
}

double fit_loglog_slope(std::span<const std::size_t> M_values, std::span<const double> errors)
{
    if (M_values.size() != errors.size() || M_values.size() < 2)
        throw std::invalid_argument("slope fit needs at least two matching points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(M_values.size());
    for (std::size_t i = 0; i < M_values.size(); ++i) {
        if (!(errors[i] > 0.0))
            throw std::invalid_argument("slope fit needs positive errors");
        const double x = std::log(static_cast<double>(M_values[i]));
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceRecord make_record(std::string name, std::vector<std::size_t> M_values, std::vector<double> errors)
{
    ConvergenceRecord r{std::move(name), std::move(M_values), std::move(errors), 0.0};
    r.validate();
    r.slope = fit_loglog_slope(r.M_values, r.errors);
    return r;
}

std::optional<double> inversion_identity_deviation(const CMatrix &U, const CVector &h, Complex q)
{
    const Eigen::PartialPivLU<CMatrix> lu_u(U.adjoint());
    const CVector Uih = lu_u.solve(h); // U^-H h, so (U^-H h)^H = h^H U^-1
    const Complex c = h.dot(U.partialPivLu().solve(h));
    const Complex denom = 1.0 + q * c;
    if (std::abs(denom) < 1e-8 * (1.0 + std::abs(q * c)))
        return std::nullopt;
    const CMatrix P = U + q * h * h.adjoint();
    const CVector lhs = P.adjoint().partialPivLu().solve(h);
    const CVector rhs = Uih / std::conj(denom);
    const double scale = std::max(max_abs(rhs), 1e-300);
    return (lhs - rhs).cwiseAbs().maxCoeff() / scale;
}

IdentityCheck check_matrix_inversion_identity(std::size_t M, Rng &rng, std::optional<Complex> q)
{
    std::uniform_real_distribution<double> qd(0.1, 2.0);
    IdentityCheck out;
    for (int attempt = 0; attempt < 100; ++attempt) {
        const CMatrix U = random_hermitian_positive(M, rng, 0.1);
        const CVector h = complex_normal_vector(static_cast<Eigen::Index>(M), rng);
        const Complex qq = q.value_or(Complex(qd(rng), 0.0));
        if (auto d = inversion_identity_deviation(U, h, qq)) {
            out.deviation = *d;
            return out;
        }
        ++out.resampled;
    }
    throw NumericalError("matrix inversion identity: no admissible draw after 100 attempts");
}

std::optional<double> resolvent_identity_deviation(const CMatrix &U, const CMatrix &V, double condition_cap)
{
    auto cond = [](const CMatrix &X) {
        const Eigen::JacobiSVD<CMatrix> svd(X);
        const auto &s = svd.singularValues();
        return s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
    };
    if (cond(U) > condition_cap || cond(V) > condition_cap)
        return std::nullopt;
    const CMatrix Ui = U.partialPivLu().inverse();
    const CMatrix Vi = V.partialPivLu().inverse();
    const CMatrix err = Ui - Vi + Ui * (U - V) * Vi;
    return max_abs(err) / std::max({max_abs(Ui), max_abs(Vi), 1e-300});
}

IdentityCheck check_resolvent_identity(std::size_t M, Rng &rng)
{
    IdentityCheck out;
    for (int attempt = 0; attempt < 100; ++attempt) {
        const CMatrix U = random_hermitian_positive(M, rng, 0.1);
        const CMatrix V = random_hermitian_positive(M, rng, 0.1);
        if (auto d = resolvent_identity_deviation(U, V)) {
            out.deviation = *d;
            return out;
        }
        ++out.resampled;
    }
    throw NumericalError("resolvent identity: no admissible draw after 100 attempts");
}

TraceLemmaSample trace_lemma_sample(const CMatrix &A, const CVector &x, const CVector &w)
{
    const double M = static_cast<double>(A.rows());
    return {std::abs(x.dot(A * x) - A.trace() / M), std::abs(x.dot(A * w))};
}

std::array<ConvergenceRecord, 2> check_trace_lemma(std::span<const std::size_t> M_list, const SuiteOptions &opts)
{
    check_sizes(M_list);
    std::vector<double> quad, cross;
    for (std::size_t M : M_list) {
        Rng fixed = trial_stream(opts, id_trace, M, fixed_key);
        const RVector scale = random_scaling(M, fixed);
        const RVector root = scale.cwiseSqrt();
        const double tr_over_M = scale.mean();
        const double var = 1.0 / static_cast<double>(M);
        std::vector<double> eq(opts.trials), ec(opts.trials);
        parallel_for(opts.trials, opts.parallelism, [&](std::size_t t) {
            Rng rng = trial_stream(opts, id_trace, M, t);
            const auto n = static_cast<Eigen::Index>(M);
            const CVector x = complex_normal_vector(n, rng, var).cwiseProduct(root.cast<Complex>());
            const CVector w = complex_normal_vector(n, rng, var).cwiseProduct(root.cast<Complex>());
            const CVector Tx = kms_apply(x, kms_rho);
            eq[t] = std::abs(x.dot(Tx) - tr_over_M);
            ec[t] = std::abs(w.dot(Tx)); // conj of x^H A w, same modulus
        });
        quad.push_back(median(eq));
        cross.push_back(median(ec));
    }
    const std::vector<std::size_t> Ms(M_list.begin(), M_list.end());
    return {make_record("trace_quadratic", Ms, quad), make_record("trace_cross", Ms, cross)};
}

Rank1Result check_rank1_perturbation(std::span<const std::size_t> M_list, const SuiteOptions &opts, double q,
                                     double zeta)
{
    check_sizes(M_list);
    if (!(zeta > 0.0) || !(q >= 0.0))
        throw DomainError("rank-1 check needs zeta > 0 and q >= 0");
    Rank1Result out;
    std::vector<double> med;
    for (std::size_t M : M_list) {
        Rng fixed = trial_stream(opts, id_rank1, M, fixed_key);
        const auto n = static_cast<Eigen::Index>(M);
        const CMatrix X = complex_normal_matrix(n / 2 > 0 ? n / 2 : 1, n, fixed);
        CMatrix B = X.adjoint() * X / static_cast<double>(M);
        B.diagonal().array() += zeta;
        const CMatrix A = dense_kms_spd(random_scaling(M, fixed));
        const double normA = Eigen::SelfAdjointEigenSolver<CMatrix>(A, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
        const Eigen::LLT<CMatrix> llt_b(B);
        const Complex base = llt_b.solve(A).trace();
        const double bound = normA / (zeta * static_cast<double>(M));

        std::vector<double> gaps(opts.trials);
        parallel_for(opts.trials, opts.parallelism, [&](std::size_t t) {
            Rng rng = trial_stream(opts, id_rank1, M, t);
            const CVector h = complex_normal_vector(n, rng);
            const CMatrix C = B + q * h * h.adjoint();
            const Eigen::LLT<CMatrix> llt_c(C);
            gaps[t] = std::abs(base - llt_c.solve(A).trace()) / static_cast<double>(M);
        });
        for (double g : gaps)
            if (g > bound * (1.0 + 1e-9))
                ++out.bound_violations;
        out.draws += gaps.size();
        med.push_back(median(gaps));
    }
    if (q == 0.0) {
        out.record = ConvergenceRecord{"rank1_trace", {M_list.begin(), M_list.end()}, med, 0.0};
        return out;
    }
    out.record = make_record("rank1_trace", {M_list.begin(), M_list.end()}, med);
    return out;
}

double free_trace_gap(const CVector &u_diag, const CVector &v_diag)
{
    if (u_diag.size() != v_diag.size() || u_diag.size() == 0)
        throw std::invalid_argument("diagonals must have equal nonzero length");
    const double M = static_cast<double>(u_diag.size());
    const Complex joint = u_diag.cwiseProduct(v_diag).sum() / M;
    return std::abs(joint - (u_diag.sum() / M) * (v_diag.sum() / M));
}

ConvergenceRecord check_free_probability_traces(std::span<const std::size_t> M_list, const SuiteOptions &opts,
                                                std::size_t antennas_per_oscillator)
{
    check_sizes(M_list);
    if (antennas_per_oscillator < 1)
        throw std::invalid_argument("antennas_per_oscillator must be >= 1");
    std::vector<double> med;
    for (std::size_t M : M_list) {
        if (M % antennas_per_oscillator != 0)
            throw std::invalid_argument("block size must divide every M");
        Rng fixed = trial_stream(opts, id_free, M, fixed_key);
        const WishartResolvent R = draw_resolvent(M, std::max<std::size_t>(M / 2, 1), 0.5, fixed);
        const CVector u = R.diagonal().cast<Complex>();
        std::vector<double> gaps(opts.trials);
        parallel_for(opts.trials, opts.parallelism, [&](std::size_t t) {
            Rng rng = trial_stream(opts, id_free, M, t);
            std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
            CVector v(static_cast<Eigen::Index>(M));
            for (std::size_t l = 0; l < M / antennas_per_oscillator; ++l)
                v.segment(static_cast<Eigen::Index>(l * antennas_per_oscillator),
                          static_cast<Eigen::Index>(antennas_per_oscillator))
                    .setConstant(std::polar(1.0, phase(rng)));
            gaps[t] = free_trace_gap(u, v);
        });
        med.push_back(median(gaps));
    }
    return make_record("free_probability_trace", {M_list.begin(), M_list.end()}, med);
}

std::array<double, 3> check_lemma9_quadratic_forms(std::size_t M, const Lemma9Options &lemma,
                                                   const SuiteOptions &opts)
{
    if (!(lemma.q0 >= 0.0 && lemma.q0 <= 1.0))
        throw DomainError("q0 must lie in [0, 1]");
    if (M % lemma.antennas_per_oscillator != 0)
        throw std::invalid_argument("block size must divide M");
    const double q0 = lemma.q0;
    const double q1 = 1.0 - q0;
    const double q2 = std::sqrt(q0 * q1);
    const auto n = static_cast<Eigen::Index>(M);
    const double Md = static_cast<double>(M);

    Rng fixed = trial_stream(opts, id_lemma9, M, fixed_key);
    const WishartResolvent R = draw_resolvent(M, users_for(M, lemma.beta), lemma.alpha, fixed);
    const double t1 = R.normalized_trace();
    const double t2 = 1.0 - lemma.alpha * t1; // U A^-1 = I - alpha A^-1 for U = H^H H / M
    auto apply_U = [&](const CVector &v) -> CVector { return R.H.adjoint() * (R.H * v) / Md; };

    std::vector<double> d1(opts.trials), d2(opts.trials), d3(opts.trials);
    parallel_for(opts.trials, opts.parallelism, [&](std::size_t t) {
        Rng rng = trial_stream(opts, id_lemma9, M, t);
        const CVector x = complex_normal_vector(n, rng, 1.0 / Md);
        const CVector w = complex_normal_vector(n, rng, 1.0 / Md);
        CVector N = CVector::Ones(n);
        if (!lemma.identity_N) {
            std::normal_distribution<double> inc(0.0, std::sqrt(lemma.sigma2 * static_cast<double>(lemma.tau)));
            const auto block = static_cast<Eigen::Index>(lemma.antennas_per_oscillator);
            for (Eigen::Index l = 0; l < n / block; ++l)
                N.segment(l * block, block).setConstant(std::polar(1.0, inc(rng)));
        }
        const Complex trN = N.mean();

        const CVector y = std::sqrt(q0) * x + std::sqrt(q1) * w;
        const CVector Ay = R.apply_inverse(y);
        const Complex c = y.dot(Ay);
        auto apply_V = [&](const CVector &v) -> CVector {
            return R.apply_inverse(v) - Ay * (y.dot(R.apply_inverse(v)) / (1.0 + c));
        };

        const CVector Nhx = N.conjugate().cwiseProduct(x);
        const CVector UVNhx = apply_U(apply_V(Nhx));
        const Complex f1 = Nhx.dot(UVNhx);
        const Complex f2 = x.dot(UVNhx);
        const Complex f3 = w.dot(UVNhx);

        const double r1 = t2 - q0 * t1 * t2 / (1.0 + t1) * std::norm(trN);
        const Complex r2 = t2 * (1.0 + q1 * t1) / (1.0 + t1) * std::conj(trN);
        const Complex r3 = -q2 * t1 * t2 / (1.0 + t1) * std::conj(trN);
        d1[t] = std::abs(f1 - r1);
        d2[t] = std::abs(f2 - r2);
        d3[t] = std::abs(f3 - r3);
    });
    return {median(d1), median(d2), median(d3)};
}

std::array<ConvergenceRecord, 3> lemma9_convergence(std::span<const std::size_t> M_list, const Lemma9Options &lemma,
                                                    const SuiteOptions &opts)
{
    check_sizes(M_list);
    std::array<std::vector<double>, 3> err;
    for (std::size_t M : M_list) {
        const auto d = check_lemma9_quadratic_forms(M, lemma, opts);
        for (int i = 0; i < 3; ++i)
            err[static_cast<std::size_t>(i)].push_back(d[static_cast<std::size_t>(i)]);
    }
    const std::vector<std::size_t> Ms(M_list.begin(), M_list.end());
    return {make_record("lemma9_form1", Ms, err[0]), make_record("lemma9_form2", Ms, err[1]),
            make_record("lemma9_form3", Ms, err[2])};
}

double empirical_resolvent_trace(std::size_t M, std::size_t K, double alpha, Rng &rng, int power)
{
    if (K < 1 || K > M)
        throw DomainError("need 1 <= K <= M");
    if (!(alpha > 0.0))
        throw DomainError("alpha must be positive");
    const WishartResolvent R = draw_resolvent(M, K, alpha, rng);
    if (power == 1)
        return R.normalized_trace();
    if (power != 2)
        throw std::invalid_argument("power must be 1 or 2");
    const double Md = static_cast<double>(M);
    const auto k = static_cast<Eigen::Index>(K);
    const CMatrix Ci = R.llt.solve(CMatrix::Identity(k, k));
    // Nonzero part: (H H^H / M + alpha I)^-2 = M^2 C^-2, whose trace is M^2 ||C^-1||_F^2.
    return ((Md - static_cast<double>(K)) / (alpha * alpha) + Md * Md * Ci.squaredNorm()) / Md;
}

ConvergenceRecord check_stieltjes_concentration(std::span<const std::size_t> M_list, double alpha, double beta,
                                                const SuiteOptions &opts)
{
    check_sizes(M_list);
    std::vector<double> rms;
    for (std::size_t M : M_list) {
        const std::size_t K = users_for(M, beta);
        const double m_exact = rmt::stieltjes_mp(alpha, static_cast<double>(M) / static_cast<double>(K));
        std::vector<double> sq(opts.trials);
        parallel_for(opts.trials, opts.parallelism, [&](std::size_t t) {
            Rng rng = trial_stream(opts, id_stieltjes, M, t);
            const double e = empirical_resolvent_trace(M, K, alpha, rng) - m_exact;
            sq[t] = e * e;
        });
        double s = 0.0;
        for (double v : sq)
            s += v;
        rms.push_back(std::sqrt(s / static_cast<double>(sq.size())));
    }
    return make_record("stieltjes_trace", {M_list.begin(), M_list.end()}, rms);
}

void write_convergence_csv(std::ostream &os, std::span<const ConvergenceRecord> records)
{
    auto fmt = [](double v) {
        std::array<char, 32> buf{};
        const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
        return std::string(buf.data(), res.ptr);
    };
    os << "lemma,M,error,slope\n";
    for (const auto &r : records)
        for (std::size_t i = 0; i < r.M_values.size(); ++i)
            os << r.name << ',' << r.M_values[i] << ',' << fmt(r.errors[i]) << ',' << fmt(r.slope) << '\n';
}

} // namespace pnmimo::lemmas
