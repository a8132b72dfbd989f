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

#include "pnmimo/precoding.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace pnmimo {

std::string to_string(PrecoderKind kind)
{
    switch (kind) {
    case PrecoderKind::rzf:
        return "rzf";
    case PrecoderKind::zf:
        return "zf";
    case PrecoderKind::mf:
        return "mf";
    }
    return "unknown";
}

PrecoderKind parse_precoder_kind(const std::string &name)
{
    if (name == "rzf")
        return PrecoderKind::rzf;
    if (name == "zf")
        return PrecoderKind::zf;
    if (name == "mf")
        return PrecoderKind::mf;
    throw ConfigError("precoder", "unknown precoder '" + name + "' (expected rzf, zf or mf)");
}

} // namespace pnmimo

namespace pnmimo::precoding {

namespace {

void check_shapes(const CMatrix &H_hat, std::span<const double> powers)
{
    if (H_hat.rows() == 0 || H_hat.cols() == 0)
        throw std::invalid_argument("empty channel estimate");
    if (static_cast<Eigen::Index>(powers.size()) != H_hat.rows())
        throw std::invalid_argument("power vector length " + std::to_string(powers.size())
                                    + " does not match K = " + std::to_string(H_hat.rows()));
    for (double p : powers)
        if (!(p >= 0.0))
            throw DomainError("powers must be non-negative");
}

double hermitian_condition(const CMatrix &A)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> es(A, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (!(lo > 0.0))
        return std::numeric_limits<double>::infinity();
    return hi / lo;
}

// Scales columns by sqrt(p_k) then normalizes to unit total power.
PrecoderMatrix finish(CMatrix G, std::span<const double> powers, PrecoderKind kind, double alpha, double cond)
{
    for (Eigen::Index k = 0; k < G.cols(); ++k)
        G.col(k) *= std::sqrt(powers[static_cast<std::size_t>(k)]);
    const double norm = G.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw NumericalError("precoder has zero or non-finite power");
    PrecoderMatrix out;
    out.xi_empirical = 1.0 / norm;
    out.G = std::move(G) * out.xi_empirical;
    out.kind = kind;
    out.alpha = alpha;
    out.gram_condition = cond;
    out.square_system = out.G.rows() == out.G.cols();
    return out;
}

} // namespace

PrecoderMatrix build_rzf(const CMatrix &H_hat, double alpha, std::span<const double> powers, RzfForm form,
                         const SolverOptions &options)
{
    check_shapes(H_hat, powers);
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("RZF requires a positive finite alpha");
    const auto M = H_hat.cols();
    const double shift = static_cast<double>(M) * alpha;

    CMatrix system = form == RzfForm::dual ? CMatrix(H_hat * H_hat.adjoint()) : CMatrix(H_hat.adjoint() * H_hat);
    // Gram eigenvalues lie in [0, trace], so (trace + shift) / shift bounds the condition number.
    double cond = (system.trace().real() + shift) / shift;
    system.diagonal().array() += shift;
    if (cond > options.condition_cap) {
        cond = hermitian_condition(system);
        if (cond > options.condition_cap)
            throw SingularChannelError("regularized Gram matrix exceeds the condition cap", cond);
    }
    Eigen::LLT<CMatrix> llt(system);
    if (llt.info() != Eigen::Success)
        throw NumericalError("Cholesky factorization of the regularized Gram matrix failed");

    CMatrix G = form == RzfForm::dual ? CMatrix(H_hat.adjoint() * llt.solve(CMatrix::Identity(H_hat.rows(), H_hat.rows())))
                                      : CMatrix(llt.solve(H_hat.adjoint()));
    return finish(std::move(G), powers, PrecoderKind::rzf, alpha, cond);
}

PrecoderMatrix build_zf(const CMatrix &H_hat, std::span<const double> powers, const SolverOptions &options)
{
    check_shapes(H_hat, powers);
    if (H_hat.rows() > H_hat.cols())
        throw DomainError("ZF requires K <= M");
    const CMatrix gram = H_hat * H_hat.adjoint();
    const double cond = hermitian_condition(gram);
    if (!(cond <= options.condition_cap))
        throw SingularChannelError("channel Gram matrix exceeds the condition cap", cond);
    Eigen::LLT<CMatrix> llt(gram);
    if (llt.info() != Eigen::Success)
        throw SingularChannelError("Cholesky factorization of the channel Gram matrix failed", cond);
    CMatrix G = H_hat.adjoint() * llt.solve(CMatrix::Identity(H_hat.rows(), H_hat.rows()));
    return finish(std::move(G), powers, PrecoderKind::zf, 0.0, cond);
}

PrecoderMatrix build_mf(const CMatrix &H_hat, std::span<const double> powers)
{
    check_shapes(H_hat, powers);
    return finish(H_hat.adjoint(), powers, PrecoderKind::mf, 0.0, 1.0);
}

double power_trace(const CMatrix &G)
{
    return G.squaredNorm();
}

} // namespace pnmimo::precoding
