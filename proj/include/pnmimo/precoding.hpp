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

#pragma once

#include <span>

#include "pnmimo/types.hpp"

namespace pnmimo::precoding {

// M x K precoder with trace(G^H G) = 1. Column k carries sqrt(p_k).
struct PrecoderMatrix
{
    CMatrix G;
    double xi_empirical = 0.0;
    PrecoderKind kind = PrecoderKind::rzf;
    double alpha = 0.0;            // regularization, 0 for ZF and MF
    double gram_condition = 1.0;   // condition number of the K x K system solved
    bool square_system = false;    // K == M: ZF normalization collapses
};

struct SolverOptions
{
    double condition_cap = 1e12;
};

enum class RzfForm
{
    dual,  // H^H (H H^H + M alpha I)^-1, K x K solve
    primal // (H^H H + M alpha I)^-1 H^H, M x M solve
};

PrecoderMatrix build_rzf(const CMatrix &H_hat, double alpha, std::span<const double> powers,
                         RzfForm form = RzfForm::dual, const SolverOptions &options = {});

PrecoderMatrix build_zf(const CMatrix &H_hat, std::span<const double> powers, const SolverOptions &options = {});

PrecoderMatrix build_mf(const CMatrix &H_hat, std::span<const double> powers);

double power_trace(const CMatrix &G);

} // namespace pnmimo::precoding
