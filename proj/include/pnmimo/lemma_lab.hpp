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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pnmimo/rng.hpp"
#include "pnmimo/types.hpp"

namespace pnmimo::lemmas {

struct ConvergenceRecord
{
    std::string name;
    std::vector<std::size_t> M_values;
    std::vector<double> errors; // median absolute deviation per size
    double slope = 0.0;         // least-squares fit of log(error) on log(M)

    void validate() const;
};

double fit_loglog_slope(std::span<const std::size_t> M_values, std::span<const double> errors);

ConvergenceRecord make_record(std::string name, std::vector<std::size_t> M_values, std::vector<double> errors);

// Trial seeding: (seed, lemma id, M, trial). Trials may run concurrently.
struct SuiteOptions
{
    std::uint64_t seed = 2024;
    std::size_t trials = 100;
    unsigned parallelism = 1;
};

// ---- exact identities -------------------------------------------------

struct IdentityCheck
{
    double deviation = 0.0; // max abs error relative to the largest entry
    std::size_t resampled = 0;
};

// h^H (U + q h h^H)^-1 vs h^H U^-1 / (1 + q h^H U^-1 h).
// Empty when 1 + q h^H U^-1 h is numerically zero.
std::optional<double> inversion_identity_deviation(const CMatrix &U, const CVector &h, Complex q);

// Draws Hermitian positive U, h and q > 0 (or the given q), resampling rejected draws.
IdentityCheck check_matrix_inversion_identity(std::size_t M, Rng &rng, std::optional<Complex> q = std::nullopt);

// U^-1 - V^-1 vs -U^-1 (U - V) V^-1. Empty when U or V exceeds the condition cap.
std::optional<double> resolvent_identity_deviation(const CMatrix &U, const CMatrix &V, double condition_cap = 1e12);

IdentityCheck check_resolvent_identity(std::size_t M, Rng &rng);

// ---- asymptotic identities --------------------------------------------

struct TraceLemmaSample
{
    double quadratic = 0.0; // |x^H A x - tr(A)/M|
    double cross = 0.0;     // |x^H A w|
};

TraceLemmaSample trace_lemma_sample(const CMatrix &A, const CVector &x, const CVector &w);

// Records "trace_quadratic" and "trace_cross"; A is a random SPD matrix with norm <= 6.
std::array<ConvergenceRecord, 2> check_trace_lemma(std::span<const std::size_t> M_list, const SuiteOptions &opts);

struct Rank1Result
{
    ConvergenceRecord record;
    std::size_t draws = 0;
    std::size_t bound_violations = 0; // draws with gap > ||A|| / (zeta M)
};

// (1/M) |tr A (U + zeta I)^-1 - tr A (U + zeta I + q h h^H)^-1| with Wishart U.
Rank1Result check_rank1_perturbation(std::span<const std::size_t> M_list, const SuiteOptions &opts, double q = 1.0,
                                     double zeta = 0.5);

// |(1/M) tr(UV) - (1/M) tr(U) (1/M) tr(V)| for diagonal V.
double free_trace_gap(const CVector &u_diag, const CVector &v_diag);

// U = (H^H H / M + alpha I)^-1 with K = M/2; V block-constant Haar phases,
// 'antennas_per_oscillator' antennas per phase (1 = one phase per antenna).
ConvergenceRecord check_free_probability_traces(std::span<const std::size_t> M_list, const SuiteOptions &opts,
                                                std::size_t antennas_per_oscillator = 1);

struct Lemma9Options
{
    double q0 = 0.9;
    double alpha = 0.5;
    double beta = 2.0;
    double sigma2 = 0.0109662271123215; // (6 deg)^2 per symbol
    std::size_t tau = 10;
    std::size_t antennas_per_oscillator = 1;
    bool identity_N = false; // N = I reduces to the three-matrix form
};

// Median |deviation| of the three quadratic-form limits at one size.
std::array<double, 3> check_lemma9_quadratic_forms(std::size_t M, const Lemma9Options &lemma,
                                                   const SuiteOptions &opts);

std::array<ConvergenceRecord, 3> lemma9_convergence(std::span<const std::size_t> M_list, const Lemma9Options &lemma,
                                                    const SuiteOptions &opts);

// (1/M) tr(A^-p) for A = H^H H / M + alpha I, H of size K x M with i.i.d. CN(0,1) entries.
double empirical_resolvent_trace(std::size_t M, std::size_t K, double alpha, Rng &rng, int power = 1);

// RMS of (1/M) tr A^-1 - m(-alpha) over trials at each size.
ConvergenceRecord check_stieltjes_concentration(std::span<const std::size_t> M_list, double alpha, double beta,
                                                const SuiteOptions &opts);

void write_convergence_csv(std::ostream &os, std::span<const ConvergenceRecord> records);

} // namespace pnmimo::lemmas
