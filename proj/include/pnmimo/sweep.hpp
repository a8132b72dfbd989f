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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pnmimo/rates.hpp"
#include "pnmimo/system_config.hpp"

namespace pnmimo::sim {

enum class SweepAxis
{
    snr,       // snr_db
    m_osc,     // oscillator count; 0 means one per antenna
    beta,      // M = round(beta K), K fixed
    sigma_phi, // BS and UE increment std in degrees
    alpha      // fixed RZF regularization
};

std::string to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string &s);

// Returns config with the axis set to value; validates the result.
SystemConfig apply_axis(SystemConfig config, SweepAxis axis, double value);

struct SweepSpec
{
    std::string name;
    SweepAxis axis = SweepAxis::snr;
    std::vector<double> values;
    SystemConfig base;
};

struct SweepPlan
{
    std::string name;
    std::vector<PrecoderKind> precoders{PrecoderKind::rzf};
    rates::RateDefinition rate = rates::RateDefinition::ergodic;
    std::vector<SweepSpec> sweeps;

    void validate() const;
};

struct RunOverrides
{
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> realizations;
    std::optional<unsigned> parallelism;
};

void apply_overrides(SweepPlan &plan, const RunOverrides &overrides);

// One row per (sweep point, precoder). Optional fields are empty when
// undefined: alpha for ZF/MF, Lapidoth for zero phase noise, empirical
// columns when n_realizations is 0.
struct SweepResultRow
{
    std::string sweep;
    std::string axis;
    double axis_value = 0.0;
    std::string precoder;
    std::int64_t M = 0;
    std::int64_t K = 0;
    std::int64_t M_osc = 0;
    double beta = 0.0;
    double q0 = 0.0;
    double sigma_deg_bs = 0.0;
    double sigma_deg_ue = 0.0;
    std::int64_t tau = 0;
    std::int64_t T_c = 0;
    double snr_db = 0.0;
    std::string snr_reference;
    double sigma_w2 = 0.0;
    std::string powers;
    std::string alpha_mode;
    std::optional<double> alpha;
    std::optional<double> alpha_argmax;
    double e_tpn2 = 0.0;
    double q_eff = 0.0;
    std::optional<double> analytical_sinr;
    std::optional<double> empirical_sinr;
    std::optional<double> std_error;
    std::int64_t n_realizations = 0;
    std::int64_t n_rejected = 0;
    std::uint64_t master_seed = 0;
    std::string rate_definition;
    std::optional<double> rate_awgn;
    std::optional<double> rate_lapidoth;
    std::optional<double> rate_min;
    std::optional<double> rate_ergodic;
    std::optional<double> rate_reported;
    std::optional<double> empirical_rate_reported;
    std::optional<double> wall_time_s;

    bool operator==(const SweepResultRow &) const = default;
};

struct ResultTable
{
    std::vector<SweepResultRow> rows;
    bool operator==(const ResultTable &) const = default;
};

struct RunOptions
{
    bool timing = false; // fill wall_time_s
};

ResultTable run_sweep(const SystemConfig &config, SweepAxis axis, std::span<const double> values,
                      std::span<const PrecoderKind> precoders,
                      rates::RateDefinition rate = rates::RateDefinition::ergodic, const std::string &name = "sweep",
                      const RunOptions &options = {});

ResultTable run_plan(const SweepPlan &plan, const RunOptions &options = {});

} // namespace pnmimo::sim
