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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pnmimo {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Argument outside the mathematical domain of a closed form.
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Closed form is defined but degenerate at this point (e.g. no usable CSI).
class DegenerateError : public DomainError
{
public:
    using DomainError::DomainError;
};

// Linear system too ill-conditioned to solve within the configured cap.
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class SingularChannelError : public NumericalError
{
public:
    SingularChannelError(const std::string &what, double condition)
        : NumericalError(what), condition_(condition) {}
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

// Invalid scenario parameter; field() names the offending key.
class ConfigError : public std::invalid_argument
{
public:
    ConfigError(std::string field, const std::string &message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
    const std::string &field() const noexcept { return field_; }

private:
    std::string field_;
};

enum class PrecoderKind
{
    rzf,
    zf,
    mf
};

std::string to_string(PrecoderKind kind);
PrecoderKind parse_precoder_kind(const std::string &name);

} // namespace pnmimo
