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

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

#include "pnmimo/types.hpp"

namespace pnmimo {

using Rng = std::mt19937_64;

// Mixes a master seed with a path of stream keys (splitmix64 chain).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys);

inline Rng make_stream(std::uint64_t master, std::initializer_list<std::uint64_t> keys)
{
    return Rng(derive_seed(master, keys));
}

// Circularly symmetric complex Gaussian with E|z|^2 = variance.
class ComplexNormal
{
public:
    explicit ComplexNormal(double variance = 1.0) : dist_(0.0, std::sqrt(0.5 * variance)) {}
    Complex operator()(Rng &rng) { return {dist_(rng), dist_(rng)}; }

private:
    std::normal_distribution<double> dist_;
};

CMatrix complex_normal_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng, double variance = 1.0);
CVector complex_normal_vector(Eigen::Index n, Rng &rng, double variance = 1.0);

} // namespace pnmimo
