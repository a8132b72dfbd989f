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

#include "pnmimo/rng.hpp"

namespace pnmimo {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys)
{
    std::uint64_t h = splitmix64(master);
    for (std::uint64_t k : keys)
        h = splitmix64(h ^ splitmix64(k + 0x632BE59BD9B4E019ULL));
    return h;
}

CMatrix complex_normal_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng, double variance)
{
    ComplexNormal cn(variance);
    CMatrix out(rows, cols);
    // Row-major fill order keeps draws stable if storage order changes.
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            out(r, c) = cn(rng);
    return out;
}

CVector complex_normal_vector(Eigen::Index n, Rng &rng, double variance)
{
    ComplexNormal cn(variance);
    CVector out(n);
    for (Eigen::Index i = 0; i < n; ++i)
        out(i) = cn(rng);
    return out;
}

} // namespace pnmimo
