// SPDX-License-Identifier: Apache-2.0
//
// irssec: secure IRS-assisted THz MIMO-NOMA downlink optimization
// Copyright (C) 2026 The irssec authors
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

#ifndef IRSSEC_TESTS_UTIL_HPP
#define IRSSEC_TESTS_UTIL_HPP

#include "irssec/config.hpp"
#include "irssec/types.hpp"

#include <algorithm>
#include <cmath>

#include <random>
#include <string>

namespace testutil
{

inline const std::string kTable1 = R"([system]
n_tx = 64
n_irs = 20
n_rf = 4
users_per_cluster = 3,3,2,2
carrier_freq_hz = 340e9
quant_bits = 4
absorption_per_m = 0.0033
noise_power_w = 0.01
total_power_w = 1
path_comp = 1e8

[scenario]
seed = 7
)";

inline irssec::cmat random_cmat(int rows, int cols, std::mt19937_64 &rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    irssec::cmat m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
        {
            const double re = n(rng);
            m(r, c) = irssec::cplx(re, n(rng));
        }
    return m;
}

inline double rel_err(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

} // namespace testutil

#endif
