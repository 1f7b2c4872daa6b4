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

#ifndef IRSSEC_POWER_ALLOC_HPP
#define IRSSEC_POWER_ALLOC_HPP

#include "irssec/convex.hpp"
#include "irssec/metrics.hpp"

#include <vector>

namespace irssec
{

FirstOrderSettings first_order_settings(const SolverSettings &s);

// The four SINR terms of every user as affine functions of the power
// vector (indexed by user id): X_u(p) = x_u^T p + noise.
//   A: user signal + interference   B: user interference
//   C: Eve signal + interference    D: Eve interference
// The secrecy rate is log2 A - log2 B - log2 C + log2 D. The log B and
// log C terms are replaced by their tangent planes at the expansion point.
struct SurrogateModel
{
    rmat a, b, c, d; // n_users x n_users coefficient rows
    rvec own;        // |G_u F v_l|^2 of every user on its own beam
    double noise = 0.0;
    rvec expansion;  // p bar
    rvec b_bar;      // B_u(p bar)
    rvec c_bar;      // C_u(p bar)

    int n_users() const { return int(a.rows()); }

    // Sum secrecy rate; writes the gradient when grad != nullptr.
    double true_objective(const rvec &p, rvec *grad = nullptr) const;
    double surrogate(const rvec &p, rvec *grad = nullptr) const;

    // Tangent planes of log2 B_u and log2 C_u at the expansion point.
    double lin_b(int user, const rvec &p) const;
    double lin_c(int user, const rvec &p) const;

    void expand_at(const rvec &p_bar);
};

SurrogateModel build_surrogate(const ClusterAssignment &a, const EffectiveGains &g, double noise,
                               const rvec &p_bar);
SurrogateModel build_surrogate(const ChannelSet &channels, const PrecoderSet &precoders, const cvec &theta,
                               const ClusterAssignment &a, double noise, const rvec &p_bar);

// Rows of A p <= b: one rate requirement per user, then sum(p) <= P_T.
// The rate requirement (2^R - 1) B_u(p) <= A_u(p) - B_u(p) is affine in p.
struct LinearConstraints
{
    rmat A;
    rvec b;
};

LinearConstraints qos_constraints(const SurrogateModel &model, const SystemConfig &cfg);

// Equal split of 0.9 P_T, projected onto the feasible set. Throws
// InfeasibleError when the rate requirements cannot be met.
rvec initial_power(const SurrogateModel &model, const SystemConfig &cfg);

struct PowerResult
{
    PowerAllocation p;
    double objective = 0.0;
    std::vector<double> trace; // true objective, starting point first
    int iterations = 0;
    bool converged = false;
};

// SCA on the power vector for fixed precoders and phases. An infeasible
// p_init is first projected onto the feasible set.
PowerResult solve_power(const ClusterAssignment &a, const EffectiveGains &g, const SystemConfig &cfg,
                        const SolverSettings &settings, const rvec &p_init);
PowerResult solve_power(const ChannelSet &channels, const PrecoderSet &precoders, const cvec &theta,
                        const ClusterAssignment &a, const SystemConfig &cfg, const SolverSettings &settings,
                        const rvec &p_init);

} // namespace irssec

#endif
