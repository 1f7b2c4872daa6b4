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

#ifndef IRSSEC_PHASE_OPT_HPP
#define IRSSEC_PHASE_OPT_HPP

#include "irssec/convex.hpp"
#include "irssec/metrics.hpp"

#include <cstdint>
#include <vector>

namespace irssec
{

// Quadratic forms of the IRS phases for a fixed power vector. With
// x_{u,i} = beta_u (g_u^T o H F v_i), the gain of user u on beam i is
// |x_{u,i}^T theta|^2 = Tr(M_{u,i} Phi), M_{u,i} = conj(x) x^T, Phi = theta theta^H.
struct LiftedChannelCache
{
    std::vector<cmat> user_x; // per user, n_irs x L
    cmat eve_x;               // n_irs x L
    ClusterAssignment assignment;
    rvec power;
    double noise = 0.0;

    // A..D of every user as Tr(M Phi) + noise; see SurrogateModel.
    std::vector<cmat> a, b, c, d;

    int dim() const { return int(eve_x.rows()); }
    int n_users() const { return int(user_x.size()); }

    EffectiveGains gains(const cvec &theta) const;
    EffectiveGains gains(const cmat &phi) const;

    // Sum secrecy rate of the lifted problem; grad is d/dPhi under Re Tr.
    double lifted_objective(const cmat &phi, cmat *grad = nullptr) const;
};

LiftedChannelCache build_lifted(std::vector<cmat> user_x, cmat eve_x, const ClusterAssignment &a, const rvec &p,
                                double noise);
LiftedChannelCache build_lifted(const ChannelSet &channels, const PrecoderSet &precoders,
                                const ClusterAssignment &a, const rvec &p, double noise);

cmat lift(const cvec &theta);

// Rate requirements as Re Tr(Q Phi) >= bound; empty when R_min <= 0.
std::vector<HalfSpace> phase_qos(const LiftedChannelCache &cache, const SystemConfig &cfg);

struct PhaseResult
{
    cmat phi;
    double objective = 0.0;    // lifted objective at phi
    std::vector<double> trace; // per SCA step, starting point first
    int iterations = 0;
    bool converged = false;
    bool qos_feasible = true;
};

// SCA over the spectrahedron starting from phi_init (projected first).
PhaseResult solve_phase(const LiftedChannelCache &cache, const SystemConfig &cfg, const SolverSettings &settings,
                        const cmat &phi_init);

struct PhaseEvaluation
{
    double sum_secrecy = 0.0;
    double violation = 0.0; // max over users of R_min - rate, <= 0 when feasible
    bool feasible = false;
};

PhaseEvaluation evaluate_phases(const LiftedChannelCache &cache, const SystemConfig &cfg, const cvec &theta);

struct RandomizationResult
{
    cvec theta;
    PhaseEvaluation value;
    int candidates = 0;
};

// Unit-modulus phases from angle(U Sigma^{1/2} r), r ~ CN(0, I); theta_1 is
// made real and positive. Candidate k draws from seed_seq{seed, k}, and the
// principal eigenvector is tried as well. The best feasible candidate wins,
// else the least violating one (value.feasible == false).
RandomizationResult gaussian_randomize(const cmat &phi, const LiftedChannelCache &cache, const SystemConfig &cfg,
                                       int count, std::uint64_t seed);

// e^{j angle(w_n)}, normalized so theta_1 is real and positive.
cvec unit_modulus(const cvec &w);

} // namespace irssec

#endif
