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

#ifndef IRSSEC_AO_HPP
#define IRSSEC_AO_HPP

#include "irssec/metrics.hpp"

#include <optional>
#include <vector>

namespace irssec
{

struct AoOptions
{
    // false: power allocation only, with the phases held at their initial
    // value (the random-IRS baseline when the initial phases are random)
    bool optimize_phase = true;
    std::optional<cvec> theta0; // overrides settings.init
};

struct Solution
{
    ClusterAssignment assignment;
    PrecoderSet precoders;
    cvec theta;
    PowerAllocation p;
    RateReport report;
    std::vector<double> trace; // sum secrecy rate, initial point first
    std::vector<double> power_trace; // SCA trace of the last power step
    int outer_iterations = 0;
    int power_iterations = 0;  // SCA steps, all outer iterations
    int phase_iterations = 0;
    int phase_updates = 0;     // accepted phase updates
    int precoder_updates = 0;  // accepted precoder rebuilds
    bool converged = false;
    double wall_ms = 0.0;
};

cvec initial_phases(int n_irs, const PhaseInit &init);

// Clusters on the user-specific IRS-side channels, then orders each
// cluster by |G_u F|^2 under the precoders that ordering induces (a few
// rounds until the order settles). Throws ClusteringError on an empty
// cluster.
ClusterAssignment cluster_users(const ChannelSet &channels, const SystemConfig &cfg, const cvec &theta);

// Alternating optimization of power and IRS phases. Throws InfeasibleError
// when the rate requirements cannot be met at the start.
Solution run_ao(const SystemConfig &cfg, const ChannelSet &channels, const SolverSettings &settings,
                const AoOptions &options = {});
Solution run_ao(const SystemConfig &cfg, const Scenario &scenario, const SolverSettings &settings,
                const AoOptions &options = {});

} // namespace irssec

#endif
