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

#ifndef IRSSEC_METRICS_HPP
#define IRSSEC_METRICS_HPP

#include "irssec/channel.hpp"
#include "irssec/clustering.hpp"
#include "irssec/config.hpp"
#include "irssec/precoding.hpp"

#include <iosfwd>
#include <vector>

namespace irssec
{

// Transmit power per user, indexed by user id (not by SIC position).
struct PowerAllocation
{
    std::vector<double> watts;

    double total() const;
    double cluster_total(const ClusterAssignment &a, int l) const;
};

// |G_u F v_i|^2 for every user u and beam i, and |G_E F v_i|^2.
struct EffectiveGains
{
    rmat user; // n_users x L
    rvec eve;  // L
};

EffectiveGains effective_gains(const ChannelSet &channels, const PrecoderSet &precoders, const cvec &theta);

// SINR of the user at SIC position m of cluster l (0-based). Users ahead of
// it in the cluster interfere; the other beams interfere with their whole
// cluster power.
double sinr_user(const ClusterAssignment &a, const EffectiveGains &g, const PowerAllocation &p, double noise, int l,
                 int m);

// Eavesdropper SINR for the same stream; Eve does no SIC, so every other
// stream of the cluster interferes.
double sinr_eve(const ClusterAssignment &a, const EffectiveGains &g, const PowerAllocation &p, double noise, int l,
                int m);

struct RateReport
{
    // indexed [cluster][SIC position]
    std::vector<std::vector<int>> user;
    std::vector<std::vector<double>> power;
    std::vector<std::vector<double>> user_rate;
    std::vector<std::vector<double>> eve_rate;
    std::vector<std::vector<double>> secrecy_rate; // unclamped
    double sum_secrecy = 0.0;
    double total_power = 0.0;
    double see = 0.0;
    bool feasible = false;
};

// Total consumed power: transmit + RF chains + phase shifters + baseband.
double consumed_power(const SystemConfig &cfg, double transmit_power);

RateReport secrecy_report(const ClusterAssignment &a, const EffectiveGains &g, const PowerAllocation &p,
                          const SystemConfig &cfg);
RateReport secrecy_report(const ChannelSet &channels, const PrecoderSet &precoders, const cvec &theta,
                          const ClusterAssignment &a, const PowerAllocation &p, const SystemConfig &cfg);

// Orthogonal baseline: each cluster time-shares its beam equally among its
// users, the scheduled user gets the whole cluster power and sees no
// intra-cluster interference; rates are scaled by 1 / cluster size.
RateReport oma_report(const ClusterAssignment &a, const EffectiveGains &g, const PowerAllocation &p,
                      const SystemConfig &cfg);

// Columns: cluster,position,user,power_w,user_rate,eve_rate,secrecy_rate,secrecy_rate_clamped
void write_report_csv(const RateReport &report, std::ostream &out);

} // namespace irssec

#endif
