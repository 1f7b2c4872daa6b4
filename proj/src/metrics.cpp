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

#include "irssec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace irssec
{

namespace
{
// Rates within this slack of R_min count as meeting it.
constexpr double kRateSlack = 1e-9;
} // namespace

double PowerAllocation::total() const
{
    return std::accumulate(watts.begin(), watts.end(), 0.0);
}

double PowerAllocation::cluster_total(const ClusterAssignment &a, int l) const
{
    double s = 0.0;
    for (int u : a.members.at(l))
        s += watts.at(u);
    return s;
}

EffectiveGains effective_gains(const ChannelSet &channels, const PrecoderSet &precoders, const cvec &theta)
{
    const cmat FV = precoders.analog.F * precoders.digital.V;
    EffectiveGains g{rmat(channels.n_users(), FV.cols()), rvec(FV.cols())};
    for (int u = 0; u < channels.n_users(); ++u)
        g.user.row(u) = (channels.composite(u, theta) * FV).cwiseAbs2();
    g.eve = (channels.eve_composite(theta) * FV).cwiseAbs2().transpose();
    return g;
}

double sinr_user(const ClusterAssignment &a, const EffectiveGains &g, const PowerAllocation &p, double noise, int l,
                 int m)
{
    const auto &members = a.members.at(l);
    const int u = members.at(m);
    const double own = g.user(u, l);
    double intra = 0.0;
    for (int j = 0; j < m; ++j)
        intra += p.watts[members[j]];
    double inter = 0.0;
    for (int i = 0; i < a.n_clusters(); ++i)
        if (i != l)
            inter += g.user(u, i) * p.cluster_total(a, i);
    return own * p.watts[u] / (own * intra + inter + noise);
}

double sinr_eve(const ClusterAssignment &a, const EffectiveGains &g, const PowerAllocation &p, double noise, int l,
                int m)
{
    const auto &members = a.members.at(l);
    const int u = members.at(m);
    const double own = g.eve(l);
    double intra = 0.0;
    for (int j = 0; j < int(members.size()); ++j)
        if (j != m)
            intra += p.watts[members[j]];
    double inter = 0.0;
    for (int i = 0; i < a.n_clusters(); ++i)
        if (i != l)
            inter += g.eve(i) * p.cluster_total(a, i);
    return own * p.watts[u] / (own * intra + inter + noise);
}

double consumed_power(const SystemConfig &cfg, double transmit_power)
{
    return transmit_power + cfg.rf_chain_power_w * cfg.n_rf + cfg.phase_shifter_power_w * cfg.phase_shifter_count() +
           cfg.baseband_power_w;
}

namespace
{
RateReport shape_like(const ClusterAssignment &a)
{
    RateReport r;
    r.user = a.members;
    for (const auto &m : a.members)
    {
        r.power.emplace_back(m.size(), 0.0);
        r.user_rate.emplace_back(m.size(), 0.0);
        r.eve_rate.emplace_back(m.size(), 0.0);
        r.secrecy_rate.emplace_back(m.size(), 0.0);
    }
    return r;
}

void finish(RateReport &r, const PowerAllocation &p, const SystemConfig &cfg)
{
    r.feasible = true;
    r.sum_secrecy = 0.0;
    for (size_t l = 0; l < r.user.size(); ++l)
        for (size_t m = 0; m < r.user[l].size(); ++m)
        {
            r.secrecy_rate[l][m] = r.user_rate[l][m] - r.eve_rate[l][m];
            r.sum_secrecy += r.secrecy_rate[l][m];
            if (r.user_rate[l][m] < cfg.min_rate - kRateSlack)
                r.feasible = false;
        }
    r.total_power = p.total();
    r.see = r.sum_secrecy / consumed_power(cfg, r.total_power);
}
} // namespace

RateReport secrecy_report(const ClusterAssignment &a, const EffectiveGains &g, const PowerAllocation &p,
                          const SystemConfig &cfg)
{
    RateReport r = shape_like(a);
    for (int l = 0; l < a.n_clusters(); ++l)
        for (int m = 0; m < int(a.members[l].size()); ++m)
        {
            r.power[l][m] = p.watts[a.members[l][m]];
            r.user_rate[l][m] = std::log2(1.0 + sinr_user(a, g, p, cfg.noise_power_w, l, m));
            r.eve_rate[l][m] = std::log2(1.0 + sinr_eve(a, g, p, cfg.noise_power_w, l, m));
        }
    finish(r, p, cfg);
    return r;
}

RateReport secrecy_report(const ChannelSet &channels, const PrecoderSet &precoders, const cvec &theta,
                          const ClusterAssignment &a, const PowerAllocation &p, const SystemConfig &cfg)
{
    return secrecy_report(a, effective_gains(channels, precoders, theta), p, cfg);
}

RateReport oma_report(const ClusterAssignment &a, const EffectiveGains &g, const PowerAllocation &p,
                      const SystemConfig &cfg)
{
    RateReport r = shape_like(a);
    const double noise = cfg.noise_power_w;
    for (int l = 0; l < a.n_clusters(); ++l)
    {
        const double share = 1.0 / double(a.members[l].size());
        const double beam_power = p.cluster_total(a, l);
        double eve_inter = 0.0;
        for (int i = 0; i < a.n_clusters(); ++i)
            if (i != l)
                eve_inter += g.eve(i) * p.cluster_total(a, i);
        for (int m = 0; m < int(a.members[l].size()); ++m)
        {
            const int u = a.members[l][m];
            double inter = 0.0;
            for (int i = 0; i < a.n_clusters(); ++i)
                if (i != l)
                    inter += g.user(u, i) * p.cluster_total(a, i);
            r.power[l][m] = beam_power * share;
            r.user_rate[l][m] = share * std::log2(1.0 + g.user(u, l) * beam_power / (inter + noise));
            r.eve_rate[l][m] = share * std::log2(1.0 + g.eve(l) * beam_power / (eve_inter + noise));
        }
    }
    finish(r, p, cfg);
    return r;
}

void write_report_csv(const RateReport &r, std::ostream &out)
{
    out.precision(12);
    out << "cluster,position,user,power_w,user_rate,eve_rate,secrecy_rate,secrecy_rate_clamped\n";
    for (size_t l = 0; l < r.user.size(); ++l)
        for (size_t m = 0; m < r.user[l].size(); ++m)
            out << l << ',' << m << ',' << r.user[l][m] << ',' << r.power[l][m] << ',' << r.user_rate[l][m] << ','
                << r.eve_rate[l][m] << ',' << r.secrecy_rate[l][m] << ','
                << std::max(0.0, r.secrecy_rate[l][m]) << '\n';
}

} // namespace irssec
