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

#include "irssec/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace irssec
{

namespace
{
// Relative slack for treating two correlations or gains as tied.
constexpr double kTieTol = 1e-12;

bool greater(double a, double b)
{
    return a > b + kTieTol * std::max(std::abs(a), std::abs(b));
}
} // namespace

int ClusterAssignment::n_users() const
{
    int n = 0;
    for (const auto &m : members)
        n += int(m.size());
    return n;
}

bool ClusterAssignment::has_empty_cluster() const
{
    return std::any_of(members.begin(), members.end(), [](const auto &m) { return m.empty(); });
}

std::vector<int> ClusterAssignment::cluster_of() const
{
    std::vector<int> out(n_users(), -1);
    for (int l = 0; l < n_clusters(); ++l)
        for (int u : members[l])
            out.at(u) = l;
    return out;
}

double channel_correlation(const Eigen::RowVectorXcd &a, const Eigen::RowVectorXcd &b)
{
    const double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0)
        return 0.0;
    return std::abs(a.dot(b)) / (na * nb);
}

std::vector<int> select_heads(const cmat &channels, int n_clusters, double threshold)
{
    const int n = int(channels.rows());
    if (n_clusters < 1)
        throw ClusteringError("select_heads: need at least one cluster");
    if (n < n_clusters)
        throw ClusteringError("select_heads: " + std::to_string(n) + " users cannot fill " +
                              std::to_string(n_clusters) + " clusters");

    std::vector<double> gain(n);
    for (int k = 0; k < n; ++k)
        gain[k] = channels.row(k).norm();

    std::vector<int> heads;
    std::vector<double> max_corr(n, 0.0);
    std::vector<bool> taken(n, false);
    for (int h = 0; h < n_clusters; ++h)
    {
        int best = -1;
        // strongest eligible user
        for (int k = 0; k < n; ++k)
            if (!taken[k] && (h == 0 || max_corr[k] < threshold) && (best < 0 || greater(gain[k], gain[best])))
                best = k;
        if (best < 0)
        {
            // nobody is decorrelated enough: least correlated user
            for (int k = 0; k < n; ++k)
                if (!taken[k] && (best < 0 || greater(max_corr[best], max_corr[k])))
                    best = k;
        }
        heads.push_back(best);
        taken[best] = true;
        for (int k = 0; k < n; ++k)
            max_corr[k] = std::max(max_corr[k], channel_correlation(channels.row(k), channels.row(best)));
    }
    return heads;
}

ClusterAssignment assign_users(const cmat &channels, const std::vector<int> &heads)
{
    const int n = int(channels.rows());
    const int n_clusters = int(heads.size());
    for (int h : heads)
        if (h < 0 || h >= n)
            throw ClusteringError("assign_users: head index out of range");

    ClusterAssignment a;
    a.members.assign(n_clusters, {});
    for (int k = 0; k < n; ++k)
    {
        int best = 0;
        double best_corr = -1.0;
        for (int l = 0; l < n_clusters; ++l)
        {
            const double c = channel_correlation(channels.row(k), channels.row(heads[l]));
            if (l == 0 || greater(c, best_corr))
            {
                best = l;
                best_corr = c;
            }
        }
        a.members[best].push_back(k);
    }

    std::vector<double> gain(n);
    for (int k = 0; k < n; ++k)
        gain[k] = channels.row(k).squaredNorm();
    return order_by_gain(std::move(a), gain);
}

ClusterAssignment order_by_gain(ClusterAssignment a, const std::vector<double> &gain)
{
    a.heads.assign(a.n_clusters(), -1);
    for (int l = 0; l < a.n_clusters(); ++l)
    {
        auto &m = a.members[l];
        std::sort(m.begin(), m.end(), [&](int x, int y) {
            if (gain.at(x) != gain.at(y))
                return gain.at(x) > gain.at(y);
            return x < y;
        });
        if (!m.empty())
            a.heads[l] = m.front();
    }
    return a;
}

} // namespace irssec
