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

#ifndef IRSSEC_CLUSTERING_HPP
#define IRSSEC_CLUSTERING_HPP

#include "irssec/types.hpp"

#include <stdexcept>
#include <vector>

namespace irssec
{

// Users grouped into beams. members[l] is in SIC order (non-increasing
// effective gain) and heads[l] == members[l][0]; an empty cluster has
// head -1.
struct ClusterAssignment
{
    std::vector<int> heads;
    std::vector<std::vector<int>> members;

    int n_clusters() const { return int(members.size()); }
    int n_users() const;
    bool has_empty_cluster() const;
    // cluster index per user
    std::vector<int> cluster_of() const;

    bool operator==(const ClusterAssignment &) const = default;
};

class ClusteringError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// |<a, b>| / (|a| |b|), zero when either row vanishes.
double channel_correlation(const Eigen::RowVectorXcd &a, const Eigen::RowVectorXcd &b);

// Greedy head selection over the rows of `channels` (one user per row):
// strongest user first, then the strongest user whose correlation with
// every chosen head is below `threshold`, falling back to the user with
// the smallest maximum correlation. Ties go to the lowest index.
std::vector<int> select_heads(const cmat &channels, int n_clusters, double threshold);

// Every user joins the head it is most correlated with; members are then
// sorted by gain (row norm) and the strongest member becomes the head.
ClusterAssignment assign_users(const cmat &channels, const std::vector<int> &heads);

// Re-sorts every cluster by `gain[user]` (descending, ties by index) and
// re-designates heads.
ClusterAssignment order_by_gain(ClusterAssignment assignment, const std::vector<double> &gain);

} // namespace irssec

#endif
