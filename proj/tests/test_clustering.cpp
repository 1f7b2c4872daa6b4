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

#include "util.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace irssec;

namespace
{
double corr(const cmat &h, int a, int b)
{
    // written out instead of calling channel_correlation
    cplx s = 0;
    for (int k = 0; k < h.cols(); ++k)
        s += std::conj(h(a, k)) * h(b, k);
    return std::abs(s) / (h.row(a).norm() * h.row(b).norm());
}

void check_partition(const ClusterAssignment &a, int n)
{
    std::vector<int> seen(n, 0);
    for (const auto &m : a.members)
        for (int u : m)
            ++seen.at(u);
    for (int s : seen)
        CHECK(s == 1);
}
} // namespace

TEST_SUITE("clustering")
{
    TEST_CASE("correlation")
    {
        std::mt19937_64 rng(1);
        const cmat h = testutil::random_cmat(2, 7, rng);
        CHECK(channel_correlation(h.row(0), h.row(0)) == doctest::Approx(1.0));
        CHECK(channel_correlation(h.row(0), h.row(1)) == doctest::Approx(corr(h, 0, 1)));
        CHECK(channel_correlation(h.row(0), cplx(0, 2) * h.row(0)) == doctest::Approx(1.0));
        CHECK(channel_correlation(h.row(0), Eigen::RowVectorXcd::Zero(7)) == 0.0);
    }

    TEST_CASE("single cluster picks the strongest user")
    {
        std::mt19937_64 rng(2);
        const cmat h = testutil::random_cmat(6, 5, rng);
        int best = 0;
        for (int k = 1; k < 6; ++k)
            if (h.row(k).norm() > h.row(best).norm())
                best = k;
        CHECK(select_heads(h, 1, 0.5) == std::vector<int>{best});
        CHECK_THROWS_AS(select_heads(h, 7, 0.5), ClusteringError);
    }

    TEST_CASE("orthogonal users are both heads")
    {
        cmat h = cmat::Zero(2, 3);
        h(0, 0) = 1.0;
        h(1, 1) = 0.1;
        for (double thr : {0.0, 0.5, 1.0})
        {
            auto heads = select_heads(h, 2, thr);
            std::sort(heads.begin(), heads.end());
            CHECK(heads == std::vector<int>{0, 1});
        }
    }

    TEST_CASE("head selection matches exhaustive search")
    {
        // The rule for L = 2: head 0 is the strongest user; head 1 is the
        // strongest of the users below the threshold, else the least
        // correlated. Enumerate all pairs and keep the one the rule admits.
        for (int trial = 0; trial < 40; ++trial)
        {
            std::mt19937_64 rng(100 + trial);
            cmat h = testutil::random_cmat(6, 3, rng);
            const double thr = 0.6;
            std::vector<std::pair<int, int>> admissible;
            int strongest = 0;
            for (int k = 1; k < 6; ++k)
                if (h.row(k).norm() > h.row(strongest).norm())
                    strongest = k;
            bool any_below = false;
            for (int k = 0; k < 6; ++k)
                any_below |= k != strongest && corr(h, strongest, k) < thr;
            int expect = -1;
            for (int k = 0; k < 6; ++k)
            {
                if (k == strongest)
                    continue;
                bool ok = true;
                for (int j = 0; j < 6; ++j)
                {
                    if (j == strongest || j == k)
                        continue;
                    if (any_below)
                    {
                        if (corr(h, strongest, k) >= thr)
                            ok = false;
                        else if (corr(h, strongest, j) < thr && h.row(j).norm() > h.row(k).norm())
                            ok = false;
                    }
                    else if (corr(h, strongest, j) < corr(h, strongest, k))
                        ok = false;
                }
                if (ok)
                    expect = k;
            }
            CHECK(select_heads(h, 2, thr) == std::vector<int>{strongest, expect});
        }
    }

    TEST_CASE("assignment follows the most correlated head")
    {
        cmat h = cmat::Zero(3, 2);
        h(0, 0) = 2.0;         // head A
        h(1, 1) = 1.5;         // head B
        h(2, 0) = cplx(0, 1);  // colinear with A, orthogonal to B
        const ClusterAssignment a = assign_users(h, {0, 1});
        CHECK(a.members[0] == std::vector<int>{0, 2});
        CHECK(a.members[1] == std::vector<int>{1});
        CHECK(a.heads == std::vector<int>{0, 1});
        CHECK(a.cluster_of() == std::vector<int>{0, 1, 0});
    }

    TEST_CASE("identical users collapse into one cluster")
    {
        std::mt19937_64 rng(4);
        const cmat row = testutil::random_cmat(1, 4, rng);
        cmat h(5, 4);
        for (int k = 0; k < 5; ++k)
            h.row(k) = row;
        const ClusterAssignment a = assign_users(h, select_heads(h, 3, 0.5));
        CHECK(a.members[0].size() == 5);
        CHECK(a.has_empty_cluster());
        CHECK(a.heads[1] == -1);
        CHECK(a.heads[2] == -1);
        check_partition(a, 5);
    }

    TEST_CASE("assignment matches brute force")
    {
        for (int trial = 0; trial < 30; ++trial)
        {
            std::mt19937_64 rng(500 + trial);
            const cmat h = testutil::random_cmat(8, 4, rng);
            const auto heads = select_heads(h, 3, 0.5);
            const ClusterAssignment a = assign_users(h, heads);
            check_partition(a, 8);
            const auto cl = a.cluster_of();
            for (int u = 0; u < 8; ++u)
            {
                double best = -1;
                for (int l = 0; l < 3; ++l)
                    best = std::max(best, corr(h, u, heads[l]));
                // the chosen head attains the maximum correlation
                bool attains = false;
                for (int l = 0; l < 3; ++l)
                    if (std::abs(corr(h, u, heads[l]) - best) < 1e-12)
                        for (int v : a.members[cl[u]])
                            attains |= v == heads[l];
                CHECK(attains);
            }
            for (const auto &m : a.members)
                for (size_t k = 1; k < m.size(); ++k)
                    CHECK(h.row(m[k - 1]).squaredNorm() >= h.row(m[k]).squaredNorm());
        }
    }

    TEST_CASE("relabeling users permutes the output")
    {
        std::mt19937_64 rng(9);
        const cmat h = testutil::random_cmat(7, 4, rng);
        std::vector<int> perm{3, 0, 6, 1, 5, 2, 4}; // new index k holds old user perm[k]
        cmat hp(7, 4);
        for (int k = 0; k < 7; ++k)
            hp.row(k) = h.row(perm[k]);
        const ClusterAssignment a = assign_users(h, select_heads(h, 2, 0.5));
        const ClusterAssignment b = assign_users(hp, select_heads(hp, 2, 0.5));
        for (int l = 0; l < 2; ++l)
        {
            std::vector<int> mapped;
            for (int v : b.members[l])
                mapped.push_back(perm[v]);
            CHECK(mapped == a.members[l]);
        }
    }

    TEST_CASE("order by gain re-designates heads")
    {
        ClusterAssignment a;
        a.members = {{0, 1, 2}, {3}, {}};
        const ClusterAssignment b = order_by_gain(a, {0.1, 0.5, 0.5, 1.0});
        CHECK(b.members[0] == std::vector<int>{1, 2, 0});
        CHECK(b.heads == std::vector<int>{1, 3, -1});
    }
}
