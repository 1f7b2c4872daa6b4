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

#include "oracles.hpp"
#include "util.hpp"

#include <doctest.h>

#include <sstream>

using namespace irssec;

namespace
{
struct Instance
{
    ClusterAssignment a;
    EffectiveGains g;
    PowerAllocation p;
};

Instance from_toy(const oracle::Toy &t)
{
    Instance in;
    in.a.members = t.clusters;
    for (const auto &m : t.clusters)
        in.a.heads.push_back(m.front());
    const int n = int(t.gains.size());
    const int L = int(t.clusters.size());
    in.g.user.resize(n, L);
    for (int u = 0; u < n; ++u)
        for (int l = 0; l < L; ++l)
            in.g.user(u, l) = t.gains[u][l];
    in.g.eve = Eigen::Map<const rvec>(t.eve.data(), L);
    in.p.watts = t.p;
    return in;
}

std::vector<oracle::Toy> toys()
{
    std::vector<oracle::Toy> out;
    out.push_back({{{2.0, 0.1}, {0.5, 0.05}, {0.2, 1.5}, {0.01, 0.3}},
                   {0.07, 0.02},
                   {{0, 1}, {2, 3}},
                   {0.4, 0.1, 0.3, 0.2},
                   0.01});
    out.push_back({{{1.0}}, {0.25}, {{0}}, {0.5}, 0.1});
    out.push_back({{{3.0, 0.2, 0.1}, {1.0, 0.3, 0.0}, {0.4, 0.9, 0.2}, {0.3, 0.1, 4.0}, {0.1, 0.1, 0.5}},
                   {0.5, 0.01, 0.2},
                   {{0, 1}, {2}, {3, 4}},
                   {0.2, 0.05, 0.3, 0.35, 0.1},
                   0.02});
    return out;
}
} // namespace

TEST_SUITE("metrics")
{
    TEST_CASE("SINR and secrecy rate match the scalar oracle")
    {
        SystemConfig cfg;
        for (const oracle::Toy &t : toys())
        {
            const Instance in = from_toy(t);
            cfg.noise_power_w = t.noise;
            for (int l = 0; l < in.a.n_clusters(); ++l)
                for (int m = 0; m < int(in.a.members[l].size()); ++m)
                {
                    CHECK(testutil::rel_err(sinr_user(in.a, in.g, in.p, t.noise, l, m), oracle::sinr_user(t, l, m)) <
                          1e-12);
                    CHECK(testutil::rel_err(sinr_eve(in.a, in.g, in.p, t.noise, l, m), oracle::sinr_eve(t, l, m)) <
                          1e-12);
                }
            const RateReport r = secrecy_report(in.a, in.g, in.p, cfg);
            CHECK(testutil::rel_err(r.sum_secrecy, oracle::sum_secrecy(t)) < 1e-12);
        }
    }

    TEST_CASE("hand-computed single user")
    {
        // SINR = 1 * 0.5 / 0.1 = 5 and Eve gets 0.25 * 0.5 / 0.1 = 1.25
        const Instance in = from_toy(toys()[1]);
        CHECK(sinr_user(in.a, in.g, in.p, 0.1, 0, 0) == doctest::Approx(5.0).epsilon(1e-14));
        CHECK(sinr_eve(in.a, in.g, in.p, 0.1, 0, 0) == doctest::Approx(1.25).epsilon(1e-14));
        SystemConfig cfg;
        cfg.noise_power_w = 0.1;
        const RateReport r = secrecy_report(in.a, in.g, in.p, cfg);
        CHECK(r.sum_secrecy == doctest::Approx(std::log2(6.0 / 2.25)).epsilon(1e-14));
    }

    TEST_CASE("consumed power and SEE")
    {
        SystemConfig cfg;
        CHECK(consumed_power(cfg, 1.0) == doctest::Approx(12.64).epsilon(1e-14));
        cfg.architecture = Architecture::SubConnected;
        CHECK(consumed_power(cfg, 1.0) == doctest::Approx(4.96).epsilon(1e-14));
        cfg.architecture = Architecture::FullyConnected;

        const Instance in = from_toy(toys()[0]);
        cfg.noise_power_w = 0.01;
        const RateReport r = secrecy_report(in.a, in.g, in.p, cfg);
        CHECK(r.total_power == doctest::Approx(1.0));
        const double expected = oracle::see(oracle::sum_secrecy(toys()[0]), 1.0, 4, 256);
        CHECK(testutil::rel_err(r.see, expected) < 1e-12);
        // 10 bit/s/Hz over 12.64 W
        CHECK(10.0 / consumed_power(cfg, 1.0) == doctest::Approx(0.791).epsilon(1e-3));
    }

    TEST_CASE("QoS feasibility")
    {
        const Instance in = from_toy(toys()[0]);
        SystemConfig cfg;
        cfg.noise_power_w = 0.01;
        cfg.min_rate = 0.0;
        PowerAllocation zero{std::vector<double>(4, 0.0)};
        CHECK(secrecy_report(in.a, in.g, zero, cfg).feasible);
        CHECK(secrecy_report(in.a, in.g, zero, cfg).sum_secrecy == 0.0);
        cfg.min_rate = 0.1;
        CHECK_FALSE(secrecy_report(in.a, in.g, zero, cfg).feasible);
        cfg.min_rate = oracle::min_user_rate(toys()[0]) - 1e-6;
        CHECK(secrecy_report(in.a, in.g, in.p, cfg).feasible);
        cfg.min_rate = oracle::min_user_rate(toys()[0]) + 1e-3;
        CHECK_FALSE(secrecy_report(in.a, in.g, in.p, cfg).feasible);
    }

    TEST_CASE("scaling gains and noise together leaves rates unchanged")
    {
        SystemConfig cfg;
        for (const oracle::Toy &t : toys())
        {
            Instance in = from_toy(t);
            cfg.noise_power_w = t.noise;
            const double base = secrecy_report(in.a, in.g, in.p, cfg).sum_secrecy;
            in.g.user *= 1e6;
            in.g.eve *= 1e6;
            cfg.noise_power_w = t.noise * 1e6;
            CHECK(secrecy_report(in.a, in.g, in.p, cfg).sum_secrecy == doctest::Approx(base).epsilon(1e-12));
        }
    }

    TEST_CASE("OMA splits each beam in time")
    {
        const oracle::Toy t = toys()[0];
        const Instance in = from_toy(t);
        SystemConfig cfg;
        cfg.noise_power_w = t.noise;
        const RateReport r = oma_report(in.a, in.g, in.p, cfg);
        // user 0 in beam 0: half the slots, full beam power 0.5, beam 1 power 0.5 interferes
        const double sinr0 = 2.0 * 0.5 / (0.1 * 0.5 + 0.01);
        const double eve0 = 0.07 * 0.5 / (0.02 * 0.5 + 0.01);
        CHECK(r.user_rate[0][0] == doctest::Approx(0.5 * std::log2(1 + sinr0)).epsilon(1e-13));
        CHECK(r.eve_rate[0][0] == doctest::Approx(0.5 * std::log2(1 + eve0)).epsilon(1e-13));
        CHECK(r.total_power == doctest::Approx(1.0));
    }

    TEST_CASE("effective gains follow the composite channel")
    {
        const ConfigBundle b = load_config(testutil::kTable1);
        const ChannelSet ch = build_channels(b.system, b.scenario);
        std::mt19937_64 rng(4);
        PrecoderSet pre;
        pre.analog.F = testutil::random_cmat(64, 4, rng);
        pre.digital.V = testutil::random_cmat(4, 4, rng);
        cvec theta(20);
        std::uniform_real_distribution<double> ang(0, 2 * kPi);
        for (int i = 0; i < 20; ++i)
            theta(i) = std::polar(1.0, ang(rng));
        const EffectiveGains g = effective_gains(ch, pre, theta);
        for (int u = 0; u < ch.n_users(); ++u)
        {
            const Eigen::RowVectorXcd h = ch.user_beta[u] * ch.user_rows[u] * theta.asDiagonal() * ch.bs_irs;
            for (int l = 0; l < 4; ++l)
            {
                const double direct = std::norm((h * pre.analog.F * pre.digital.V.col(l))(0, 0));
                CHECK(testutil::rel_err(g.user(u, l), direct) < 1e-9);
            }
        }
    }

    TEST_CASE("report CSV has one row per user")
    {
        const Instance in = from_toy(toys()[2]);
        SystemConfig cfg;
        std::ostringstream os;
        write_report_csv(secrecy_report(in.a, in.g, in.p, cfg), os);
        const std::string s = os.str();
        CHECK(std::count(s.begin(), s.end(), '\n') >= 6);
    }
}
