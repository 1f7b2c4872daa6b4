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

#include "irssec/channel.hpp"

#include "oracles.hpp"
#include "util.hpp"

#include <doctest.h>

#include <Eigen/SVD>

#include <sstream>

using namespace irssec;

TEST_SUITE("channel")
{
    TEST_CASE("path loss")
    {
        const double v = path_loss(340e9, 15.0, 0.0033);
        CHECK(v == doctest::Approx(4.566e-6).epsilon(1e-3));
        CHECK(testutil::rel_err(v, oracle::path_loss(340e9, 15.0, 0.0033)) < 1e-12);
        CHECK(path_loss(100e9, 20.0, 0.0) == doctest::Approx(path_loss(100e9, 10.0, 0.0) / 2).epsilon(1e-14));
        CHECK(path_loss(200e9, 10.0, 0.0) == doctest::Approx(path_loss(100e9, 10.0, 0.0) / 2).epsilon(1e-14));
        CHECK_THROWS_AS(path_loss(0.0, 1.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(path_loss(1e9, -1.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(path_loss(1e9, 1.0, -0.1), std::invalid_argument);
    }

    TEST_CASE("steering vectors")
    {
        const cvec a = steering(4, 0.0).elements;
        for (int k = 0; k < 4; ++k)
            CHECK(std::abs(a(k) - cplx(0.5, 0.0)) < 1e-15);
        const cvec b = steering(2, 1.0).elements;
        CHECK(std::abs(b(0) - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);
        CHECK(std::abs(b(1) - cplx(-1 / std::sqrt(2.0), 0)) < 1e-15);
        const cvec c = steering(4, 0.5).elements;
        const cplx expect[4] = {{0.5, 0}, {0, 0.5}, {-0.5, 0}, {0, -0.5}};
        for (int k = 0; k < 4; ++k)
            CHECK(std::abs(c(k) - expect[k]) < 1e-15);
        CHECK_THROWS(steering(0, 0.1));

        for (double psi : {-0.9, -0.3, 0.17, 0.77})
        {
            const cvec s = steering(13, psi).elements;
            const auto o = oracle::steering(13, psi);
            CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-14));
            for (int k = 0; k < 13; ++k)
            {
                CHECK(std::abs(s(k)) == doctest::Approx(1 / std::sqrt(13.0)).epsilon(1e-14));
                CHECK(std::abs(s(k) - o[k]) < 1e-13);
            }
        }
    }

    TEST_CASE("half-wavelength spacing gives psi = sin(angle)")
    {
        const double f = 340e9;
        CHECK(spatial_frequency(kSpeedOfLight / (2 * f), f, 0.4) == doctest::Approx(std::sin(0.4)));
    }

    TEST_CASE("channel set structure")
    {
        const ConfigBundle b = load_config(testutil::kTable1);
        const ChannelSet ch = build_channels(b.system, b.scenario);
        CHECK(ch.n_irs() == 20);
        CHECK(ch.n_tx() == 64);
        CHECK(ch.n_users() == 10);

        Eigen::JacobiSVD<cmat> svd(ch.bs_irs);
        CHECK(svd.singularValues()(0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(svd.singularValues()(1) < 1e-12);

        const double q_bs = oracle::path_loss(340e9, 15.0, 0.0033);
        const double gr = b.system.rx_gain_linear();
        const double beta_e = 1e8 * 1.0 * gr * q_bs * oracle::path_loss(340e9, 5.0, 0.0033);
        CHECK(testutil::rel_err(ch.eve_beta, beta_e) < 1e-12);
        for (int u = 0; u < ch.n_users(); ++u)
        {
            const double d = b.scenario.users[u].distance_m;
            CHECK(testutil::rel_err(ch.user_beta[u], 1e8 * gr * q_bs * oracle::path_loss(340e9, d, 0.0033)) <
                  1e-12);
            const auto o = oracle::steering(20, std::sin(b.scenario.users[u].angle_rad));
            for (int n = 0; n < 20; ++n)
                CHECK(std::abs(ch.user_rows[u](n) - o[n]) < 1e-12);
        }
    }

    TEST_CASE("composite channel and beta symmetry")
    {
        ConfigBundle b = load_config(testutil::kTable1);
        const ChannelSet ch = build_channels(b.system, b.scenario);
        std::mt19937_64 rng(3);
        const cvec raw = testutil::random_cmat(20, 1, rng).col(0);
        const cvec theta = raw.array() / raw.array().abs();
        const Eigen::RowVectorXcd g = ch.composite(2, theta);
        const Eigen::RowVectorXcd direct = ch.user_beta[2] * ch.user_rows[2] * theta.asDiagonal() * ch.bs_irs;
        CHECK((g - direct).norm() < 1e-12 * direct.norm());

        std::swap(b.scenario.users[0].distance_m, b.scenario.users[1].distance_m);
        const ChannelSet sw = build_channels(b.system, b.scenario);
        CHECK(sw.user_beta[0] == doctest::Approx(ch.user_beta[1]).epsilon(1e-14));
        CHECK(sw.user_beta[1] == doctest::Approx(ch.user_beta[0]).epsilon(1e-14));

        // farther is weaker
        Scenario far = b.scenario;
        far.users[0].distance_m += 1.0;
        CHECK(build_channels(b.system, far).user_beta[0] < sw.user_beta[0]);
    }

    TEST_CASE("channel dump")
    {
        const ConfigBundle b = load_config(testutil::kTable1);
        const ChannelSet ch = build_channels(b.system, b.scenario);
        std::ostringstream out;
        write_channels_csv(ch, out);
        const std::string s = out.str();
        CHECK(s.rfind("link,row,col,re,im\n", 0) == 0);
        CHECK(s.find("beta,-1,") != std::string::npos);
    }
}
