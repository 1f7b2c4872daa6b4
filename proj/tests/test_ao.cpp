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

#include "irssec/ao.hpp"
#include "irssec/power_alloc.hpp"

#include "toys.hpp"
#include "util.hpp"

#include <doctest.h>

using namespace irssec;

namespace
{
SolverSettings quick()
{
    SolverSettings s;
    s.outer_max = 6;
    s.phase_max = 10;
    s.randomizations = 20;
    return s;
}

SystemConfig single_user()
{
    const std::string ini = "[system]\nn_tx = 16\nn_irs = 4\nn_rf = 1\nusers_per_cluster = 1\ncarrier_freq_hz = 340e9\n"
                            "quant_bits = 4\nabsorption_per_m = 0.0033\nnoise_power_w = 0.01\ntotal_power_w = 1\n"
                            "path_comp = 1e8\n[scenario]\nseed = 1\n";
    return load_config(ini).system;
}
} // namespace

TEST_SUITE("ao")
{
    TEST_CASE("one power-only pass equals a direct power solve")
    {
        const SystemConfig cfg = toys::small_system(4);
        SolverSettings s = quick();
        s.outer_max = 1;
        const ChannelSet ch = build_channels(cfg, usable_scenario(cfg, 2));
        AoOptions opt;
        opt.optimize_phase = false;
        opt.theta0 = initial_phases(4, PhaseInit{true, 77});
        const Solution sol = run_ao(cfg, ch, s, opt);
        CHECK(sol.theta == *opt.theta0);

        const SurrogateModel m = build_surrogate(ch, sol.precoders, sol.theta, sol.assignment, cfg.noise_power_w,
                                                 rvec::Ones(cfg.n_users()));
        const PowerResult direct =
            solve_power(ch, sol.precoders, sol.theta, sol.assignment, cfg, s, initial_power(m, cfg));
        CHECK(sol.report.sum_secrecy == doctest::Approx(direct.objective).epsilon(1e-9));
    }

    TEST_CASE("trace is monotone and the run converges")
    {
        const SystemConfig cfg = toys::small_system(6);
        for (std::uint64_t seed : {0u, 1u, 2u})
        {
            const Solution sol = run_ao(cfg, usable_scenario(cfg, seed), quick());
            REQUIRE(sol.trace.size() >= 2);
            for (size_t k = 1; k < sol.trace.size(); ++k)
                CHECK(sol.trace[k] >= sol.trace[k - 1] - 1e-6 * std::abs(sol.trace[k - 1]));
            CHECK(sol.report.sum_secrecy == doctest::Approx(sol.trace.back()).epsilon(1e-9));
            CHECK(sol.report.total_power <= cfg.total_power_w * (1 + 1e-9));
            CHECK((sol.theta.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
        }
    }

    TEST_CASE("optimized phases beat their random start")
    {
        const SystemConfig cfg = toys::small_system(6);
        const ChannelSet ch = build_channels(cfg, usable_scenario(cfg, 4));
        AoOptions fixed;
        fixed.optimize_phase = false;
        fixed.theta0 = initial_phases(6, PhaseInit{true, 5});
        AoOptions full;
        full.theta0 = fixed.theta0;
        const double base = run_ao(cfg, ch, quick(), fixed).report.sum_secrecy;
        CHECK(run_ao(cfg, ch, quick(), full).report.sum_secrecy >= base - 1e-9);
    }

    TEST_CASE("single user single beam takes the whole budget")
    {
        const SystemConfig cfg = single_user();
        const ChannelSet ch = build_channels(cfg, usable_scenario(cfg, 0));
        const Solution sol = run_ao(cfg, ch, quick());
        const EffectiveGains g = effective_gains(ch, sol.precoders, sol.theta);
        if (g.user(0, 0) > g.eve(0))
        {
            CHECK(sol.p.watts[0] == doctest::Approx(1.0).epsilon(1e-8));
            const double closed = std::log2(1 + g.user(0, 0) / 0.01) - std::log2(1 + g.eve(0) / 0.01);
            CHECK(sol.report.sum_secrecy == doctest::Approx(closed).epsilon(1e-8));
        }
        else
        {
            CHECK(sol.report.sum_secrecy <= 1e-9);
        }
    }

    TEST_CASE("a power step that switches everyone off does not end the run")
    {
        // At 10 dBm with identity phases Eve beats every user on this seed.
        SystemConfig cfg = load_config(testutil::kTable1).system;
        cfg.total_power_w = 0.01;
        const ChannelSet ch = build_channels(cfg, usable_scenario(cfg, 0));
        const Solution sol = run_ao(cfg, ch, SolverSettings{});
        REQUIRE(sol.trace.size() >= 3);
        CHECK(sol.trace[1] == doctest::Approx(0.0).epsilon(1e-12));
        for (size_t k = 1; k < sol.trace.size(); ++k)
            CHECK(sol.trace[k] >= sol.trace[k - 1] - 1e-6 * std::abs(sol.trace[k - 1]));
        CHECK(sol.report.sum_secrecy > 0.5);
        CHECK(sol.phase_updates >= 1);
    }

    TEST_CASE("runs are reproducible")
    {
        const SystemConfig cfg = toys::small_system(4);
        const Scenario sc = usable_scenario(cfg, 3);
        const Solution a = run_ao(cfg, sc, quick());
        const Solution b = run_ao(cfg, sc, quick());
        CHECK(a.trace == b.trace);
        CHECK(a.theta == b.theta);
        CHECK(a.p.watts == b.p.watts);
    }

    TEST_CASE("initial phases")
    {
        CHECK(initial_phases(5, PhaseInit{}) == cvec::Ones(5));
        const cvec r = initial_phases(5, PhaseInit{true, 3});
        CHECK((r.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-15);
        CHECK(r == initial_phases(5, PhaseInit{true, 3}));
        CHECK(r != initial_phases(5, PhaseInit{true, 4}));
    }
}
