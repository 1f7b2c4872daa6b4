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

#include "irssec/experiments.hpp"

#include "toys.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace irssec;

namespace
{
SolverSettings quick()
{
    SolverSettings s;
    s.outer_max = 3;
    s.phase_max = 5;
    s.randomizations = 10;
    return s;
}

SweepSpec small_sweep()
{
    SweepSpec spec;
    spec.parameter = SweepParameter::TransmitPowerDbm;
    spec.grid = {20, 25, 30};
    spec.seeds = 1;
    spec.architectures = {Architecture::FullyConnected, Architecture::SubConnected};
    spec.baselines = {Baseline::Optimized, Baseline::RandomIrs, Baseline::Oma};
    spec.timing = false;
    return spec;
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
} // namespace

TEST_SUITE("experiments")
{
    TEST_CASE("names round trip")
    {
        for (auto p : {SweepParameter::TransmitPowerDbm, SweepParameter::SnrDb, SweepParameter::NIrs,
                       SweepParameter::NTx, SweepParameter::MinRate})
            CHECK(parse_sweep_parameter(to_string(p)) == p);
        for (auto b : {Baseline::Optimized, Baseline::RandomIrs, Baseline::Oma})
            CHECK(parse_baseline(to_string(b)) == b);
        CHECK_THROWS(parse_baseline("tdma"));
        CHECK(Variant{Architecture::SubConnected, Baseline::RandomIrs}.name() == "sc-random-irs");
    }

    TEST_CASE("sweep values map onto the configuration")
    {
        SystemConfig cfg;
        CHECK(apply_sweep_value(cfg, SweepParameter::TransmitPowerDbm, 30).total_power_w == doctest::Approx(1.0));
        CHECK(apply_sweep_value(cfg, SweepParameter::TransmitPowerDbm, 20).total_power_w == doctest::Approx(0.1));
        CHECK(apply_sweep_value(cfg, SweepParameter::SnrDb, 20).total_power_w == doctest::Approx(1.0));
        CHECK(apply_sweep_value(cfg, SweepParameter::NIrs, 40).n_irs == 40);
        CHECK(apply_sweep_value(cfg, SweepParameter::MinRate, 0.5).min_rate == 0.5);
        SystemConfig sc = cfg;
        sc.architecture = Architecture::SubConnected;
        CHECK_THROWS_AS(apply_sweep_value(sc, SweepParameter::NTx, 30), ConfigError);
        CHECK(apply_sweep_value(sc, SweepParameter::NTx, 32).n_tx == 32);
        SweepSpec bad;
        CHECK_THROWS(bad.validate());
    }

    TEST_CASE("sweep rows, CSV and plot files")
    {
        const SystemConfig cfg = toys::small_system(4);
        const SweepSpec spec = small_sweep();
        const std::vector<SweepRow> rows = run_sweep(spec, cfg, quick());
        REQUIRE(rows.size() == 3 * spec.variants().size());
        for (const auto &r : rows)
        {
            CHECK(r.error.empty());
            CHECK(std::isfinite(r.sum_secrecy));
            CHECK(r.wall_ms == 0.0);
        }

        std::ostringstream a;
        write_sweep_csv(rows, a);
        std::istringstream in(a.str());
        const std::vector<SweepRow> back = read_sweep_csv(in);
        REQUIRE(back.size() == rows.size());
        std::ostringstream b;
        write_sweep_csv(back, b);
        CHECK(a.str() == b.str());
        CHECK(a.str().rfind("variant,x,seed,sum_secrecy,see,outer_iters,wall_ms\n", 0) == 0);

        // a second run is byte-identical
        std::ostringstream again;
        write_sweep_csv(run_sweep(spec, cfg, quick()), again);
        CHECK(again.str() == a.str());

        const auto dir = std::filesystem::temp_directory_path() / "irssec_plot_test";
        std::filesystem::remove_all(dir);
        const auto files = emit_plot_data(rows, dir);
        CHECK(files.size() == spec.variants().size());
        const std::string fc = slurp(dir / "fc-opt.csv");
        std::istringstream lines(fc);
        std::string line;
        std::getline(lines, line);
        CHECK(line == "x,mean,stderr,see_mean,see_stderr,n");
        std::vector<double> xs;
        while (std::getline(lines, line))
            xs.push_back(std::stod(line.substr(0, line.find(','))));
        CHECK(xs == std::vector<double>{20, 25, 30});
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("aggregation")
    {
        std::vector<SweepRow> rows;
        rows.push_back({"fc-opt", 1.0, 0, 2.0, 0.2, 3, 0, ""});
        rows.push_back({"fc-opt", 1.0, 1, 4.0, 0.4, 3, 0, ""});
        rows.push_back({"fc-opt", 2.0, 0, std::nan(""), std::nan(""), 0, 0, "boom"});
        rows.push_back({"fc-opt", 2.0, 1, 5.0, 0.5, 3, 0, ""});
        const auto series = aggregate(rows);
        REQUIRE(series.size() == 1);
        REQUIRE(series[0].points.size() == 2);
        CHECK(series[0].points[0].mean == doctest::Approx(3.0));
        CHECK(series[0].points[0].stderr_ == doctest::Approx(1.0)); // sd sqrt(2) over sqrt(2)
        CHECK(series[0].points[0].n == 2);
        CHECK(series[0].points[1].mean == doctest::Approx(5.0));
        CHECK(series[0].points[1].n == 1);
        CHECK(format_double(std::nan("")) == "nan");
        CHECK(format_double(0.1) == "0.1");
    }
}
