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

#ifndef IRSSEC_EXPERIMENTS_HPP
#define IRSSEC_EXPERIMENTS_HPP

#include "irssec/ao.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace irssec
{

enum class SweepParameter
{
    TransmitPowerDbm, // P_T = 10^((x - 30) / 10) W
    SnrDb,            // P_T = noise * 10^(x / 10)
    NIrs,
    NTx,
    MinRate
};

std::string to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(const std::string &text);

enum class Baseline
{
    Optimized, // full alternating optimization
    RandomIrs, // power allocation only, random fixed phases
    Oma        // optimized solution evaluated with orthogonal access
};

std::string to_string(Baseline b);
Baseline parse_baseline(const std::string &text);

struct Variant
{
    Architecture architecture;
    Baseline baseline;

    std::string name() const; // e.g. "fc-opt", "sc-random-irs", "fc-oma"
};

// Applies grid value x of the swept parameter to cfg.
SystemConfig apply_sweep_value(SystemConfig cfg, SweepParameter p, double x);

struct SweepSpec
{
    SweepParameter parameter = SweepParameter::TransmitPowerDbm;
    std::vector<double> grid;
    int seeds = 1;
    std::uint64_t first_seed = 0;
    std::vector<Architecture> architectures{Architecture::FullyConnected};
    std::vector<Baseline> baselines{Baseline::Optimized};
    bool timing = true; // false writes wall_ms = 0 so the CSV is reproducible
    int threads = 1;

    std::vector<Variant> variants() const; // architecture-major order
    void validate() const;
};

struct SweepRow
{
    std::string variant;
    double x = 0.0;
    std::uint64_t seed = 0;
    double sum_secrecy = 0.0; // NaN when the point failed
    double see = 0.0;
    int outer_iters = 0;
    double wall_ms = 0.0;
    std::string error; // empty on success
};

// Rows are ordered by grid point, then seed, then variant. A failing point
// is recorded with NaN metrics and the sweep carries on.
std::vector<SweepRow> run_sweep(const SweepSpec &spec, const SystemConfig &cfg, const SolverSettings &settings);

// Scenario for `seed`, redrawn with derived seeds while the clustering
// leaves a beam empty (at most 64 attempts).
Scenario usable_scenario(const SystemConfig &cfg, std::uint64_t seed);

// variant,x,seed,sum_secrecy,see,outer_iters,wall_ms
void write_sweep_csv(const std::vector<SweepRow> &rows, std::ostream &out);
std::vector<SweepRow> read_sweep_csv(std::istream &in);

struct SeriesPoint
{
    double x = 0.0;
    double mean = 0.0;
    double stderr_ = 0.0;
    double see_mean = 0.0;
    double see_stderr = 0.0;
    int n = 0; // successful seeds
};

struct Series
{
    std::string variant;
    std::vector<SeriesPoint> points; // in grid order
};

// Mean and standard error over seeds, failed rows skipped. Series follow
// the order in which variants first appear.
std::vector<Series> aggregate(const std::vector<SweepRow> &rows);

// One <variant>.csv per series with columns
// x,mean,stderr,see_mean,see_stderr,n. Returns the written paths.
std::vector<std::filesystem::path> emit_plot_data(const std::vector<SweepRow> &rows,
                                                  const std::filesystem::path &dir);

struct ConvergenceRow
{
    std::string variant;
    int iteration;
    double sum_secrecy;
};

// AO traces for each architecture plus the SCA trace of the random-IRS
// baseline. Columns: variant,iteration,sum_secrecy.
std::vector<ConvergenceRow> run_convergence(const SystemConfig &cfg, const Scenario &scenario,
                                            const SolverSettings &settings,
                                            const std::vector<Architecture> &architectures);
void write_convergence_csv(const std::vector<ConvergenceRow> &rows, std::ostream &out);

// Shortest round-trip decimal form ("nan" for NaN).
std::string format_double(double v);

} // namespace irssec

#endif
