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

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace irssec
{

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string to_string(SweepParameter p)
{
    switch (p)
    {
    case SweepParameter::TransmitPowerDbm:
        return "power-dbm";
    case SweepParameter::SnrDb:
        return "snr-db";
    case SweepParameter::NIrs:
        return "n-irs";
    case SweepParameter::NTx:
        return "n-tx";
    case SweepParameter::MinRate:
        return "min-rate";
    }
    return "?";
}

SweepParameter parse_sweep_parameter(const std::string &text)
{
    for (auto p : {SweepParameter::TransmitPowerDbm, SweepParameter::SnrDb, SweepParameter::NIrs,
                   SweepParameter::NTx, SweepParameter::MinRate})
        if (to_string(p) == text)
            return p;
    throw std::invalid_argument("unknown sweep parameter '" + text + "'");
}

std::string to_string(Baseline b)
{
    switch (b)
    {
    case Baseline::Optimized:
        return "opt";
    case Baseline::RandomIrs:
        return "random-irs";
    case Baseline::Oma:
        return "oma";
    }
    return "?";
}

Baseline parse_baseline(const std::string &text)
{
    for (auto b : {Baseline::Optimized, Baseline::RandomIrs, Baseline::Oma})
        if (to_string(b) == text)
            return b;
    throw std::invalid_argument("unknown baseline '" + text + "' (opt, random-irs, oma)");
}

std::string Variant::name() const
{
    return to_string(architecture) + "-" + to_string(baseline);
}

SystemConfig apply_sweep_value(SystemConfig cfg, SweepParameter p, double x)
{
    switch (p)
    {
    case SweepParameter::TransmitPowerDbm:
        cfg.total_power_w = std::pow(10.0, (x - 30.0) / 10.0);
        break;
    case SweepParameter::SnrDb:
        cfg.total_power_w = cfg.noise_power_w * std::pow(10.0, x / 10.0);
        break;
    case SweepParameter::NIrs:
        cfg.n_irs = int(std::lround(x));
        break;
    case SweepParameter::NTx:
        cfg.n_tx = int(std::lround(x));
        break;
    case SweepParameter::MinRate:
        cfg.min_rate = x;
        break;
    }
    cfg.validate();
    return cfg;
}

std::vector<Variant> SweepSpec::variants() const
{
    std::vector<Variant> v;
    for (auto arch : architectures)
        for (auto b : baselines)
            v.push_back({arch, b});
    return v;
}

void SweepSpec::validate() const
{
    if (grid.empty())
        throw std::invalid_argument("sweep grid is empty");
    if (seeds < 1)
        throw std::invalid_argument("sweep needs at least one seed");
    if (architectures.empty() || baselines.empty())
        throw std::invalid_argument("sweep needs at least one architecture and one baseline");
    if (threads < 1)
        throw std::invalid_argument("threads must be >= 1");
}

Scenario usable_scenario(const SystemConfig &cfg, std::uint64_t seed)
{
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt)
    {
        Scenario sc = generate_scenario(cfg, seed + attempt * 0x9E3779B97F4A7C15ull);
        const ChannelSet ch = build_channels(cfg, sc);
        const cmat rows = ch.irs_side_rows();
        if (!assign_users(rows, select_heads(rows, cfg.n_clusters(), cfg.cluster_corr_threshold))
                 .has_empty_cluster())
            return sc;
    }
    throw ClusteringError("no scenario with non-empty clusters after 64 draws from seed " + std::to_string(seed));
}

namespace
{
SweepRow failed_row(const Variant &v, double x, std::uint64_t seed, const std::string &what)
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return SweepRow{v.name(), x, seed, nan, nan, 0, 0.0, what.empty() ? "error" : what};
}

std::vector<SweepRow> run_point(const SweepSpec &spec, const SystemConfig &base, const SolverSettings &settings,
                                double x, std::uint64_t seed)
{
    const auto variants = spec.variants();
    std::vector<SweepRow> rows;
    SystemConfig cfg;
    Scenario scenario;
    try
    {
        cfg = apply_sweep_value(base, spec.parameter, x);
        scenario = usable_scenario(cfg, seed);
    }
    catch (const std::exception &e)
    {
        for (const auto &v : variants)
            rows.push_back(failed_row(v, x, seed, e.what()));
        return rows;
    }

    for (auto arch : spec.architectures)
    {
        SystemConfig c = cfg;
        c.architecture = arch;
        std::optional<Solution> optimized;
        std::string opt_error;
        for (auto b : spec.baselines)
        {
            const Variant v{arch, b};
            try
            {
                Solution sol;
                RateReport rep;
                if (b == Baseline::RandomIrs)
                {
                    AoOptions o;
                    o.optimize_phase = false;
                    o.theta0 = initial_phases(c.n_irs, PhaseInit{true, seed ^ 0x5EEDull});
                    sol = run_ao(c, scenario, settings, o);
                    rep = sol.report;
                }
                else
                {
                    if (!optimized && opt_error.empty())
                    {
                        try
                        {
                            optimized = run_ao(c, scenario, settings);
                        }
                        catch (const std::exception &e)
                        {
                            opt_error = e.what();
                        }
                    }
                    if (!optimized)
                        throw std::runtime_error(opt_error);
                    sol = *optimized;
                    rep = sol.report;
                    if (b == Baseline::Oma)
                    {
                        const ChannelSet ch = build_channels(c, scenario);
                        rep = oma_report(sol.assignment, effective_gains(ch, sol.precoders, sol.theta), sol.p, c);
                    }
                }
                rows.push_back(SweepRow{v.name(), x, seed, rep.sum_secrecy, rep.see, sol.outer_iterations,
                                        spec.timing ? sol.wall_ms : 0.0, {}});
            }
            catch (const std::exception &e)
            {
                rows.push_back(failed_row(v, x, seed, e.what()));
            }
        }
    }
    return rows;
}
} // namespace

std::vector<SweepRow> run_sweep(const SweepSpec &spec, const SystemConfig &cfg, const SolverSettings &settings)
{
    spec.validate();
    const size_t n_tasks = spec.grid.size() * size_t(spec.seeds);
    std::vector<std::vector<SweepRow>> results(n_tasks);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t t = next++; t < n_tasks; t = next++)
        {
            const double x = spec.grid[t / size_t(spec.seeds)];
            const std::uint64_t seed = spec.first_seed + t % size_t(spec.seeds);
            results[t] = run_point(spec, cfg, settings, x, seed);
        }
    };
    if (spec.threads == 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        for (int k = 0; k < spec.threads; ++k)
            pool.emplace_back(worker);
    }
    std::vector<SweepRow> rows;
    for (auto &r : results)
        rows.insert(rows.end(), r.begin(), r.end());
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow> &rows, std::ostream &out)
{
    out << "variant,x,seed,sum_secrecy,see,outer_iters,wall_ms\n";
    for (const auto &r : rows)
        out << r.variant << ',' << format_double(r.x) << ',' << r.seed << ',' << format_double(r.sum_secrecy) << ','
            << format_double(r.see) << ',' << r.outer_iters << ',' << format_double(r.wall_ms) << '\n';
}

namespace
{
double parse_double(const std::string &s)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}
} // namespace

std::vector<SweepRow> read_sweep_csv(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line) || line != "variant,x,seed,sum_secrecy,see,outer_iters,wall_ms")
        throw std::invalid_argument("sweep CSV: unexpected header");
    std::vector<SweepRow> rows;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');)
            f.push_back(cell);
        if (f.size() != 7)
            throw std::invalid_argument("sweep CSV: expected 7 columns in '" + line + "'");
        SweepRow r;
        r.variant = f[0];
        r.x = parse_double(f[1]);
        r.seed = std::stoull(f[2]);
        r.sum_secrecy = parse_double(f[3]);
        r.see = parse_double(f[4]);
        r.outer_iters = std::stoi(f[5]);
        r.wall_ms = parse_double(f[6]);
        if (std::isnan(r.sum_secrecy))
            r.error = "failed";
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<Series> aggregate(const std::vector<SweepRow> &rows)
{
    std::vector<Series> out;
    std::map<std::string, size_t> index;
    // per series, per x: values in first-seen x order
    std::vector<std::vector<std::pair<double, std::vector<const SweepRow *>>>> groups;
    for (const auto &r : rows)
    {
        auto [it, inserted] = index.try_emplace(r.variant, out.size());
        if (inserted)
        {
            out.push_back({r.variant, {}});
            groups.emplace_back();
        }
        auto &g = groups[it->second];
        auto slot = std::find_if(g.begin(), g.end(), [&](const auto &e) { return e.first == r.x; });
        if (slot == g.end())
        {
            g.emplace_back(r.x, std::vector<const SweepRow *>{});
            slot = g.end() - 1;
        }
        if (r.error.empty() && std::isfinite(r.sum_secrecy))
            slot->second.push_back(&r);
    }
    auto stats = [](const std::vector<double> &v, double &mean, double &se) {
        mean = se = std::numeric_limits<double>::quiet_NaN();
        if (v.empty())
            return;
        mean = 0.0;
        for (double a : v)
            mean += a;
        mean /= double(v.size());
        se = 0.0;
        if (v.size() > 1)
        {
            double ss = 0.0;
            for (double a : v)
                ss += (a - mean) * (a - mean);
            se = std::sqrt(ss / double(v.size() - 1) / double(v.size()));
        }
    };
    for (size_t s = 0; s < out.size(); ++s)
        for (const auto &[x, members] : groups[s])
        {
            std::vector<double> rate, see;
            for (const auto *r : members)
            {
                rate.push_back(r->sum_secrecy);
                see.push_back(r->see);
            }
            SeriesPoint p;
            p.x = x;
            p.n = int(members.size());
            stats(rate, p.mean, p.stderr_);
            stats(see, p.see_mean, p.see_stderr);
            out[s].points.push_back(p);
        }
    return out;
}

std::vector<std::filesystem::path> emit_plot_data(const std::vector<SweepRow> &rows,
                                                  const std::filesystem::path &dir)
{
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const auto &series : aggregate(rows))
    {
        const auto path = dir / (series.variant + ".csv");
        std::ofstream out(path);
        if (!out)
            throw std::runtime_error("cannot write " + path.string());
        out << "x,mean,stderr,see_mean,see_stderr,n\n";
        for (const auto &p : series.points)
            out << format_double(p.x) << ',' << format_double(p.mean) << ',' << format_double(p.stderr_) << ','
                << format_double(p.see_mean) << ',' << format_double(p.see_stderr) << ',' << p.n << '\n';
        written.push_back(path);
    }
    return written;
}

std::vector<ConvergenceRow> run_convergence(const SystemConfig &cfg, const Scenario &scenario,
                                            const SolverSettings &settings,
                                            const std::vector<Architecture> &architectures)
{
    std::vector<ConvergenceRow> rows;
    for (auto arch : architectures)
    {
        SystemConfig c = cfg;
        c.architecture = arch;
        const Solution opt = run_ao(c, scenario, settings);
        for (size_t k = 0; k < opt.trace.size(); ++k)
            rows.push_back({Variant{arch, Baseline::Optimized}.name(), int(k), opt.trace[k]});

        AoOptions o;
        o.optimize_phase = false;
        o.theta0 = initial_phases(c.n_irs, PhaseInit{true, scenario.seed ^ 0x5EEDull});
        const Solution rnd = run_ao(c, scenario, settings, o);
        for (size_t k = 0; k < rnd.power_trace.size(); ++k)
            rows.push_back({Variant{arch, Baseline::RandomIrs}.name(), int(k), rnd.power_trace[k]});
    }
    return rows;
}

void write_convergence_csv(const std::vector<ConvergenceRow> &rows, std::ostream &out)
{
    out << "variant,iteration,sum_secrecy\n";
    for (const auto &r : rows)
        out << r.variant << ',' << r.iteration << ',' << format_double(r.sum_secrecy) << '\n';
}

} // namespace irssec
