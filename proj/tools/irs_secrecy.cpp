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

// irs-secrecy: command-line front end for single solves and sweeps.

#include "irssec/experiments.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace irssec;

namespace
{
struct Common
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string arch;
    std::string out = "out";
    std::optional<int> randomizations;
    std::optional<std::uint64_t> phase_seed;
    std::string init;
    bool freeze_analog = false;
    bool no_timing = false;
};

void add_common(CLI::App *app, Common &c)
{
    app->add_option("--config", c.config, "INI configuration file")->required()->check(CLI::ExistingFile);
    app->add_option("--seed", c.seed, "scenario seed (overrides [scenario] seed and placements)");
    app->add_option("--out", c.out, "output directory")->capture_default_str();
    app->add_option("--randomizations", c.randomizations, "Gaussian randomization draws");
    app->add_option("--phase-seed", c.phase_seed, "seed of the randomization stream");
    app->add_option("--init", c.init, "initial IRS phases: identity | random:<seed>");
    app->add_flag("--freeze-analog", c.freeze_analog, "keep the analog precoder from the first iteration");
    app->add_flag("--no-timing", c.no_timing, "write wall_ms = 0 so outputs are byte-reproducible");
}

struct Loaded
{
    SystemConfig cfg;
    Scenario scenario;
    SolverSettings solver;
};

Loaded load(const Common &c)
{
    ConfigBundle b = load_config_file(c.config);
    if (c.randomizations)
        b.solver.randomizations = *c.randomizations;
    if (c.phase_seed)
        b.solver.phase_seed = *c.phase_seed;
    if (!c.init.empty())
        b.solver.init = parse_phase_init(c.init);
    if (c.freeze_analog)
        b.solver.freeze_analog = true;
    b.solver.validate();
    Loaded l{b.system, b.scenario, b.solver};
    if (c.seed)
        l.scenario = usable_scenario(l.cfg, *c.seed);
    return l;
}

std::ofstream open_out(const fs::path &path)
{
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    return out;
}

void print_clusters(const Solution &s, std::ostream &os)
{
    for (int l = 0; l < s.assignment.n_clusters(); ++l)
    {
        os << "cluster " << l << " head " << s.assignment.heads[l] << ":";
        for (int u : s.assignment.members[l])
            os << ' ' << u;
        os << '\n';
    }
}

int cmd_run(const Common &c, const std::string &baseline, bool dump_channels, bool clusters)
{
    Loaded l = load(c);
    if (!c.arch.empty())
        l.cfg.architecture = parse_architecture(c.arch);
    const ChannelSet ch = build_channels(l.cfg, l.scenario);
    const Baseline b = baseline.empty() ? Baseline::Optimized : parse_baseline(baseline);

    AoOptions o;
    if (b == Baseline::RandomIrs)
    {
        o.optimize_phase = false;
        o.theta0 = initial_phases(l.cfg.n_irs, PhaseInit{true, l.scenario.seed ^ 0x5EEDull});
    }
    const Solution s = run_ao(l.cfg, ch, l.solver, o);
    RateReport rep = s.report;
    if (b == Baseline::Oma)
        rep = oma_report(s.assignment, effective_gains(ch, s.precoders, s.theta), s.p, l.cfg);

    const fs::path dir(c.out);
    {
        auto out = open_out(dir / "report.csv");
        write_report_csv(rep, out);
    }
    if (dump_channels)
    {
        auto out = open_out(dir / "channels.csv");
        write_channels_csv(ch, out);
    }
    if (clusters)
        print_clusters(s, std::cout);

    const Variant v{l.cfg.architecture, b};
    std::cout << "variant " << v.name() << "\n"
              << "sum_secrecy " << format_double(rep.sum_secrecy) << "\n"
              << "see " << format_double(rep.see) << "\n"
              << "transmit_power_w " << format_double(rep.total_power) << "\n"
              << "feasible " << (rep.feasible ? "yes" : "no") << "\n"
              << "zero_forcing " << (s.precoders.zero_forcing ? "yes" : "pseudo-inverse") << "\n"
              << "outer_iters " << s.outer_iterations << (s.converged ? " (converged)" : "") << "\n"
              << "wall_ms " << format_double(c.no_timing ? 0.0 : s.wall_ms) << "\n";
    return 0;
}

int cmd_converge(const Common &c)
{
    const Loaded l = load(c);
    std::vector<Architecture> archs{Architecture::FullyConnected, Architecture::SubConnected};
    if (!c.arch.empty())
        archs = {parse_architecture(c.arch)};
    const auto rows = run_convergence(l.cfg, l.scenario, l.solver, archs);
    auto out = open_out(fs::path(c.out) / "convergence.csv");
    write_convergence_csv(rows, out);
    std::cout << "wrote " << (fs::path(c.out) / "convergence.csv").string() << " (" << rows.size() << " rows)\n";
    return 0;
}

struct SweepArgs
{
    std::vector<double> values;
    int seeds = 10;
    std::uint64_t first_seed = 0;
    std::vector<std::string> archs{"fc", "sc"};
    std::vector<std::string> baselines{"opt", "random-irs", "oma"};
    int threads = 1;
};

int cmd_sweep(const Common &c, const SweepArgs &a, SweepParameter param)
{
    const Loaded l = load(c);
    SweepSpec spec;
    spec.parameter = param;
    spec.grid = a.values;
    spec.seeds = a.seeds;
    spec.first_seed = c.seed.value_or(a.first_seed);
    spec.architectures.clear();
    for (const auto &s : a.archs)
        spec.architectures.push_back(parse_architecture(s));
    spec.baselines.clear();
    for (const auto &s : a.baselines)
        spec.baselines.push_back(parse_baseline(s));
    spec.timing = !c.no_timing;
    spec.threads = a.threads;

    const auto rows = run_sweep(spec, l.cfg, l.solver);
    const fs::path dir(c.out);
    {
        auto out = open_out(dir / "sweep.csv");
        write_sweep_csv(rows, out);
    }
    const auto files = emit_plot_data(rows, dir / "plot");
    int failed = 0;
    for (const auto &r : rows)
        if (!r.error.empty())
        {
            ++failed;
            std::cerr << "failed: " << r.variant << " x=" << format_double(r.x) << " seed=" << r.seed << ": "
                      << r.error << "\n";
        }
    std::cout << "wrote " << (dir / "sweep.csv").string() << " (" << rows.size() << " rows, " << failed
              << " failed) and " << files.size() << " series under " << (dir / "plot").string() << "\n";
    return 0;
}
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Secure IRS-assisted THz MIMO-NOMA downlink: alternating optimization and sweeps"};
    app.require_subcommand(1);

    Common common;
    std::string baseline;
    bool dump_channels = false, clusters = false;
    auto *run = app.add_subcommand("run", "single alternating-optimization solve");
    add_common(run, common);
    run->add_option("--arch", common.arch, "fc | sc (overrides the config)");
    run->add_option("--baseline", baseline, "random-irs | oma");
    run->add_flag("--dump-channels", dump_channels, "write channels.csv");
    run->add_flag("--print-clusters", clusters, "print the cluster assignment");

    auto *converge = app.add_subcommand("converge", "objective per outer iteration");
    add_common(converge, common);
    converge->add_option("--arch", common.arch, "fc | sc (default: both)");

    SweepArgs sweep;
    struct Entry
    {
        const char *name;
        const char *help;
        SweepParameter param;
        std::vector<double> defaults;
    };
    const std::vector<Entry> entries{
        {"sweep-power", "sum secrecy rate and SEE versus transmit power (dBm)", SweepParameter::TransmitPowerDbm,
         {10, 20, 30}},
        {"sweep-snr", "versus transmit SNR P_T / noise (dB)", SweepParameter::SnrDb, {10, 20, 30}},
        {"sweep-nirs", "versus the number of IRS elements", SweepParameter::NIrs, {10, 20, 30}},
    };
    std::vector<CLI::App *> sweeps;
    for (const auto &e : entries)
    {
        auto *s = app.add_subcommand(e.name, e.help);
        add_common(s, common);
        s->add_option("--values", sweep.values, "grid values (comma separated)")->delimiter(',');
        s->add_option("--seeds", sweep.seeds, "seeds per grid point")->capture_default_str();
        s->add_option("--first-seed", sweep.first_seed, "first scenario seed")->capture_default_str();
        s->add_option("--arch", sweep.archs, "architectures (fc,sc)")->delimiter(',');
        s->add_option("--baseline", sweep.baselines, "variants (opt,random-irs,oma)")->delimiter(',');
        s->add_option("--threads", sweep.threads, "worker threads")->capture_default_str();
        sweeps.push_back(s);
    }

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
            return cmd_run(common, baseline, dump_channels, clusters);
        if (*converge)
            return cmd_converge(common);
        for (size_t k = 0; k < sweeps.size(); ++k)
            if (*sweeps[k])
            {
                if (sweep.values.empty())
                    sweep.values = entries[k].defaults;
                return cmd_sweep(common, sweep, entries[k].param);
            }
    }
    catch (const ConfigError &e)
    {
        std::cerr << "configuration error [" << e.key() << "]: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
