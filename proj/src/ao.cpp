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

#include "irssec/phase_opt.hpp"
#include "irssec/power_alloc.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace irssec
{

cvec initial_phases(int n_irs, const PhaseInit &init)
{
    cvec theta = cvec::Ones(n_irs);
    if (!init.random)
        return theta;
    std::mt19937_64 rng(init.seed);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int n = 0; n < n_irs; ++n)
        theta(n) = std::polar(1.0, angle(rng));
    return theta;
}

ClusterAssignment cluster_users(const ChannelSet &channels, const SystemConfig &cfg, const cvec &theta)
{
    const cmat rows = channels.irs_side_rows();
    ClusterAssignment a = assign_users(rows, select_heads(rows, cfg.n_clusters(), cfg.cluster_corr_threshold));
    if (a.has_empty_cluster())
        throw ClusteringError("clustering left a beam without users; use another scenario seed");
    for (int round = 0; round < 3; ++round)
    {
        const PrecoderSet pre = build_precoders(channels, a, theta, cfg);
        std::vector<double> gain(channels.n_users());
        for (int u = 0; u < channels.n_users(); ++u)
            gain[u] = (channels.composite(u, theta) * pre.analog.F).squaredNorm();
        ClusterAssignment next = order_by_gain(a, gain);
        if (next == a)
            break;
        a = std::move(next);
    }
    return a;
}

Solution run_ao(const SystemConfig &cfg, const ChannelSet &ch, const SolverSettings &settings,
                const AoOptions &options)
{
    const auto t0 = std::chrono::steady_clock::now();
    Solution s;
    s.theta = options.theta0 ? *options.theta0 : initial_phases(ch.n_irs(), settings.init);
    s.assignment = cluster_users(ch, cfg, s.theta);
    s.precoders = build_precoders(ch, s.assignment, s.theta, cfg);

    auto evaluate = [&](const PrecoderSet &pre, const cvec &theta) {
        return secrecy_report(ch, pre, theta, s.assignment, s.p, cfg);
    };

    {
        const SurrogateModel m = build_surrogate(ch, s.precoders, s.theta, s.assignment, cfg.noise_power_w,
                                                 rvec::Zero(ch.n_users()));
        const rvec p0 = initial_power(m, cfg);
        s.p.watts.assign(p0.data(), p0.data() + p0.size());
    }
    double f = evaluate(s.precoders, s.theta).sum_secrecy;
    s.trace.push_back(f);
    std::optional<rvec> restart;

    for (int t = 1; t <= settings.outer_max; ++t)
    {
        const double f_prev = f;
        s.outer_iterations = t;

        if (t > 1 && !settings.freeze_analog)
        {
            PrecoderSet candidate = build_precoders(ch, s.assignment, s.theta, cfg);
            const RateReport rep = evaluate(candidate, s.theta);
            if (rep.feasible && rep.sum_secrecy > f)
            {
                s.precoders = std::move(candidate);
                f = rep.sum_secrecy;
                ++s.precoder_updates;
            }
        }

        // A power step that switches every user off leaves the phase
        // objective flat. The phases are then chosen at the allocation the
        // step started from, and the next power step restarts there.
        const rvec p_now = Eigen::Map<const rvec>(s.p.watts.data(), Eigen::Index(s.p.watts.size()));
        const rvec p_from = restart ? *restart : p_now;
        restart.reset();
        const PowerResult pr = solve_power(ch, s.precoders, s.theta, s.assignment, cfg, settings, p_from);
        s.power_iterations += pr.iterations;
        s.power_trace = pr.trace;
        {
            PowerAllocation keep = s.p;
            s.p = pr.p;
            const double g = evaluate(s.precoders, s.theta).sum_secrecy;
            if (p_from != p_now && g < f)
                s.p = std::move(keep);
            else
                f = g;
        }

        if (!options.optimize_phase)
        {
            s.trace.push_back(f);
            s.converged = pr.converged;
            break;
        }

        bool escaped = false;
        if (ch.n_irs() > 1)
        {
            rvec p_vec = Eigen::Map<const rvec>(s.p.watts.data(), Eigen::Index(s.p.watts.size()));
            const double floor = 1e-9 * cfg.total_power_w;
            const bool off = p_vec.maxCoeff() <= floor && p_from.maxCoeff() > floor;
            if (off)
                p_vec = p_from;
            const LiftedChannelCache cache = build_lifted(ch, s.precoders, s.assignment, p_vec, cfg.noise_power_w);
            const PhaseResult ph = solve_phase(cache, cfg, settings, lift(s.theta));
            s.phase_iterations += ph.iterations;
            const std::uint64_t seed = settings.phase_seed * 0x9E3779B97F4A7C15ull + std::uint64_t(t);
            const RandomizationResult rnd = gaussian_randomize(ph.phi, cache, cfg, settings.randomizations, seed);
            if (off)
            {
                if (rnd.value.feasible && rnd.value.sum_secrecy > evaluate_phases(cache, cfg, s.theta).sum_secrecy)
                {
                    s.theta = rnd.theta;
                    restart = p_from;
                    escaped = true;
                    ++s.phase_updates;
                }
            }
            else if (rnd.value.feasible)
            {
                const RateReport rep = evaluate(s.precoders, rnd.theta);
                if (rep.feasible && rep.sum_secrecy > f)
                {
                    s.theta = rnd.theta;
                    f = rep.sum_secrecy;
                    ++s.phase_updates;
                }
            }
        }

        s.trace.push_back(f);
        if (!escaped && (f - f_prev) / std::max(std::abs(f_prev), 1e-6) < settings.rel_tol)
        {
            s.converged = true;
            break;
        }
    }

    s.report = evaluate(s.precoders, s.theta);
    s.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return s;
}

Solution run_ao(const SystemConfig &cfg, const Scenario &scenario, const SolverSettings &settings,
                const AoOptions &options)
{
    return run_ao(cfg, build_channels(cfg, scenario), settings, options);
}

} // namespace irssec
