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

#include "irssec/power_alloc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace irssec
{

namespace
{
constexpr double kLn2 = 0.69314718055994530942;
} // namespace

FirstOrderSettings first_order_settings(const SolverSettings &s)
{
    FirstOrderSettings f;
    f.max_iter = s.first_order_max;
    f.armijo_c = s.armijo_c;
    f.armijo_shrink = s.armijo_shrink;
    f.projection_max = s.projection_max;
    f.projection_tol = s.projection_tol;
    f.refine_projection = s.refine_projection;
    return f;
}

double SurrogateModel::true_objective(const rvec &p, rvec *grad) const
{
    const rvec A = a * p + rvec::Constant(n_users(), noise);
    const rvec B = b * p + rvec::Constant(n_users(), noise);
    const rvec C = c * p + rvec::Constant(n_users(), noise);
    const rvec D = d * p + rvec::Constant(n_users(), noise);
    double v = 0.0;
    for (int u = 0; u < n_users(); ++u)
        v += std::log2(A(u)) - std::log2(B(u)) - std::log2(C(u)) + std::log2(D(u));
    if (grad)
        *grad = (a.transpose() * A.cwiseInverse() - b.transpose() * B.cwiseInverse() -
                 c.transpose() * C.cwiseInverse() + d.transpose() * D.cwiseInverse()) /
                kLn2;
    return v;
}

double SurrogateModel::lin_b(int u, const rvec &p) const
{
    return std::log2(b_bar(u)) + b.row(u).dot(p - expansion) / (b_bar(u) * kLn2);
}

double SurrogateModel::lin_c(int u, const rvec &p) const
{
    return std::log2(c_bar(u)) + c.row(u).dot(p - expansion) / (c_bar(u) * kLn2);
}

double SurrogateModel::surrogate(const rvec &p, rvec *grad) const
{
    const rvec A = a * p + rvec::Constant(n_users(), noise);
    const rvec D = d * p + rvec::Constant(n_users(), noise);
    double v = 0.0;
    for (int u = 0; u < n_users(); ++u)
    {
        if (!(A(u) > 0.0) || !(D(u) > 0.0))
            return -std::numeric_limits<double>::infinity();
        v += std::log2(A(u)) + std::log2(D(u)) - lin_b(u, p) - lin_c(u, p);
    }
    if (grad)
        *grad = (a.transpose() * A.cwiseInverse() + d.transpose() * D.cwiseInverse() -
                 b.transpose() * b_bar.cwiseInverse() - c.transpose() * c_bar.cwiseInverse()) /
                kLn2;
    return v;
}

void SurrogateModel::expand_at(const rvec &p_bar)
{
    expansion = p_bar;
    b_bar = b * p_bar + rvec::Constant(n_users(), noise);
    c_bar = c * p_bar + rvec::Constant(n_users(), noise);
}

SurrogateModel build_surrogate(const ClusterAssignment &as, const EffectiveGains &g, double noise,
                               const rvec &p_bar)
{
    const int K = int(g.user.rows());
    SurrogateModel m;
    m.a = m.b = m.c = m.d = rmat::Zero(K, K);
    m.own = rvec::Zero(K);
    m.noise = noise;
    for (int l = 0; l < as.n_clusters(); ++l)
    {
        const auto &members = as.members[l];
        for (int pos = 0; pos < int(members.size()); ++pos)
        {
            const int u = members[pos];
            m.own(u) = g.user(u, l);
            // inter-beam terms: every user of another beam with that beam's gain
            for (int i = 0; i < as.n_clusters(); ++i)
                if (i != l)
                    for (int j : as.members[i])
                    {
                        m.b(u, j) += g.user(u, i);
                        m.d(u, j) += g.eve(i);
                    }
            for (int q = 0; q < pos; ++q)
                m.b(u, members[q]) += g.user(u, l);
            for (int q = 0; q < int(members.size()); ++q)
                if (q != pos)
                    m.d(u, members[q]) += g.eve(l);
            m.a.row(u) = m.b.row(u);
            m.a(u, u) += g.user(u, l);
            m.c.row(u) = m.d.row(u);
            m.c(u, u) += g.eve(l);
        }
    }
    m.expand_at(p_bar);
    return m;
}

SurrogateModel build_surrogate(const ChannelSet &channels, const PrecoderSet &precoders, const cvec &theta,
                               const ClusterAssignment &a, double noise, const rvec &p_bar)
{
    return build_surrogate(a, effective_gains(channels, precoders, theta), noise, p_bar);
}

LinearConstraints qos_constraints(const SurrogateModel &m, const SystemConfig &cfg)
{
    const int K = m.n_users();
    const double gamma = std::exp2(cfg.min_rate) - 1.0;
    LinearConstraints lc{rmat(K + 1, K), rvec(K + 1)};
    for (int u = 0; u < K; ++u)
    {
        lc.A.row(u) = gamma * m.b.row(u) - (m.a.row(u) - m.b.row(u));
        lc.b(u) = -gamma * m.noise;
    }
    lc.A.row(K).setOnes();
    lc.b(K) = cfg.total_power_w;
    return lc;
}

namespace
{
double violation(const LinearConstraints &lc, const rvec &p)
{
    double v = std::max(0.0, -p.minCoeff());
    for (int k = 0; k < lc.A.rows(); ++k)
    {
        const double scale = std::max(std::abs(lc.b(k)), lc.A.row(k).cwiseAbs().dot(p.cwiseAbs()));
        v = std::max(v, (lc.A.row(k).dot(p) - lc.b(k)) / std::max(scale, 1e-300));
    }
    return v;
}
} // namespace

rvec initial_power(const SurrogateModel &m, const SystemConfig &cfg)
{
    const int K = m.n_users();
    const LinearConstraints lc = qos_constraints(m, cfg);
    const rvec start = rvec::Constant(K, 0.9 * cfg.total_power_w / K);
    return project_polytope(lc.A, lc.b, start);
}

PowerResult solve_power(const ClusterAssignment &as, const EffectiveGains &g, const SystemConfig &cfg,
                        const SolverSettings &settings, const rvec &p_init)
{
    if (p_init.size() != g.user.rows())
        throw std::invalid_argument("solve_power: p_init has " + std::to_string(p_init.size()) +
                                    " entries for " + std::to_string(g.user.rows()) + " users");
    SurrogateModel model = build_surrogate(as, g, cfg.noise_power_w, p_init);
    const LinearConstraints lc = qos_constraints(model, cfg);

    rvec p = p_init;
    if (violation(lc, p) > 1e-12)
        p = project_polytope(lc.A, lc.b, p);
    model.expand_at(p);

    const FirstOrderSettings fo = first_order_settings(settings);
    PowerResult r;
    double f = model.true_objective(p);
    r.trace.push_back(f);

    for (r.iterations = 0; r.iterations < settings.power_max;)
    {
        PolytopeProblem prob{[&model](const rvec &x, rvec &grad) { return model.surrogate(x, &grad); }, lc.A,
                             lc.b};
        const PolytopeResult sol = solve_polytope(prob, p, fo);
        ++r.iterations;
        const double f_new = model.true_objective(sol.x);
        const double scale = std::max(std::abs(f), 1e-6);
        if (f_new < f - 1e-9 * std::max(std::abs(f), 1.0))
            throw std::logic_error("solve_power: SCA objective decreased from " + std::to_string(f) + " to " +
                                   std::to_string(f_new));
        if (f_new <= f)
        {
            r.converged = true;
            break;
        }
        const double rel = (f_new - f) / scale;
        p = sol.x;
        f = f_new;
        r.trace.push_back(f);
        model.expand_at(p);
        if (rel < settings.rel_tol)
        {
            r.converged = true;
            break;
        }
    }
    r.p.watts.assign(p.data(), p.data() + p.size());
    r.objective = f;
    return r;
}

PowerResult solve_power(const ChannelSet &channels, const PrecoderSet &precoders, const cvec &theta,
                        const ClusterAssignment &a, const SystemConfig &cfg, const SolverSettings &settings,
                        const rvec &p_init)
{
    return solve_power(a, effective_gains(channels, precoders, theta), cfg, settings, p_init);
}

} // namespace irssec
