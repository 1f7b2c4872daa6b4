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

#include "irssec/phase_opt.hpp"

#include "irssec/power_alloc.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace irssec
{

namespace
{
constexpr double kLn2 = 0.69314718055994530942;

// conj(x) x^T
cmat outer(const cvec &x)
{
    return x.conjugate() * x.transpose();
}
} // namespace

cmat lift(const cvec &theta)
{
    return theta * theta.adjoint();
}

cvec unit_modulus(const cvec &w)
{
    cvec t(w.size());
    for (int n = 0; n < w.size(); ++n)
        t(n) = std::abs(w(n)) > 0.0 ? w(n) / std::abs(w(n)) : cplx(1.0, 0.0);
    if (t.size() > 0)
        t *= std::conj(t(0));
    if (t.size() > 0)
        t(0) = 1.0;
    return t;
}

EffectiveGains LiftedChannelCache::gains(const cvec &theta) const
{
    const int L = int(eve_x.cols());
    EffectiveGains g{rmat(n_users(), L), rvec(L)};
    for (int u = 0; u < n_users(); ++u)
        g.user.row(u) = (theta.transpose() * user_x[u]).cwiseAbs2();
    g.eve = (theta.transpose() * eve_x).cwiseAbs2().transpose();
    return g;
}

EffectiveGains LiftedChannelCache::gains(const cmat &phi) const
{
    const int L = int(eve_x.cols());
    EffectiveGains g{rmat(n_users(), L), rvec(L)};
    for (int i = 0; i < L; ++i)
    {
        for (int u = 0; u < n_users(); ++u)
            g.user(u, i) = real_inner(outer(user_x[u].col(i)), phi);
        g.eve(i) = real_inner(outer(eve_x.col(i)), phi);
    }
    return g;
}

double LiftedChannelCache::lifted_objective(const cmat &phi, cmat *grad) const
{
    double v = 0.0;
    if (grad)
        *grad = cmat::Zero(dim(), dim());
    for (int u = 0; u < n_users(); ++u)
    {
        const double A = real_inner(a[u], phi) + noise;
        const double B = real_inner(b[u], phi) + noise;
        const double C = real_inner(c[u], phi) + noise;
        const double D = real_inner(d[u], phi) + noise;
        v += std::log2(A) - std::log2(B) - std::log2(C) + std::log2(D);
        if (grad)
            *grad += (a[u] / A - b[u] / B - c[u] / C + d[u] / D) / kLn2;
    }
    return v;
}

LiftedChannelCache build_lifted(std::vector<cmat> user_x, cmat eve_x, const ClusterAssignment &as, const rvec &p,
                                double noise)
{
    const int K = int(user_x.size());
    const int L = int(eve_x.cols());
    const int N = int(eve_x.rows());
    LiftedChannelCache cache;
    cache.user_x = std::move(user_x);
    cache.eve_x = std::move(eve_x);
    cache.assignment = as;
    cache.power = p;
    cache.noise = noise;

    // With unit gains the surrogate coefficients are 0/1 indicators of which
    // powers enter each term; weighting them by p gives the beam weights.
    const SurrogateModel ind = build_surrogate(as, EffectiveGains{rmat::Ones(K, L), rvec::Ones(L)}, noise, p);
    const std::vector<int> cluster = as.cluster_of();
    std::vector<cmat> eve_m(L);
    for (int i = 0; i < L; ++i)
        eve_m[i] = outer(cache.eve_x.col(i));

    cache.a.assign(K, cmat::Zero(N, N));
    cache.b = cache.c = cache.d = cache.a;
    for (int u = 0; u < K; ++u)
    {
        rvec wa = rvec::Zero(L), wb = rvec::Zero(L), wc = rvec::Zero(L), wd = rvec::Zero(L);
        for (int j = 0; j < K; ++j)
        {
            const int i = cluster[j];
            wa(i) += ind.a(u, j) * p(j);
            wb(i) += ind.b(u, j) * p(j);
            wc(i) += ind.c(u, j) * p(j);
            wd(i) += ind.d(u, j) * p(j);
        }
        for (int i = 0; i < L; ++i)
        {
            const cmat mu = outer(cache.user_x[u].col(i));
            cache.a[u] += wa(i) * mu;
            cache.b[u] += wb(i) * mu;
            cache.c[u] += wc(i) * eve_m[i];
            cache.d[u] += wd(i) * eve_m[i];
        }
    }
    return cache;
}

LiftedChannelCache build_lifted(const ChannelSet &ch, const PrecoderSet &precoders, const ClusterAssignment &as,
                                const rvec &p, double noise)
{
    const cmat HW = ch.bs_irs * (precoders.analog.F * precoders.digital.V); // n_irs x L
    std::vector<cmat> user_x(ch.n_users());
    for (int u = 0; u < ch.n_users(); ++u)
        user_x[u] = ch.user_beta[u] * (ch.user_rows[u].transpose().asDiagonal() * HW);
    cmat eve_x = ch.eve_beta * (ch.eve_row.transpose().asDiagonal() * HW);
    return build_lifted(std::move(user_x), std::move(eve_x), as, p, noise);
}

std::vector<HalfSpace> phase_qos(const LiftedChannelCache &cache, const SystemConfig &cfg)
{
    std::vector<HalfSpace> hs;
    if (cfg.min_rate <= 0.0)
        return hs;
    const double gamma = std::exp2(cfg.min_rate) - 1.0;
    for (int u = 0; u < cache.n_users(); ++u)
        hs.push_back({cache.a[u] - (1.0 + gamma) * cache.b[u], gamma * cache.noise});
    return hs;
}

PhaseResult solve_phase(const LiftedChannelCache &cache, const SystemConfig &cfg, const SolverSettings &settings,
                        const cmat &phi_init)
{
    const int N = cache.dim();
    if (phi_init.rows() != N || phi_init.cols() != N)
        throw std::invalid_argument("solve_phase: initial point must be " + std::to_string(N) + "x" +
                                    std::to_string(N));
    const std::vector<HalfSpace> qos = phase_qos(cache, cfg);
    FirstOrderSettings fo = first_order_settings(settings);
    fo.rel_tol = settings.sdp_tol;
    fo.kkt_tol = settings.sdp_tol;

    PhaseResult r;
    r.phi = project_spectrahedron(phi_init, qos, fo.projection_max, fo.projection_tol).phi;
    double f = cache.lifted_objective(r.phi);
    r.trace.push_back(f);

    for (r.iterations = 0; r.iterations < settings.phase_max;)
    {
        // tangent planes of log B and log C at the current point
        rvec b_hat(cache.n_users()), c_hat(cache.n_users());
        cmat lin_grad = cmat::Zero(N, N);
        double lin_const = 0.0;
        for (int u = 0; u < cache.n_users(); ++u)
        {
            b_hat(u) = real_inner(cache.b[u], r.phi) + cache.noise;
            c_hat(u) = real_inner(cache.c[u], r.phi) + cache.noise;
            lin_grad += (cache.b[u] / b_hat(u) + cache.c[u] / c_hat(u)) / kLn2;
            lin_const += std::log2(b_hat(u)) + std::log2(c_hat(u));
        }
        const cmat center = r.phi;
        const double center_lin = real_inner(lin_grad, center);
        SpectrahedronProblem prob;
        prob.dim = N;
        prob.inequalities = qos;
        prob.objective = [&](const cmat &phi, cmat &grad) {
            double v = -lin_const - (real_inner(lin_grad, phi) - center_lin);
            grad = -lin_grad;
            for (int u = 0; u < cache.n_users(); ++u)
            {
                const double A = real_inner(cache.a[u], phi) + cache.noise;
                const double D = real_inner(cache.d[u], phi) + cache.noise;
                if (!(A > 0.0) || !(D > 0.0))
                    return -std::numeric_limits<double>::infinity();
                v += std::log2(A) + std::log2(D);
                grad += (cache.a[u] / A + cache.d[u] / D) / kLn2;
            }
            return v;
        };
        const SpectrahedronResult sol = solve_spectrahedron(prob, center, fo);
        ++r.iterations;
        const double f_new = cache.lifted_objective(sol.phi);
        if (!(f_new > f))
        {
            r.converged = true;
            break;
        }
        const double rel = (f_new - f) / std::max(std::abs(f), 1e-6);
        r.phi = sol.phi;
        f = f_new;
        r.trace.push_back(f);
        if (rel < settings.rel_tol)
        {
            r.converged = true;
            break;
        }
    }
    r.objective = f;
    r.qos_feasible = spectrahedron_violation(r.phi, qos) <= 1e-6;
    return r;
}

PhaseEvaluation evaluate_phases(const LiftedChannelCache &cache, const SystemConfig &cfg, const cvec &theta)
{
    PowerAllocation p;
    p.watts.assign(cache.power.data(), cache.power.data() + cache.power.size());
    const RateReport rep = secrecy_report(cache.assignment, cache.gains(theta), p, cfg);
    PhaseEvaluation e;
    e.sum_secrecy = rep.sum_secrecy;
    e.feasible = rep.feasible;
    e.violation = -std::numeric_limits<double>::infinity();
    for (const auto &rates : rep.user_rate)
        for (double rate : rates)
            e.violation = std::max(e.violation, cfg.min_rate - rate);
    return e;
}

RandomizationResult gaussian_randomize(const cmat &phi, const LiftedChannelCache &cache, const SystemConfig &cfg,
                                       int count, std::uint64_t seed)
{
    const int N = int(phi.rows());
    Eigen::SelfAdjointEigenSolver<cmat> es(0.5 * (phi + phi.adjoint()));
    // eigenvalues at round-off level are zero; keeping them would jitter the
    // candidates drawn from a rank-one input
    const rvec lambda = es.eigenvalues();
    const double floor = 1e-10 * std::max(lambda.maxCoeff(), 0.0);
    const cmat factor = es.eigenvectors() * lambda.unaryExpr([floor](double v) { return v > floor ? std::sqrt(v) : 0.0; }).asDiagonal();

    RandomizationResult best;
    bool have = false;
    auto consider = [&](const cvec &theta) {
        const PhaseEvaluation e = evaluate_phases(cache, cfg, theta);
        ++best.candidates;
        bool better;
        if (!have)
            better = true;
        else if (e.feasible != best.value.feasible)
            better = e.feasible;
        else if (e.feasible)
            better = e.sum_secrecy > best.value.sum_secrecy;
        else
            better = e.violation < best.value.violation;
        if (better)
        {
            best.theta = theta;
            best.value = e;
            have = true;
        }
    };

    consider(unit_modulus(es.eigenvectors().col(N - 1)));
    for (int k = 0; k < count; ++k)
    {
        std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(k)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
        cvec r(N);
        for (int n = 0; n < N; ++n)
        {
            const double re = normal(rng);
            r(n) = cplx(re, normal(rng));
        }
        consider(unit_modulus(factor * r));
    }
    return best;
}

} // namespace irssec
