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

#include "irssec/convex.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace irssec
{

// ---------- exact projection onto a polyhedron ----------

rvec project_halfspaces(const rmat &C, const rvec &d, const rvec &y)
{
    // Goldfarb-Idnani dual active set for min 0.5|x - y|^2 s.t. n_k^T x >= b_k
    // with n_k = -C_k, b_k = -d_k. The unconstrained minimizer is y.
    const int m = int(C.rows());
    const int n = int(C.cols());
    rvec x = y;
    std::vector<int> active;
    std::vector<double> u;
    const double inf = std::numeric_limits<double>::infinity();

    auto slack = [&](int k) { return d(k) - C.row(k).dot(x); }; // >= 0 when satisfied
    auto tolerance = [&](int k) {
        return 1e-12 * std::max({1.0, std::abs(d(k)), C.row(k).norm() * x.norm()});
    };

    for (int outer = 0; outer < 50 * (m + n) + 100; ++outer)
    {
        int p = -1;
        double worst = 0.0;
        for (int k = 0; k < m; ++k)
        {
            const double nk = C.row(k).norm();
            if (nk == 0.0)
            {
                if (d(k) < -tolerance(k))
                {
                    rvec w = rvec::Zero(m);
                    w(k) = 1.0;
                    throw InfeasibleError(w, "infeasible: constraint " + std::to_string(k) + " reads 0 <= " +
                                                 std::to_string(d(k)));
                }
                continue;
            }
            const double s = slack(k);
            if (s < -tolerance(k) && s / nk < worst)
            {
                worst = s / nk;
                p = k;
            }
        }
        if (p < 0)
            return x;

        const rvec np = -C.row(p).transpose();
        double u_plus = 0.0;
        for (int inner = 0; inner < 4 * (m + n) + 10; ++inner)
        {
            const int q = int(active.size());
            rvec r(q);
            rvec z = np;
            if (q > 0)
            {
                rmat N(n, q);
                for (int j = 0; j < q; ++j)
                    N.col(j) = -C.row(active[j]).transpose();
                r = N.colPivHouseholderQr().solve(np);
                z = np - N * r;
            }
            double t1 = inf;
            int drop = -1;
            for (int j = 0; j < q; ++j)
                if (r(j) > 0.0 && u[j] / r(j) < t1)
                {
                    t1 = u[j] / r(j);
                    drop = j;
                }
            const double sp = slack(p); // < 0 while violated
            const bool z_zero = z.norm() <= 1e-12 * np.norm();
            const double t2 = z_zero ? inf : (-sp) / z.dot(np);
            const double t = std::min(t1, t2);

            if (t == inf)
            {
                // np = N r with r <= 0: the constraints cannot hold together.
                rvec w = rvec::Zero(m);
                w(p) = 1.0;
                for (int j = 0; j < q; ++j)
                    w(active[j]) = std::max(0.0, -r(j));
                throw InfeasibleError(w, "infeasible: constraints cannot be satisfied together (row " +
                                             std::to_string(p) + " conflicts with the active set)");
            }
            if (!z_zero)
                x += t * z;
            for (int j = 0; j < q; ++j)
                u[j] -= t * r(j);
            u_plus += t;
            if (!z_zero && t == t2)
            {
                active.push_back(p);
                u.push_back(u_plus);
                break;
            }
            active.erase(active.begin() + drop);
            u.erase(u.begin() + drop);
            if (slack(p) >= -tolerance(p))
                break;
        }
    }
    return x;
}

rvec project_polytope(const rmat &A, const rvec &b, const rvec &y)
{
    const int m = int(A.rows());
    const int n = int(y.size());
    rmat C(m + n, n);
    rvec d(m + n);
    if (m > 0)
    {
        C.topRows(m) = A;
        d.head(m) = b;
    }
    C.bottomRows(n) = -rmat::Identity(n, n);
    d.tail(n).setZero();
    rvec x = project_halfspaces(C, d, y);
    return x.cwiseMax(0.0);
}

// ---------- generic projected gradient ascent ----------

namespace
{
template <typename Point>
struct Ascent
{
    Point x;
    Point grad;
    double value = 0.0;
    int iterations = 0;
    bool max_iter_reached = false;
    bool stalled = false; // stopped because no step was accepted
    std::vector<double> trace;
};

template <typename Point, typename Objective, typename Project, typename Dot, typename Residual>
Ascent<Point> projected_ascent(Objective &&objective, Project &&project, Dot &&dot, Residual &&residual,
                               Point x, const FirstOrderSettings &s)
{
    Ascent<Point> out;
    Point g;
    double f = objective(x, g);
    out.trace.push_back(f);
    const double gnorm = std::sqrt(std::max(dot(g, g), 0.0));
    const double xnorm = std::sqrt(std::max(dot(x, x), 0.0));
    double step = gnorm > 0.0 ? std::max(xnorm, 1e-3) / gnorm : 1.0;

    bool converged = false;
    int it = 0;
    for (; it < s.max_iter; ++it)
    {
        Point xn, gn;
        double fn = f;
        bool accepted = false;
        bool stationary = false;
        for (int bt = 0; bt < 80; ++bt)
        {
            xn = project(Point(x + step * g), x);
            const Point dx = xn - x;
            const double move = dot(dx, dx);
            if (move <= 1e-30 * (1.0 + dot(x, x)))
            {
                stationary = true;
                break;
            }
            fn = objective(xn, gn);
            if (std::isfinite(fn) && fn >= f + s.armijo_c * dot(g, dx))
            {
                accepted = true;
                break;
            }
            step *= s.armijo_shrink;
        }
        if (stationary || !accepted)
        {
            converged = true;
            out.stalled = true;
            break;
        }

        const Point sk = xn - x;
        const Point yk = gn - g;
        const double sy = dot(sk, yk);
        const double ss = dot(sk, sk);
        const double next = sy < 0.0 ? ss / (-sy) : 4.0 * step;
        const double rel = (fn - f) / std::max(std::abs(f), 1e-9);

        x = std::move(xn);
        g = std::move(gn);
        f = fn;
        out.trace.push_back(f);
        step = std::clamp(next, 1e-30, 1e30);

        if (rel < s.rel_tol && residual(x, g, sk) <= s.kkt_tol)
        {
            converged = true;
            ++it;
            break;
        }
    }
    out.x = std::move(x);
    out.grad = std::move(g);
    out.value = f;
    out.iterations = it;
    out.max_iter_reached = !converged;
    return out;
}
} // namespace

PolytopeResult solve_polytope(const PolytopeProblem &prob, const rvec &x0, const FirstOrderSettings &s)
{
    if (x0.size() != prob.dim() || prob.b.size() != prob.A.rows())
        throw std::invalid_argument("solve_polytope: dimension mismatch");

    auto project = [&](const rvec &y, const rvec & = {}) { return project_polytope(prob.A, prob.b, y); };
    auto dot = [](const rvec &a, const rvec &b) { return a.dot(b); };
    auto kkt = [&](const rvec &x, const rvec &g) { return (x - project(x + g)).lpNorm<Eigen::Infinity>(); };
    auto residual = [&](const rvec &x, const rvec &g, const rvec &) { return kkt(x, g); };

    // phase 1: throws InfeasibleError with a certificate when empty
    rvec start = project(x0);
    auto run = projected_ascent(prob.objective, project, dot, residual, start, s);

    PolytopeResult r;
    r.x = std::move(run.x);
    r.value = run.value;
    r.kkt_residual = kkt(r.x, run.grad);
    r.iterations = run.iterations;
    r.max_iter_reached = run.max_iter_reached;
    r.trace = std::move(run.trace);
    return r;
}

// ---------- spectrahedron ----------

namespace
{
cmat hermitian(const cmat &a)
{
    return 0.5 * (a + a.adjoint());
}

cmat clip_psd(const cmat &a, double *min_eig = nullptr)
{
    Eigen::SelfAdjointEigenSolver<cmat> es(a);
    const rvec lambda = es.eigenvalues();
    if (min_eig)
        *min_eig = lambda.minCoeff();
    if (lambda.minCoeff() >= 0.0)
        return a;
    return es.eigenvectors() * lambda.cwiseMax(0.0).asDiagonal() * es.eigenvectors().adjoint();
}

double halfspace_gap(const HalfSpace &h, const cmat &phi)
{
    return h.bound - real_inner(h.Q, phi); // > 0 means violated
}
} // namespace

double spectrahedron_violation(const cmat &phi, const std::vector<HalfSpace> &inequalities)
{
    Eigen::SelfAdjointEigenSolver<cmat> es(hermitian(phi), Eigen::EigenvaluesOnly);
    double v = std::max(0.0, -es.eigenvalues().minCoeff());
    for (int k = 0; k < phi.rows(); ++k)
        v = std::max(v, std::abs(phi(k, k) - 1.0));
    for (const auto &h : inequalities)
        v = std::max(v, halfspace_gap(h, phi) / std::max(1.0, h.Q.norm()));
    return v;
}

namespace
{
// Dykstra's method is block coordinate ascent on the dual, so it converges
// to the projection from any set of increments. Passing the increments of
// a previous call (warm) cuts the cycle count when the inputs are close.
ProjectionResult dykstra(const cmat &Y, const std::vector<HalfSpace> &hs, int max_iter, double tol,
                         std::vector<cmat> *warm)
{
    const int n = int(Y.rows());
    const size_t sets = 2 + hs.size();
    std::vector<cmat> local;
    std::vector<cmat> &incr = warm ? *warm : local;
    if (incr.size() != sets || incr[0].rows() != n)
        incr.assign(sets, cmat::Zero(n, n));

    // invariant: x + sum(incr) == Y
    cmat x = hermitian(Y);
    for (const auto &z : incr)
        x -= z;

    ProjectionResult r;
    for (r.iterations = 0; r.iterations < max_iter; ++r.iterations)
    {
        const cmat prev = x;

        cmat y = x + incr[0];
        x = clip_psd(y);
        incr[0] = y - x;

        y = x + incr[1];
        x = y;
        x.diagonal().setOnes();
        incr[1] = y - x;

        for (size_t k = 0; k < hs.size(); ++k)
        {
            y = x + incr[2 + k];
            const double gap = halfspace_gap(hs[k], y);
            x = gap > 0.0 ? cmat(y + (gap / hs[k].Q.squaredNorm()) * hs[k].Q) : y;
            incr[2 + k] = y - x;
        }
        if ((x - prev).norm() <= tol)
        {
            r.converged = true;
            ++r.iterations;
            break;
        }
    }

    // clip and rescale: PSD and unit diagonal hold to round-off
    x = clip_psd(hermitian(x));
    rvec scale(n);
    for (int k = 0; k < n; ++k)
    {
        const double dk = x(k, k).real();
        scale(k) = dk > 1e-300 ? 1.0 / std::sqrt(dk) : 0.0;
    }
    x = scale.asDiagonal() * x * scale.asDiagonal();
    for (int k = 0; k < n; ++k)
        if (scale(k) == 0.0)
            x(k, k) = 1.0;
    x.diagonal() = x.diagonal().real().cast<cplx>();
    r.phi = hermitian(x);
    r.distance = spectrahedron_violation(r.phi, hs);
    return r;
}
} // namespace

ProjectionResult project_spectrahedron(const cmat &Y, const std::vector<HalfSpace> &hs, int max_iter, double tol)
{
    return dykstra(Y, hs, max_iter, tol, nullptr);
}

SpectrahedronResult solve_spectrahedron(const SpectrahedronProblem &prob, const cmat &phi0,
                                        const FirstOrderSettings &s)
{
    if (phi0.rows() != prob.dim || phi0.cols() != prob.dim)
        throw std::invalid_argument("solve_spectrahedron: initial point has the wrong dimension");

    // The ascent only needs feasible points (the polish guarantees that), so
    // the projection is solved to an accuracy tied to the step length. Near
    // the boundary that can hide the ascent direction and stop short of the
    // relaxed optimum; with refine_projection the previous realised move also
    // caps the tolerance and a stalled run is resumed at full accuracy. That
    // is several times slower and is meant for bound checks, not AO loops.
    std::vector<cmat> warm;
    bool exact = false;
    double last_move = std::numeric_limits<double>::infinity();
    auto project = [&](const cmat &y, const cmat &from) {
        const double step = (y - from).norm();
        const double scale = s.refine_projection ? std::min(step, last_move) : step;
        const double tol = exact ? s.projection_tol : std::max(s.projection_tol, 1e-4 * scale);
        cmat phi = dykstra(y, prob.inequalities, s.projection_max, tol, &warm).phi;
        last_move = (phi - from).norm();
        return phi;
    };
    auto objective = [&](const cmat &phi, cmat &grad) {
        const double v = prob.objective(phi, grad);
        grad = hermitian(grad);
        return v;
    };
    auto residual = [](const cmat &, const cmat &, const cmat &step) { return step.norm(); };

    const cmat start = dykstra(phi0, prob.inequalities, s.projection_max, s.projection_tol, &warm).phi;
    auto run = projected_ascent(objective, project, real_inner, residual, start, s);
    if (run.stalled && s.refine_projection)
    {
        exact = true;
        auto more = projected_ascent(objective, project, real_inner, residual, run.x, s);
        if (more.value >= run.value)
        {
            more.iterations += run.iterations;
            run.trace.insert(run.trace.end(), more.trace.begin() + 1, more.trace.end());
            more.trace = std::move(run.trace);
            run = std::move(more);
        }
    }

    SpectrahedronResult r;
    r.phi = std::move(run.x);
    r.value = run.value;
    r.iterations = run.iterations;
    r.max_iter_reached = run.max_iter_reached;
    r.trace = std::move(run.trace);
    r.residual = spectrahedron_violation(r.phi, prob.inequalities);
    Eigen::SelfAdjointEigenSolver<cmat> es(r.phi, Eigen::EigenvaluesOnly);
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    return r;
}

} // namespace irssec
