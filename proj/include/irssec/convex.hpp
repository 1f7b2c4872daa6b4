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

#ifndef IRSSEC_CONVEX_HPP
#define IRSSEC_CONVEX_HPP

#include "irssec/types.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace irssec
{

// Settings shared by both first-order solvers.
struct FirstOrderSettings
{
    int max_iter = 400;
    double rel_tol = 1e-12;   // relative objective improvement per step
    double kkt_tol = 1e-9;    // stationarity residual
    double armijo_c = 1e-4;
    double armijo_shrink = 0.5;
    int projection_max = 500; // Dykstra cycles (spectrahedron only)
    double projection_tol = 1e-9;
    bool refine_projection = false; // slower, reaches the relaxed optimum on the PSD boundary
};

// ---------- polytope: maximize f(x) s.t. A x <= b, x >= 0 ----------

// Value and gradient of a smooth concave objective.
using VectorObjective = std::function<double(const rvec &x, rvec &grad)>;

struct PolytopeProblem
{
    VectorObjective objective;
    rmat A; // m x n, may have zero rows
    rvec b;

    int dim() const { return int(A.cols()); }
};

// Raised when {A x <= b, x >= 0} is empty. weights() is a Farkas
// certificate over the stacked rows [A; -I] and [b; 0]:
// weights >= 0, weights^T [A; -I] = 0 and weights^T [b; 0] < 0.
class InfeasibleError : public std::runtime_error
{
public:
    InfeasibleError(rvec weights, const std::string &what) : std::runtime_error(what), weights_(std::move(weights)) {}
    const rvec &weights() const noexcept { return weights_; }

private:
    rvec weights_;
};

// Exact Euclidean projection onto {C x <= d} (dual active-set method).
// Throws InfeasibleError with a certificate over the rows of C.
rvec project_halfspaces(const rmat &C, const rvec &d, const rvec &y);

// Projection onto {A x <= b, x >= 0}.
rvec project_polytope(const rmat &A, const rvec &b, const rvec &y);

struct PolytopeResult
{
    rvec x;
    double value = 0.0;
    double kkt_residual = 0.0; // |x - P(x + grad f(x))|_inf
    int iterations = 0;
    bool max_iter_reached = false;
    std::vector<double> trace;
};

// Projected gradient ascent with Barzilai-Borwein steps and Armijo
// backtracking along the projection arc, started from the projection of x0
// (the phase-1 check). The objective sequence is non-decreasing.
PolytopeResult solve_polytope(const PolytopeProblem &problem, const rvec &x0, const FirstOrderSettings &settings);

// ---------- spectrahedron: maximize f(Phi) s.t. Phi >= 0, diag(Phi) = 1 ----------

using MatrixObjective = std::function<double(const cmat &phi, cmat &grad)>;

// Re Tr(Q Phi) >= bound, Q Hermitian.
struct HalfSpace
{
    cmat Q;
    double bound;
};

struct SpectrahedronProblem
{
    MatrixObjective objective;
    int dim = 1;
    std::vector<HalfSpace> inequalities;
};

struct ProjectionResult
{
    cmat phi;
    double distance = 0.0; // max violation over the constraint sets
    int iterations = 0;
    bool converged = false;
};

// Dykstra alternating projections onto PSD, unit diagonal and the optional
// half-spaces, finished by eigenvalue clipping and a diagonal congruence so
// that PSD and diag = 1 hold to round-off.
ProjectionResult project_spectrahedron(const cmat &Y, const std::vector<HalfSpace> &inequalities, int max_iter,
                                       double tol);

struct SpectrahedronResult
{
    cmat phi;
    double value = 0.0;
    double residual = 0.0; // largest constraint violation of phi
    double min_eigenvalue = 0.0;
    int iterations = 0;
    bool max_iter_reached = false;
    std::vector<double> trace;
};

SpectrahedronResult solve_spectrahedron(const SpectrahedronProblem &problem, const cmat &phi0,
                                        const FirstOrderSettings &settings);

// max(0, -lambda_min), |diag - 1|_inf and half-space violations.
double spectrahedron_violation(const cmat &phi, const std::vector<HalfSpace> &inequalities);

inline double real_inner(const cmat &a, const cmat &b)
{
    return (a.conjugate().cwiseProduct(b)).sum().real();
}

} // namespace irssec

#endif
