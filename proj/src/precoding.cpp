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

#include "irssec/precoding.hpp"

#include <cmath>

namespace irssec
{

QuantizedPhase quantize_phase(double angle_rad, int bits)
{
    if (bits < 1 || bits > 30)
        throw std::invalid_argument("quantize_phase: bits must be in [1, 30]");
    const long levels = 1L << bits;
    const double step = 2.0 * kPi / double(levels);
    double a = std::fmod(angle_rad, 2.0 * kPi);
    if (a < 0.0)
        a += 2.0 * kPi;

    auto distance = [&](long n) {
        const double d = std::abs(a - step * double(n));
        return std::min(d, 2.0 * kPi - d);
    };
    const long lo = long(std::floor(a / step)) % levels;
    const long hi = (lo + 1) % levels;
    const double dlo = distance(lo), dhi = distance(hi);
    long n = lo;
    if (dhi < dlo || (dhi == dlo && hi < lo))
        n = hi;
    return {int(n), std::polar(1.0, step * double(n))};
}

AnalogPrecoder analog_precoder(const cmat &heads, Architecture arch, int bits)
{
    const int n_rf = int(heads.rows()), n_tx = int(heads.cols());
    if (arch == Architecture::SubConnected && n_tx % n_rf != 0)
        throw std::invalid_argument("analog_precoder: n_tx must be divisible by n_rf for sub-connected");

    AnalogPrecoder a{cmat::Zero(n_tx, n_rf), arch};
    const bool full = arch == Architecture::FullyConnected;
    const int block = full ? n_tx : n_tx / n_rf;
    const double mag = 1.0 / std::sqrt(double(block));
    for (int l = 0; l < n_rf; ++l)
    {
        const int first = full ? 0 : l * block;
        for (int q = first; q < first + block; ++q)
            a.F(q, l) = mag * quantize_phase(-std::arg(heads(l, q)), bits).value;
    }
    return a;
}

AnalogPrecoder analog_precoder(const ChannelSet &channels, const ClusterAssignment &assignment,
                               const cvec &theta, const SystemConfig &cfg)
{
    if (assignment.n_clusters() != cfg.n_rf)
        throw std::invalid_argument("analog_precoder: need one cluster per RF chain");
    cmat heads(cfg.n_rf, cfg.n_tx);
    for (int l = 0; l < cfg.n_rf; ++l)
    {
        const int head = assignment.heads.at(l);
        if (head < 0)
            throw std::invalid_argument("analog_precoder: cluster " + std::to_string(l) + " is empty");
        heads.row(l) = channels.composite(head, theta);
    }
    return analog_precoder(heads, cfg.architecture, cfg.quant_bits);
}

cmat head_channel_matrix(const ChannelSet &channels, const ClusterAssignment &assignment, const cmat &F,
                         const cvec &theta)
{
    const int L = assignment.n_clusters();
    cmat G(F.cols(), L);
    for (int l = 0; l < L; ++l)
        G.col(l) = (channels.composite(assignment.heads.at(l), theta) * F).adjoint();
    return G;
}

namespace
{
DigitalPrecoder normalize(cmat Vbar, const cmat &F)
{
    for (int l = 0; l < Vbar.cols(); ++l)
    {
        const double n = (F * Vbar.col(l)).norm();
        if (!(n > 0.0) || !std::isfinite(n))
            throw SingularChannelError(l, l, "digital precoder: beam " + std::to_string(l) + " has zero gain");
        Vbar.col(l) /= n;
    }
    return {Vbar};
}
} // namespace

DigitalPrecoder zf_digital(const cmat &G, const cmat &F, double cond_limit)
{
    const int L = int(G.cols());
    if (G.rows() < L)
        throw std::invalid_argument("zf_digital: more clusters than RF chains");

    Eigen::JacobiSVD<cmat> svd(G);
    const auto &sv = svd.singularValues();
    const bool singular = !(sv(L - 1) > 0.0) || sv(0) / sv(L - 1) > cond_limit;
    if (singular)
    {
        int a = 0, b = 0;
        double worst = -1.0;
        for (int l = 0; l < L; ++l)
        {
            if (G.col(l).norm() == 0.0)
            {
                a = b = l;
                break;
            }
            for (int i = l + 1; i < L; ++i)
            {
                const double c = std::abs(G.col(l).dot(G.col(i))) / (G.col(l).norm() * G.col(i).norm());
                if (c > worst)
                {
                    worst = c;
                    a = l;
                    b = i;
                }
            }
        }
        throw SingularChannelError(a, b,
                                   "zf_digital: head channels of clusters " + std::to_string(a) + " and " +
                                       std::to_string(b) + " are linearly dependent");
    }

    // G = QR  =>  G (G^H G)^{-1} = Q R^{-H}
    Eigen::HouseholderQR<cmat> qr(G);
    const cmat Q = qr.householderQ() * cmat::Identity(G.rows(), L);
    const cmat R = qr.matrixQR().topLeftCorner(L, L).triangularView<Eigen::Upper>();
    const cmat Vbar = R.triangularView<Eigen::Upper>().solve(Q.adjoint()).adjoint();
    return normalize(Vbar, F);
}

DigitalPrecoder pinv_digital(const cmat &G, const cmat &F)
{
    // The default rank threshold can count round-off in a rank-one G as a
    // second direction, which sends the precoder into the null space of the
    // heads.
    Eigen::CompleteOrthogonalDecomposition<cmat> cod;
    cod.setThreshold(1e-10);
    cod.compute(G.adjoint());
    return normalize(cod.pseudoInverse(), F);
}

PrecoderSet build_precoders(const ChannelSet &channels, const ClusterAssignment &assignment, const cvec &theta,
                            const SystemConfig &cfg)
{
    PrecoderSet p;
    p.analog = analog_precoder(channels, assignment, theta, cfg);
    const cmat G = head_channel_matrix(channels, assignment, p.analog.F, theta);
    try
    {
        p.digital = zf_digital(G, p.analog.F);
    }
    catch (const SingularChannelError &)
    {
        p.digital = pinv_digital(G, p.analog.F);
        p.zero_forcing = false;
    }
    return p;
}

} // namespace irssec
