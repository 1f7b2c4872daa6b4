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

#include "irssec/channel.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace irssec
{

double path_loss(double freq_hz, double distance_m, double absorption_per_m)
{
    if (!(freq_hz > 0.0))
        throw std::invalid_argument("path_loss: frequency must be positive");
    if (!(distance_m > 0.0))
        throw std::invalid_argument("path_loss: distance must be positive");
    if (absorption_per_m < 0.0)
        throw std::invalid_argument("path_loss: absorption coefficient cannot be negative");
    return kSpeedOfLight / (4.0 * kPi * freq_hz * distance_m) * std::exp(-0.5 * absorption_per_m * distance_m);
}

SteeringVector steering(int n, double spatial_freq)
{
    if (n < 1)
        throw std::invalid_argument("steering: array length must be >= 1");
    SteeringVector s{cvec(n), spatial_freq};
    const double scale = 1.0 / std::sqrt(double(n));
    for (int k = 0; k < n; ++k)
        s.elements(k) = std::polar(scale, kPi * k * spatial_freq);
    return s;
}

double spatial_frequency(double spacing_m, double freq_hz, double angle_rad)
{
    return 2.0 * spacing_m * freq_hz * std::sin(angle_rad) / kSpeedOfLight;
}

Eigen::RowVectorXcd ChannelSet::composite(int user, const cvec &theta) const
{
    return user_beta.at(user) * (user_rows[user].array() * theta.transpose().array()).matrix() * bs_irs;
}

Eigen::RowVectorXcd ChannelSet::eve_composite(const cvec &theta) const
{
    return eve_beta * (eve_row.array() * theta.transpose().array()).matrix() * bs_irs;
}

cmat ChannelSet::irs_side_rows() const
{
    cmat rows(n_users(), n_irs());
    for (int k = 0; k < n_users(); ++k)
        rows.row(k) = user_beta[k] * user_rows[k];
    return rows;
}

ChannelSet build_channels(const SystemConfig &cfg, const Scenario &scenario)
{
    const double f = cfg.carrier_freq_hz;
    const double d0 = cfg.element_spacing();
    const double tau = cfg.absorption_per_m;

    ChannelSet ch;
    ch.irs_rx = steering(cfg.n_irs, spatial_frequency(d0, f, scenario.irs_aoa_rad));
    ch.bs_tx = steering(cfg.n_tx, spatial_frequency(d0, f, scenario.bs_aod_rad));
    ch.bs_irs = ch.irs_rx.elements * ch.bs_tx.elements.adjoint();

    const double common = cfg.path_comp * cfg.tx_gain * cfg.rx_gain_linear() *
                          path_loss(f, scenario.bs_irs_distance_m, tau);
    for (const Placement &u : scenario.users)
    {
        ch.user_rows.push_back(steering(cfg.n_irs, spatial_frequency(d0, f, u.angle_rad)).elements.transpose());
        ch.user_beta.push_back(common * path_loss(f, u.distance_m, tau));
    }
    ch.eve_row = steering(cfg.n_irs, spatial_frequency(d0, f, scenario.eve.angle_rad)).elements.transpose();
    ch.eve_beta = common * path_loss(f, scenario.eve.distance_m, tau);
    return ch;
}

void write_channels_csv(const ChannelSet &ch, std::ostream &out)
{
    out.precision(17);
    out << "link,row,col,re,im\n";
    for (int r = 0; r < ch.bs_irs.rows(); ++r)
        for (int c = 0; c < ch.bs_irs.cols(); ++c)
            out << "bs_irs," << r << ',' << c << ',' << ch.bs_irs(r, c).real() << ',' << ch.bs_irs(r, c).imag()
                << '\n';
    for (int k = 0; k < ch.n_users(); ++k)
        for (int c = 0; c < ch.n_irs(); ++c)
            out << "user," << k << ',' << c << ',' << ch.user_rows[k](c).real() << ',' << ch.user_rows[k](c).imag()
                << '\n';
    for (int c = 0; c < ch.n_irs(); ++c)
        out << "eve,0," << c << ',' << ch.eve_row(c).real() << ',' << ch.eve_row(c).imag() << '\n';
    for (int k = 0; k < ch.n_users(); ++k)
        out << "beta," << k << ",0," << ch.user_beta[k] << ",0\n";
    out << "beta,-1,0," << ch.eve_beta << ",0\n";
}

} // namespace irssec
