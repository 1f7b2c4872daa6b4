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

#ifndef IRSSEC_CHANNEL_HPP
#define IRSSEC_CHANNEL_HPP

#include "irssec/config.hpp"
#include "irssec/types.hpp"

#include <iosfwd>
#include <vector>

namespace irssec
{

// Free-space times molecular absorption: (c / (4 pi f d)) exp(-tau d / 2).
double path_loss(double freq_hz, double distance_m, double absorption_per_m);

struct SteeringVector
{
    cvec elements;       // element k = exp(j pi k psi) / sqrt(n)
    double spatial_freq; // psi
};

SteeringVector steering(int n, double spatial_freq);

// psi = 2 d0 f sin(angle) / c
double spatial_frequency(double spacing_m, double freq_hz, double angle_rad);

// Line-of-sight channels of the BS -> IRS -> receiver links. Rows are the
// normalized IRS -> receiver responses; large-scale factors are kept apart.
struct ChannelSet
{
    SteeringVector irs_rx; // alpha_r, length n_irs
    SteeringVector bs_tx;  // alpha_t, length n_tx
    cmat bs_irs;           // rank one: alpha_r alpha_t^H, n_irs x n_tx
    std::vector<Eigen::RowVectorXcd> user_rows;
    Eigen::RowVectorXcd eve_row;
    std::vector<double> user_beta;
    double eve_beta = 0.0;

    int n_users() const { return int(user_rows.size()); }
    int n_irs() const { return int(bs_irs.rows()); }
    int n_tx() const { return int(bs_irs.cols()); }

    // beta g Theta H, a 1 x n_tx row, for Theta = diag(theta).
    Eigen::RowVectorXcd composite(int user, const cvec &theta) const;
    Eigen::RowVectorXcd eve_composite(const cvec &theta) const;

    // beta_k g_k stacked as rows (n_users x n_irs): the user-specific part of
    // each channel, used for clustering.
    cmat irs_side_rows() const;
};

ChannelSet build_channels(const SystemConfig &cfg, const Scenario &scenario);

// Columns: link,row,col,re,im. beta factors use link=beta with row = user
// index (-1 for Eve).
void write_channels_csv(const ChannelSet &channels, std::ostream &out);

} // namespace irssec

#endif
