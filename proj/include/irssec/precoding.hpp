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

#ifndef IRSSEC_PRECODING_HPP
#define IRSSEC_PRECODING_HPP

#include "irssec/channel.hpp"
#include "irssec/clustering.hpp"
#include "irssec/config.hpp"

#include <stdexcept>

namespace irssec
{

struct QuantizedPhase
{
    int index;  // n in the grid 2 pi n / 2^B
    cplx value; // exp(j 2 pi n / 2^B)
};

// Nearest point of the B-bit phase grid in circular distance; ties go to
// the smaller index.
QuantizedPhase quantize_phase(double angle_rad, int bits);

struct AnalogPrecoder
{
    cmat F; // n_tx x n_rf
    Architecture architecture;
};

struct DigitalPrecoder
{
    cmat V; // n_rf x L, columns normalized so that |F v_l| = 1
};

struct PrecoderSet
{
    AnalogPrecoder analog;
    DigitalPrecoder digital;
    bool zero_forcing = true; // false when the pseudo-inverse fallback was used
};

class SingularChannelError : public std::runtime_error
{
public:
    SingularChannelError(int first, int second, const std::string &what)
        : std::runtime_error(what), first_(first), second_(second)
    {
    }
    int first() const noexcept { return first_; }
    int second() const noexcept { return second_; }

private:
    int first_, second_;
};

// Column l (FC) or block l (SC) co-phases row l of `heads` (n_rf x n_tx),
// quantized to `bits` bits.
AnalogPrecoder analog_precoder(const cmat &heads, Architecture arch, int bits);

// The same for the composite channels of the cluster heads under IRS
// phases theta.
AnalogPrecoder analog_precoder(const ChannelSet &channels, const ClusterAssignment &assignment,
                               const cvec &theta, const SystemConfig &cfg);

// G with column l = (G_head(l) F)^H, so that G^H v = [G_head(l) F v]_l.
cmat head_channel_matrix(const ChannelSet &channels, const ClusterAssignment &assignment, const cmat &F,
                         const cvec &theta);

// V = G (G^H G)^{-1}, columns scaled to |F v_l| = 1. Throws
// SingularChannelError naming the most correlated cluster pair when G is
// rank deficient.
DigitalPrecoder zf_digital(const cmat &G, const cmat &F, double cond_limit = 1e10);

// Minimum-norm least-squares inverse of G^H, same normalization. Used when
// the head channels are linearly dependent.
DigitalPrecoder pinv_digital(const cmat &G, const cmat &F);

PrecoderSet build_precoders(const ChannelSet &channels, const ClusterAssignment &assignment, const cvec &theta,
                            const SystemConfig &cfg);

} // namespace irssec

#endif
