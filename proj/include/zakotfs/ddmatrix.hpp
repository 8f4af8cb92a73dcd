// SPDX-License-Identifier: Apache-2.0
//
// zakotfs: link-level simulation of Zak-transform OTFS
// Copyright (C) 2026 The zakotfs authors
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

#pragma once

#include "zakotfs/core.hpp"
#include "zakotfs/pulse.hpp"

#include <ostream>

namespace zakotfs {

/// End-to-end delay-Doppler channel. Row-vector convention: y = x H + v,
/// with x, y flattened as k + K l.
struct EffectiveChannel {
    CMatrix H;
    DDGrid grid;
    static constexpr const char* convention = "row-vector, y = xH + v";
};

/// Doppler factor E_i: block diagonal with one K x K block per delay column
/// u, B_u[j, k] = Ze[(k - j) mod K, u] where Ze is the DZT of e_i. Row j of
/// B_u is column u of Ze (as a row) times P_K^j, with P_K the cyclic shift
/// P_K[i, (i + 1) mod K] = 1.
CMatrix build_doppler_factor(const CVector& e, const DDGrid& grid);

/// Delay factor G_i: block row m is A Q_m with A = [A_0 ... A_{L-1}],
/// A_u = diag(column u of the DZT of g_i). Q_m moves delay block v to
/// v + m mod L; blocks that wrap past the frame edge pick up the Zak
/// quasi-periodicity phase diag(e^{-j 2 pi k / K}).
CMatrix build_delay_factor(const CVector& g, const DDGrid& grid);

/// E_i G_i for one path with unit gain (h'_i excluded), evaluated entrywise:
///   [E G]((j, m), (k, l)) = Ze[(k - j) mod K, m] * Zg~[k, l - m]
/// where Zg~[k, l - m] = e^{-j 2 pi k / K} Zg[k, l - m + L] for l < m.
CMatrix build_path_matrix(const ChannelPath& path, const PulseSpec& spec, const DDGrid& grid);

/// H = sum_i h'_i E_i G_i, summed in path order.
EffectiveChannel build_effective_channel(const ChannelRealization& chan, const PulseSpec& spec,
                                         const DDGrid& grid);

/// DD-domain noise: flattened DZT of white time-domain noise of variance N0.
CVector dd_noise(const DDGrid& grid, double N0, RngStream& rng);

/// y = x H + v with v drawn by dd_noise.
CVector dd_transmit_receive(const CVector& x, const CMatrix& H, const DDGrid& grid, double N0,
                            RngStream& rng);

/// x~[q] = e^{j slope q / N} x[q]. The default slope of 1 applies q/N radians.
CVector phase_rotate(const CVector& x, double slope = 1.0);
CVector phase_unrotate(const CVector& x, double slope = 1.0);

/// One line per entry: row,col,re,im (with a header line).
void write_matrix_csv(std::ostream& os, const CMatrix& H);

} // namespace zakotfs
