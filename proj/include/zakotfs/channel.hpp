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

#include <optional>
#include <string>
#include <vector>

namespace zakotfs {

struct ChannelStats {
    int P = 4;
    double tau_max = 0.0;  // seconds
    double nu_max = 0.0;   // Hz
    double gain_variance = 0.25;
    bool fractional = true;

    void validate() const;
};

/// alpha_max = round(tau_max / Ts).
int max_delay_bins(const ChannelStats& stats, const DDGrid& grid);

/// True when some Doppler in [-nu_max, nu_max] falls outside the K Doppler
/// bins centred on zero, i.e. |k| may exceed K/2 and wraps modulo K.
bool doppler_aliases(const ChannelStats& stats, const DDGrid& grid);

/// Draws one realization. Per path the draw order is alpha, a, theta, h.
/// Throws std::invalid_argument when alpha_max >= L.
ChannelRealization generate_channel(const ChannelStats& stats, const DDGrid& grid, RngStream& rng);

/// Precomputed circular channel for repeated application.
class TimeChannel {
public:
    TimeChannel(const ChannelRealization& chan, const PulseSpec& spec, const DDGrid& grid);
    /// y = x G_T (length N, no CP).
    CVector apply(const CVector& x) const;

private:
    struct Path {
        CVector he;                 // h'_i e_i[n]
        std::vector<int> offset;    // nonzero taps of g_i
        std::vector<double> value;
    };
    int N_;
    std::vector<Path> paths_;
};

/// Noiseless circular channel:
///   y[m] = sum_i h'_i sum_n x[n] e_i[n] g_i[(m - n) mod N]
TimeSignal apply_channel_time(const TimeSignal& x, const ChannelRealization& chan,
                              const PulseSpec& spec, const DDGrid& grid);

/// Adds circularly-symmetric complex Gaussian noise of variance N0 per sample.
TimeSignal add_noise(const TimeSignal& y, double N0, RngStream& rng);

/// N x N operator with y = x * G_T, G_T = sum_i h'_i D(e_i) C(g_i) where
/// C(g)[n, m] = g[(m - n) mod N].
CMatrix build_time_operator(const ChannelRealization& chan, const PulseSpec& spec,
                            const DDGrid& grid);

/// A fixed delay-Doppler geometry. Positions are in bins; a missing gain
/// means the gain is supplied at realization time.
struct ProfilePath {
    double delay_bins = 0.0;
    double doppler_bins = 0.0;
    std::optional<cd> gain;
};

struct ChannelProfile {
    std::string name;
    std::vector<ProfilePath> paths;

    int P() const { return static_cast<int>(paths.size()); }
};

/// Profile file format (JSON):
///   {"name": "A", "paths": [{"delay": 0, "doppler": 1, "gain": [re, im]}, ...]}
/// "gain" is optional. Throws std::runtime_error with a field path on error.
ChannelProfile parse_profile(const std::string& text);
ChannelProfile load_profile(const std::string& path);

/// Realizes a profile: fixed gains where given, otherwise gains[i]
/// (or 1 when gains is empty).
ChannelRealization realize_profile(const ChannelProfile& profile, const std::vector<cd>& gains = {});

} // namespace zakotfs
