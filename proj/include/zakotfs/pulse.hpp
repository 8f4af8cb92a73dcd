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

namespace zakotfs {

enum class PulseShape {
    RaisedCosine, // composite of two root-raised-cosine filters
    Rectangular,  // composite of two rectangular pulses: triangle of width 2 Ts
};

struct PulseSpec {
    PulseShape shape = PulseShape::RaisedCosine;
    double rolloff = 0.0; // gamma in [0, 1]
    double Ts = 1.0;
    int half_width_taps = 16; // g(t) = 0 for |t| > W Ts

    void validate() const;
};

/// Composite transmit/receive pulse g(t). For the raised cosine,
///   g(t) = sinc(t/Ts) cos(gamma pi t/Ts) / (1 - (2 gamma t / Ts)^2)
/// with the removable points at t = 0 and |t| = Ts/(2 gamma) filled by
/// their limits.
double rc_autocorr(double t, const PulseSpec& spec);

/// g_i[n] = sum_r g((n + rN - l) Ts): the windowed pulse sampled at offset
/// l and wrapped circularly over N samples.
/// Throws std::invalid_argument if l < 0 or l >= N.
CVector sample_delay_sequence(double l, int N, const PulseSpec& spec);

/// e_i[n] = exp(j 2 pi k n / N).
CVector doppler_sequence(double k, int N);

} // namespace zakotfs
