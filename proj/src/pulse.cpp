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

#include "zakotfs/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zakotfs {

void PulseSpec::validate() const
{
    if (!(rolloff >= 0.0 && rolloff <= 1.0))
        throw std::invalid_argument("pulse: rolloff must lie in [0, 1]");
    if (!(Ts > 0.0))
        throw std::invalid_argument("pulse: Ts must be positive");
    if (half_width_taps < 1)
        throw std::invalid_argument("pulse: half_width_taps must be >= 1");
}

namespace {

double sinc(double x)
{
    if (x == 0.0)
        return 1.0;
    return std::sin(kPi * x) / (kPi * x);
}

} // namespace

double rc_autocorr(double t, const PulseSpec& spec)
{
    const double u = t / spec.Ts;
    if (std::abs(u) > spec.half_width_taps)
        return 0.0;
    if (spec.shape == PulseShape::Rectangular)
        return std::max(0.0, 1.0 - std::abs(u));

    const double g = spec.rolloff;
    const double d = 2.0 * g * u;
    // 1 - d^2 -> 0 at |u| = 1/(2 gamma): cos(pi d / 2) / (1 - d^2) -> pi / 4
    if (g > 0.0 && std::abs(std::abs(d) - 1.0) < 1e-12)
        return 0.25 * kPi * sinc(1.0 / (2.0 * g));
    return sinc(u) * std::cos(g * kPi * u) / (1.0 - d * d);
}

CVector sample_delay_sequence(double l, int N, const PulseSpec& spec)
{
    if (N < 1)
        throw std::invalid_argument("sample_delay_sequence: N must be positive");
    if (!(l >= 0.0) || l >= N)
        throw std::invalid_argument("sample_delay_sequence: delay outside [0, N)");
    CVector out = CVector::Zero(N);
    const int W = spec.half_width_taps;
    const double frac = l - std::floor(l);
    const int base = static_cast<int>(std::floor(l));
    // offsets d with |d - frac| <= W cover the pulse support
    for (int d = -W - 1; d <= W + 1; ++d) {
        const double v = rc_autocorr((d - frac) * spec.Ts, spec);
        if (v == 0.0)
            continue;
        const int n = ((base + d) % N + N) % N;
        out[n] += v;
    }
    return out;
}

CVector doppler_sequence(double k, int N)
{
    CVector out(N);
    for (int n = 0; n < N; ++n)
        out[n] = std::polar(1.0, 2.0 * kPi * k * n / N);
    return out;
}

} // namespace zakotfs
