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

// Naive reference implementations used as oracles by the tests.

#include "zakotfs/channel.hpp"
#include "zakotfs/core.hpp"
#include "zakotfs/pulse.hpp"
#include "zakotfs/transforms.hpp"

#include <cmath>

namespace zakotfs::testing {

inline CMatrix random_matrix(int rows, int cols, RngStream& rng)
{
    CMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            m(i, j) = rng.complex_gaussian(1.0);
    return m;
}

inline CVector random_vector(int n, RngStream& rng)
{
    CVector v(n);
    for (int i = 0; i < n; ++i)
        v[i] = rng.complex_gaussian(1.0);
    return v;
}

inline DDFrame random_frame(const DDGrid& g, RngStream& rng)
{
    return DDFrame(g, random_matrix(g.K(), g.L(), rng));
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a)
{
    return a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
}

// x[n] = K^{-1/2} sum_k Z[k, n mod L] e^{j 2 pi floor(n/L) k / K}
inline CVector naive_idzt(const DDFrame& f)
{
    const int K = f.grid.K(), L = f.grid.L();
    CVector x = CVector::Zero(K * L);
    for (int n = 0; n < K * L; ++n)
        for (int k = 0; k < K; ++k)
            x[n] += f(k, n % L) * std::polar(1.0, 2.0 * kPi * (n / L) * k / K);
    return x / std::sqrt(double(K));
}

inline CMatrix naive_dzt(const CVector& y, const DDGrid& g)
{
    const int K = g.K(), L = g.L();
    CMatrix Z = CMatrix::Zero(K, L);
    for (int k = 0; k < K; ++k)
        for (int l = 0; l < L; ++l)
            for (int n = 0; n < K; ++n)
                Z(k, l) += y[l + n * L] * std::polar(1.0, -2.0 * kPi * k * n / K);
    return Z / std::sqrt(double(K));
}

// CP form of the circular channel: cyclically extend the Doppler-modulated
// signal, convolve linearly with the windowed pulse, keep the N body samples.
inline CVector cp_channel(const CVector& x, const ChannelRealization& chan, const PulseSpec& spec,
                          const DDGrid& g)
{
    const int N = g.N();
    const int W = spec.half_width_taps;
    CVector y = CVector::Zero(N);
    for (const ChannelPath& p : chan.paths) {
        const double l = p.delay_bins();
        const int pre = int(std::ceil(l)) + W + 2;
        const int post = W + 2;
        const int M = pre + N + post;
        CVector s(M);
        for (int t = 0; t < M; ++t) {
            const int n = ((t - pre) % N + N) % N;
            s[t] = x[n] * std::polar(1.0, 2.0 * kPi * p.doppler_bins() * n / N);
        }
        CVector r = CVector::Zero(M);
        for (int m = 0; m < M; ++m)
            for (int t = 0; t < M; ++t) {
                const double v = rc_autocorr((m - t - l) * spec.Ts, spec);
                if (v != 0.0)
                    r[m] += v * s[t];
            }
        y += p.effective_gain(g) * r.segment(pre, N);
    }
    return y;
}

// Row q of the oracle H is the DD response to the q-th unit frame.
inline CMatrix oracle_H(const ChannelRealization& chan, const PulseSpec& spec, const DDGrid& g)
{
    const int N = g.N();
    CMatrix H(N, N);
    for (int q = 0; q < N; ++q) {
        DDFrame e(g);
        e.values(q % g.K(), q / g.K()) = 1.0;
        TimeSignal y;
        y.samples = cp_channel(naive_idzt(e), chan, spec, g);
        H.row(q) = flatten(DDFrame(g, naive_dzt(y.samples, g)));
    }
    return H;
}

inline ChannelRealization random_channel(int P, int alpha_max, double k_span, bool fractional,
                                         RngStream& rng)
{
    ChannelRealization c;
    for (int i = 0; i < P; ++i) {
        double d = rng.uniform_int(0, alpha_max);
        double k = rng.uniform(-k_span, k_span);
        if (fractional)
            d = std::abs(d + rng.uniform(-0.5, 0.5));
        else
            k = std::round(k);
        c.paths.push_back(ChannelPath::from_bins(rng.complex_gaussian(1.0 / P), d, k));
    }
    return c;
}

} // namespace zakotfs::testing
