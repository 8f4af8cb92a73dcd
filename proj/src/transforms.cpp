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

#include "zakotfs/transforms.hpp"

#include "zakotfs/fft.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace zakotfs {

namespace {

// Raw kernels shared by the public API and the benchmark. Z is column-major
// K x L, x is length K*L.

void idzt_kernel(const cd* Z, cd* x, int K, int L, std::vector<cd>& buf)
{
    const FftPlan& plan = fft_plan(K);
    const double s = 1.0 / std::sqrt(static_cast<double>(K));
    buf.resize(K);
    for (int l = 0; l < L; ++l) {
        std::copy(Z + static_cast<std::ptrdiff_t>(K) * l, Z + static_cast<std::ptrdiff_t>(K) * (l + 1),
                  buf.begin());
        plan.inverse(buf.data());
        for (int n = 0; n < K; ++n)
            x[l + n * L] = buf[n] * s;
    }
}

void dzt_kernel(const cd* x, cd* Z, int K, int L)
{
    const FftPlan& plan = fft_plan(K);
    const double s = 1.0 / std::sqrt(static_cast<double>(K));
    for (int l = 0; l < L; ++l) {
        cd* col = Z + static_cast<std::ptrdiff_t>(K) * l;
        for (int n = 0; n < K; ++n)
            col[n] = x[l + n * L];
        plan.forward(col);
        for (int n = 0; n < K; ++n)
            col[n] *= s;
    }
}

// Along Doppler/time (columns, length K) then along delay/frequency (rows,
// length L).
void symplectic_kernel(cd* G, int K, int L, bool to_tf, std::vector<cd>& buf)
{
    const FftPlan& pk = fft_plan(K);
    const FftPlan& pl = fft_plan(L);
    for (int l = 0; l < L; ++l) {
        cd* col = G + static_cast<std::ptrdiff_t>(K) * l;
        if (to_tf)
            pk.inverse(col);
        else
            pk.forward(col);
    }
    buf.resize(L);
    const double s = 1.0 / std::sqrt(static_cast<double>(K) * L);
    for (int k = 0; k < K; ++k) {
        for (int l = 0; l < L; ++l)
            buf[l] = G[k + static_cast<std::ptrdiff_t>(K) * l];
        if (to_tf)
            pl.forward(buf.data());
        else
            pl.inverse(buf.data());
        for (int l = 0; l < L; ++l)
            G[k + static_cast<std::ptrdiff_t>(K) * l] = buf[l] * s;
    }
}

} // namespace

TimeSignal idzt(const DDFrame& frame)
{
    const int K = frame.grid.K();
    const int L = frame.grid.L();
    TimeSignal out;
    out.samples.resize(frame.grid.N());
    std::vector<cd> buf;
    idzt_kernel(frame.values.data(), out.samples.data(), K, L, buf);
    return out;
}

DDFrame dzt(const TimeSignal& signal, const DDGrid& grid)
{
    if (signal.cp_len != 0)
        throw std::invalid_argument("dzt: strip the cyclic prefix first");
    if (signal.size() != grid.N())
        throw std::invalid_argument("dzt: signal length does not match grid");
    DDFrame out(grid);
    dzt_kernel(signal.samples.data(), out.values.data(), grid.K(), grid.L());
    return out;
}

CMatrix isfft(const DDFrame& frame)
{
    CMatrix tf = frame.values;
    std::vector<cd> buf;
    symplectic_kernel(tf.data(), frame.grid.K(), frame.grid.L(), true, buf);
    return tf;
}

DDFrame sfft(const CMatrix& tf, const DDGrid& grid)
{
    if (tf.rows() != grid.K() || tf.cols() != grid.L())
        throw std::invalid_argument("sfft: grid shape mismatch");
    DDFrame out(grid, tf);
    std::vector<cd> buf;
    symplectic_kernel(out.values.data(), grid.K(), grid.L(), false, buf);
    return out;
}

TransformTiming transform_cost_benchmark(int K, int L, int repetitions)
{
    if (!is_power_of_two(K) || !is_power_of_two(L))
        throw std::invalid_argument("transform_cost_benchmark: K and L must be powers of two");
    if (repetitions < 1)
        throw std::invalid_argument("transform_cost_benchmark: repetitions must be positive");

    const int N = K * L;
    std::vector<cd> frame(N), time(N), work(N), buf;
    RngStream rng(0xbe7c4, static_cast<std::uint64_t>(N));
    for (auto& v : frame)
        v = rng.complex_gaussian(1.0);
    // warm the plan cache
    fft_plan(K);
    fft_plan(L);

    using clock = std::chrono::steady_clock;
    // Each sample repeats the transform enough times to rise well above
    // timer resolution.
    const int inner = std::max(1, (1 << 22) / (N * 8));

    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t m = v.size() / 2;
        return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
    };

    std::vector<double> dzt_samples, sfft_samples;
    for (int r = 0; r < repetitions; ++r) {
        auto t0 = clock::now();
        for (int i = 0; i < inner; ++i) {
            idzt_kernel(frame.data(), time.data(), K, L, buf);
            dzt_kernel(time.data(), work.data(), K, L);
        }
        auto t1 = clock::now();
        for (int i = 0; i < inner; ++i) {
            std::copy(frame.begin(), frame.end(), work.begin());
            symplectic_kernel(work.data(), K, L, true, buf);
            symplectic_kernel(work.data(), K, L, false, buf);
        }
        auto t2 = clock::now();
        dzt_samples.push_back(std::chrono::duration<double>(t1 - t0).count() / inner);
        sfft_samples.push_back(std::chrono::duration<double>(t2 - t1).count() / inner);
    }
    return {median(dzt_samples), median(sfft_samples)};
}

} // namespace zakotfs
