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

#include "doctest.h"
#include "support.hpp"

#include "zakotfs/fft.hpp"
#include "zakotfs/transforms.hpp"

#include <set>

using namespace zakotfs;
using namespace zakotfs::testing;

TEST_CASE("flatten uses k + K l")
{
    DDGrid g(2, 2, 1.0);
    DDFrame f(g);
    f(0, 0) = 1.0;
    f(0, 1) = 3.0;
    f(1, 0) = 2.0;
    f(1, 1) = 4.0;
    const CVector v = flatten(f);
    CHECK(v[0] == cd(1.0));
    CHECK(v[1] == cd(2.0));
    CHECK(v[2] == cd(3.0));
    CHECK(v[3] == cd(4.0));
    CHECK(max_abs(flatten(DDFrame(g))) == 0.0);

    RngStream rng(5, 0);
    DDGrid g2(3, 5, 1.0);
    const DDFrame r = random_frame(g2, rng);
    CHECK(max_abs(unflatten(flatten(r), g2).values - r.values) == 0.0);
}

TEST_CASE("flat index is a bijection")
{
    DDGrid g(4, 3, 1.0);
    std::set<std::pair<int, int>> seen;
    for (int q = 0; q < g.N(); ++q) {
        CVector v = CVector::Zero(g.N());
        v[q] = 1.0;
        const DDFrame f = unflatten(v, g);
        int hits = 0;
        for (int k = 0; k < g.K(); ++k)
            for (int l = 0; l < g.L(); ++l)
                if (f(k, l) != 0.0) {
                    seen.insert({k, l});
                    ++hits;
                }
        CHECK(hits == 1);
    }
    CHECK(seen.size() == std::size_t(g.N()));
}

TEST_CASE("rng streams")
{
    RngStream a(42, 0), b(42, 0), c(42, 1);
    bool differ = false;
    for (int i = 0; i < 32; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        differ |= x != c.next_u64();
    }
    CHECK(differ);
    CHECK(stream_key({1, 2, 3}) != stream_key({1, 3, 2}));
}

TEST_CASE("fft matches the direct DFT")
{
    RngStream rng(3, 0);
    for (int n : {1, 2, 3, 5, 8, 12, 16, 17}) {
        CVector x = random_vector(n, rng);
        CVector X = x;
        fft_plan(n).forward(X.data());
        CVector D = CVector::Zero(n);
        for (int k = 0; k < n; ++k)
            for (int t = 0; t < n; ++t)
                D[k] += x[t] * std::polar(1.0, -2.0 * kPi * k * t / n);
        CHECK(max_abs(X - D) < 1e-10);
        fft_plan(n).inverse(X.data());
        CHECK(max_abs(X / double(n) - x) < 1e-12);
    }
}

TEST_CASE("idzt examples")
{
    DDGrid g(4, 3, 1.0);
    DDFrame d(g);
    d(0, 0) = 1.0;
    const CVector x = idzt(d).samples;
    for (int n = 0; n < g.N(); ++n)
        CHECK(std::abs(x[n] - cd(n % 3 == 0 ? 0.5 : 0.0)) < 1e-15);

    DDFrame ones(g, CMatrix::Constant(4, 3, 1.0));
    const CVector y = idzt(ones).samples;
    for (int n = 0; n < g.N(); ++n)
        CHECK(std::abs(y[n] - cd(n < 3 ? 2.0 : 0.0)) < 1e-14);
}

TEST_CASE("dzt of an impulse")
{
    DDGrid g(4, 4, 1.0);
    TimeSignal s;
    s.samples = CVector::Zero(16);
    s.samples[0] = 1.0;
    const DDFrame Z = dzt(s, g);
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
            CHECK(std::abs(Z(k, l) - cd(l == 0 ? 0.5 : 0.0)) < 1e-15);
}

TEST_CASE("transforms agree with the naive sums")
{
    RngStream rng(11, 0);
    for (auto [K, L] : {std::pair{4, 3}, {3, 5}, {8, 8}, {6, 2}}) {
        DDGrid g(K, L, 1.0);
        const DDFrame f = random_frame(g, rng);
        CHECK(max_abs(idzt(f).samples - naive_idzt(f)) < 1e-12);
        TimeSignal s;
        s.samples = random_vector(g.N(), rng);
        CHECK(max_abs(dzt(s, g).values - naive_dzt(s.samples, g)) < 1e-12);
    }
}

TEST_CASE("round trips and isometry up to N = 4096")
{
    RngStream rng(12, 0);
    for (auto [K, L] : {std::pair{2, 2}, {16, 16}, {64, 64}, {32, 128}, {5, 7}}) {
        DDGrid g(K, L, 1.0);
        const DDFrame f = random_frame(g, rng);
        const TimeSignal x = idzt(f);
        CHECK(max_abs(dzt(x, g).values - f.values) < 1e-12);
        CHECK(std::abs(x.samples.norm() - f.values.norm()) < 1e-12 * f.values.norm());
        TimeSignal s;
        s.samples = random_vector(g.N(), rng);
        CHECK(max_abs(idzt(dzt(s, g)).samples - s.samples) < 1e-12);
    }
}

TEST_CASE("idzt is linear")
{
    RngStream rng(13, 0);
    DDGrid g(8, 4, 1.0);
    const DDFrame a = random_frame(g, rng), b = random_frame(g, rng);
    const cd s(0.3, -1.2), t(-2.0, 0.5);
    const DDFrame c(g, s * a.values + t * b.values);
    CHECK(max_abs(idzt(c).samples - (s * idzt(a).samples + t * idzt(b).samples)) < 1e-12);
}

TEST_CASE("dzt is periodic in Doppler and quasi-periodic in delay")
{
    RngStream rng(14, 0);
    DDGrid g(4, 4, 1.0);
    const int K = 4, L = 4, N = 16;
    const CVector y = random_vector(N, rng);
    const CMatrix Z = dzt(TimeSignal{y, 0}, g).values;
    // evaluate the defining sum with extended indices
    auto ext = [&](int k, int l) {
        cd acc = 0.0;
        for (int n = 0; n < K; ++n) {
            const int m = l + n * L;
            acc += y[((m % N) + N) % N] * std::polar(1.0, -2.0 * kPi * k * n / K);
        }
        return acc / 2.0;
    };
    for (int k = 0; k < K; ++k)
        for (int l = 0; l < L; ++l) {
            CHECK(std::abs(ext(k + K, l) - Z(k, l)) < 1e-12);
            CHECK(std::abs(ext(k, l + L) - std::polar(1.0, 2.0 * kPi * k / K) * Z(k, l)) < 1e-12);
        }
}

TEST_CASE("isfft is unitary")
{
    RngStream rng(15, 0);
    DDGrid g(8, 4, 1.0);
    const DDFrame f = random_frame(g, rng);
    const CMatrix X = isfft(f);
    CHECK(std::abs(X.norm() - f.values.norm()) < 1e-12);
    CHECK(max_abs(sfft(X, g).values - f.values) < 1e-12);
    CHECK(max_abs(isfft(DDFrame(g))) == 0.0);
}

TEST_CASE("dzt rejects bad input")
{
    DDGrid g(4, 4, 1.0);
    TimeSignal s;
    s.samples = CVector::Zero(15);
    CHECK_THROWS_AS(dzt(s, g), std::invalid_argument);
    s.samples = CVector::Zero(18);
    s.cp_len = 2;
    CHECK_THROWS_AS(dzt(s, g), std::invalid_argument);
}

TEST_CASE("benchmark returns positive timings")
{
    const TransformTiming t = transform_cost_benchmark(16, 16, 3);
    CHECK(t.dzt_seconds > 0.0);
    CHECK(t.sfft_seconds > 0.0);
    const TransformTiming one = transform_cost_benchmark(1, 16, 3);
    CHECK(one.dzt_seconds > 0.0);
}
