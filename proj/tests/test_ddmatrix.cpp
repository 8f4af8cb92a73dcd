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

#include "zakotfs/ddmatrix.hpp"

#include <algorithm>
#include <sstream>

using namespace zakotfs;
using namespace zakotfs::testing;

namespace {

PulseSpec rc(double gamma, int W = 16)
{
    PulseSpec p;
    p.rolloff = gamma;
    p.half_width_taps = W;
    return p;
}

} // namespace

TEST_CASE("effective channel matches the transform oracle")
{
    RngStream rng(31, 0);
    double worst = 0.0;
    int cases = 0;
    for (int K : {2, 4, 8})
        for (double gamma : {0.0, 0.5})
            for (bool frac : {false, true})
                for (int r = 0; r < 3; ++r) {
                    DDGrid g(K, K, 1.0);
                    const PulseSpec s = rc(gamma);
                    const ChannelRealization c =
                        random_channel(1 + r, K - 1, 0.5 * K, frac, rng);
                    const CMatrix H = build_effective_channel(c, s, g).H;
                    worst = std::max(worst, max_abs(H - oracle_H(c, s, g)));
                    ++cases;
                }
    CHECK(cases == 36);
    CHECK(worst < 1e-9);
}

TEST_CASE("effective channel of the identity path")
{
    DDGrid g(4, 4, 1.0);
    ChannelRealization c;
    c.paths.push_back(ChannelPath::from_bins(cd(0.6, -0.8), 0.0, 0.0));
    const CMatrix H = build_effective_channel(c, rc(0.5), g).H;
    CHECK(max_abs(H - cd(0.6, -0.8) * CMatrix::Identity(16, 16)) < 1e-14);
}

TEST_CASE("factor structure")
{
    RngStream rng(32, 0);
    DDGrid g(4, 3, 1.0);
    const int K = 4, L = 3, N = 12;
    const CVector e = doppler_sequence(1.3, N);
    const CMatrix E = build_doppler_factor(e, g);
    REQUIRE(E.rows() == N);
    for (int a = 0; a < L; ++a)
        for (int b = 0; b < L; ++b)
            if (a != b)
                CHECK(max_abs(E.block(a * K, b * K, K, K)) == 0.0);
    // every row of B_u is a cyclic shift of row 0
    for (int u = 0; u < L; ++u) {
        const CMatrix B = E.block(u * K, u * K, K, K);
        for (int j = 0; j < K; ++j)
            for (int k = 0; k < K; ++k)
                CHECK(std::abs(B(j, k) - B(0, ((k - j) % K + K) % K)) < 1e-15);
    }

    const CVector gseq = sample_delay_sequence(1.6, N, rc(0.3));
    const CMatrix G = build_delay_factor(gseq, g);
    CHECK(G.rows() == N);
    CHECK(G.cols() == N);

    ChannelPath p = ChannelPath::from_bins(1.0, 1.6, 1.3);
    const CMatrix F = build_path_matrix(p, rc(0.3), g);
    CHECK(max_abs(F - E * G) < 1e-12);
    (void)rng;
}

TEST_CASE("impulse delay factor is the identity")
{
    DDGrid g(4, 4, 1.0);
    CVector d = CVector::Zero(16);
    d[0] = 1.0;
    // the factor carries one K^{-1/2} of the two DZT scalings
    CHECK(max_abs(2.0 * build_delay_factor(d, g) - CMatrix::Identity(16, 16)) < 1e-14);
}

TEST_CASE("integer delay is a twisted DD shift")
{
    DDGrid g(4, 4, 1.0);
    const int K = 4, L = 4;
    ChannelRealization c;
    c.paths.push_back(ChannelPath::from_bins(1.0, 2.0, 0.0));
    const CMatrix H = build_effective_channel(c, rc(0.5), g).H;
    for (int k = 0; k < K; ++k)
        for (int l = 0; l < L; ++l) {
            const int l2 = l + 2;
            const cd want = l2 >= L ? std::polar(1.0, -2.0 * kPi * k / K) : cd(1.0);
            CHECK(std::abs(H(k + K * l, k + K * (l2 % L)) - want) < 1e-14);
        }
}

TEST_CASE("effective channel is linear in the gains and additive over paths")
{
    RngStream rng(33, 0);
    DDGrid g(4, 4, 1.0);
    const PulseSpec s = rc(0.5);
    const ChannelRealization a = random_channel(2, 3, 2.0, true, rng);
    const ChannelRealization b = random_channel(3, 3, 2.0, true, rng);
    ChannelRealization ab = a;
    ab.paths.insert(ab.paths.end(), b.paths.begin(), b.paths.end());
    const CMatrix Ha = build_effective_channel(a, s, g).H;
    const CMatrix Hb = build_effective_channel(b, s, g).H;
    CHECK(max_abs(build_effective_channel(ab, s, g).H - (Ha + Hb)) < 1e-12);
    ChannelRealization a2 = a;
    for (auto& p : a2.paths)
        p.gain *= cd(0.0, 2.0);
    CHECK(max_abs(build_effective_channel(a2, s, g).H - cd(0.0, 2.0) * Ha) < 1e-12);
}

TEST_CASE("xH has the energy of the noiseless time signal")
{
    RngStream rng(34, 0);
    DDGrid g(8, 8, 1.0);
    const PulseSpec s = rc(0.2);
    const ChannelRealization c = random_channel(4, 6, 3.0, true, rng);
    const CMatrix H = build_effective_channel(c, s, g).H;
    for (int r = 0; r < 5; ++r) {
        const DDFrame f = random_frame(g, rng);
        const CVector y = apply_channel_time(idzt(f), c, s, g).samples;
        CHECK((flatten(f) * H).norm() == doctest::Approx(y.norm()).epsilon(1e-12));
    }
}

TEST_CASE("dd transmit receive and noise")
{
    RngStream rng(35, 0);
    DDGrid g(4, 4, 1.0);
    const CMatrix H = random_matrix(16, 16, rng);
    const CVector x = random_vector(16, rng);
    CHECK(max_abs(dd_transmit_receive(x, H, g, 0.0, rng) - x * H) == 0.0);

    const double N0 = 0.5;
    const int draws = 100000 / 16 + 1;
    RVector power = RVector::Zero(16);
    for (int t = 0; t < draws; ++t)
        power += dd_noise(g, N0, rng).cwiseAbs2();
    power /= draws;
    const double mean = power.mean();
    CHECK(mean == doctest::Approx(N0).epsilon(0.02));
    for (int q = 0; q < 16; ++q)
        CHECK(power[q] == doctest::Approx(N0).epsilon(0.08));
}

TEST_CASE("phase rotation")
{
    CVector ones = CVector::Ones(4);
    const CVector r = phase_rotate(ones);
    for (int q = 0; q < 4; ++q)
        CHECK(std::abs(r[q] - std::polar(1.0, q / 4.0)) < 1e-15);
    RngStream rng(36, 0);
    const CVector x = random_vector(64, rng);
    const CVector y = phase_rotate(x, 2.5);
    CHECK(y[0] == x[0]);
    CHECK(y.norm() == doctest::Approx(x.norm()).epsilon(1e-14));
    CHECK(max_abs(phase_unrotate(y, 2.5) - x) < 1e-14);
    for (int q = 0; q < 64; ++q)
        CHECK(std::abs(y[q]) == doctest::Approx(std::abs(x[q])));
}

TEST_CASE("matrix csv dump")
{
    CMatrix H(2, 2);
    H << cd(1, 2), cd(3, 4), cd(5, 6), cd(7, 8);
    std::ostringstream os;
    write_matrix_csv(os, H);
    const std::string s = os.str();
    CHECK(s.rfind("row,col,re,im\n", 0) == 0);
    CHECK(s.find("1,0,5,6") != std::string::npos);
    CHECK(std::count(s.begin(), s.end(), '\n') == 5);
}
