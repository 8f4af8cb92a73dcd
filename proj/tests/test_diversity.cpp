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
#include "zakotfs/diversity.hpp"

using namespace zakotfs;
using namespace zakotfs::testing;

namespace {

std::vector<std::int64_t> counts(const std::string& sys, const std::string& prof, bool pr)
{
    return rank_profile(builtin_system(sys), builtin_profile(prof), pr).counts;
}

double slope(const BerBounds& b, const std::vector<double>& v, std::size_t i, std::size_t j)
{
    return (std::log10(v[j]) - std::log10(v[i])) / ((b.snr_db[j] - b.snr_db[i]) / 10.0);
}

} // namespace

TEST_CASE("rank histograms for the small systems")
{
    using V = std::vector<std::int64_t>;
    CHECK(counts("s1", "A", false) == V{0, 32, 208});
    CHECK(counts("s1", "A", true) == V{0, 0, 240});
    CHECK(counts("s1", "B", false) == V{0, 0, 240});
    CHECK(counts("s1", "B", true) == V{0, 0, 240});
    CHECK(counts("s2", "C", true) == V{0, 0, 0, 0, 65280});
    CHECK(counts("s2", "D", false) == V{0, 0, 0, 0, 65280});
    CHECK(counts("s2", "D", true) == V{0, 0, 0, 0, 65280});
    const RankHistogram c = rank_profile(builtin_system("s2"), builtin_profile("C"), false);
    CHECK(c.min_rank == 2);
}

TEST_CASE("histogram structure")
{
    for (const char* sys : {"s1", "s2"})
        for (const char* prof : {"A", "B", "C", "D"})
            for (bool pr : {false, true}) {
                const SystemSpec s = builtin_system(sys);
                const DDProfile p = builtin_profile(prof);
                const RankHistogram h = rank_profile(s, p, pr);
                const std::int64_t Q = std::int64_t(1) << s.N();
                std::int64_t total = 0;
                for (std::size_t r = 0; r < h.counts.size(); ++r) {
                    CHECK(h.counts[r] % 2 == 0);
                    total += h.counts[r];
                    if (h.counts[r] > 0)
                        CHECK(int(r) <= std::min(p.P(), s.N()));
                }
                CHECK(total == Q * (Q - 1));
                CHECK(h.tolerance_stable);
                CHECK(h.counts[0] == 0);
            }
}

TEST_CASE("phase rotation never lowers the diversity order")
{
    for (const char* sys : {"s1", "s2"})
        for (const char* prof : {"A", "B", "C", "D"}) {
            const SystemSpec s = builtin_system(sys);
            const DDProfile p = builtin_profile(prof);
            CHECK(rank_profile(s, p, true).min_rank >= rank_profile(s, p, false).min_rank);
        }
}

TEST_CASE("rank profile guard")
{
    SystemSpec big = builtin_system("s2");
    big.L = 8;
    CHECK_THROWS_AS(rank_profile(big, builtin_profile("A"), false), std::invalid_argument);
}

TEST_CASE("numerical rank tolerance")
{
    Eigen::VectorXd s(3);
    s << 1.0, 1e-6, 1e-12;
    CHECK(numerical_rank(s, 3, 8, 1e-9) == 2);
    CHECK(numerical_rank(s, 3, 8, 1e-5) == 1);
    s << 0.0, 0.0, 0.0;
    CHECK(numerical_rank(s, 3, 8, 1e-9) == 0);
}

TEST_CASE("symbol matrix reproduces xH")
{
    RngStream rng(51, 0);
    const SystemSpec s = builtin_system("s2");
    const DDGrid g = s.grid();
    PulseSpec pulse;
    pulse.Ts = g.Ts();
    for (const char* prof : {"C", "D"}) {
        const DDProfile p = builtin_profile(prof);
        const auto F = path_factors(p, pulse, g);
        for (int r = 0; r < 10; ++r) {
            const CVector x = random_vector(s.N(), rng);
            CVector h(p.P());
            std::vector<cd> gains;
            for (int i = 0; i < p.P(); ++i) {
                gains.push_back(rng.complex_gaussian(1.0));
                h[i] = gains.back();
            }
            ChannelRealization c = realize_profile(p, gains);
            for (int i = 0; i < p.P(); ++i)
                h[i] = c.paths[i].effective_gain(g);
            const CMatrix H = build_effective_channel(c, pulse, g).H;
            const CMatrix X = build_symbol_matrix(x, F);
            CHECK(max_abs(h * X - x * H) < 1e-10);
        }
        CHECK(max_abs(build_symbol_matrix(CVector::Zero(s.N()), F)) == 0.0);
    }

    DDProfile one;
    one.paths.push_back({0.0, 0.0, std::nullopt});
    PulseSpec nyq;
    nyq.rolloff = 0.5;
    nyq.Ts = g.Ts();
    const CVector x = random_vector(s.N(), rng);
    const CMatrix X = build_symbol_matrix(x, one, nyq, g);
    REQUIRE(X.rows() == 1);
    CHECK(max_abs(X.row(0) - x) < 1e-14);
}

TEST_CASE("pep bound examples")
{
    CMatrix a(1, 1), b(1, 1);
    a(0, 0) = 2.0;
    b(0, 0) = 0.0;
    CHECK(pep_bound(a, a, 10.0, 1) == 1.0);
    CHECK(pep_bound(a, b, 1e-12, 1) == doctest::Approx(1.0));
    CHECK(pep_bound(a, b, 1.0, 1) == doctest::Approx(0.5));
    CHECK(pep_bound(a, b, 100.0, 1, true) == doctest::Approx(0.01));
}

TEST_CASE("ber bounds")
{
    std::vector<double> snr;
    for (int d = 0; d <= 40; d += 5)
        snr.push_back(d);
    const BerBounds a = ber_bounds(builtin_system("s1"), builtin_profile("A"), snr, false);
    const BerBounds c = ber_bounds(builtin_system("s1"), builtin_profile("C"), snr, false);
    for (std::size_t i = 0; i < snr.size(); ++i) {
        CHECK(a.lower[i] <= a.upper[i]);
        CHECK(c.lower[i] <= c.upper[i]);
        CHECK(a.upper[i] > 0.0);
    }
    // indices 5 and 7 are 25 and 35 dB
    CHECK(slope(a, a.upper, 5, 7) == doctest::Approx(-1.0).epsilon(0.15));
    CHECK(slope(c, c.upper, 5, 7) == doctest::Approx(-2.0).epsilon(0.075));
    const BerBounds pr = ber_bounds(builtin_system("s1"), builtin_profile("A"), snr, true);
    CHECK(slope(pr, pr.upper, 5, 7) == doctest::Approx(-2.0).epsilon(0.075));
}

TEST_CASE("candidate bank outputs")
{
    const SystemSpec s = builtin_system("s1");
    const DDProfile p = builtin_profile("D");
    const CandidateBank bank = build_candidate_bank(s, p, false);
    REQUIRE(bank.symbols.rows() == 16);
    PulseSpec pulse;
    pulse.Ts = s.Ts;
    const std::vector<cd> h{cd(0.5, 0.1), cd(-0.2, 0.3), cd(0.0, -1.0), cd(0.7, 0.0)};
    ChannelRealization c = realize_profile(p, {});
    std::vector<cd> heff;
    for (std::size_t i = 0; i < h.size(); ++i) {
        c.paths[i].gain = h[i];
        heff.push_back(c.paths[i].effective_gain(s.grid()));
    }
    const CMatrix H = build_effective_channel(c, pulse, s.grid()).H;
    const CMatrix out = bank.outputs(heff);
    CHECK(max_abs(out - bank.symbols * H) < 1e-12);
}
