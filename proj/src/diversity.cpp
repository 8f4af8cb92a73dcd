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

#include "zakotfs/diversity.hpp"

#include "zakotfs/ddmatrix.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace zakotfs {

SystemSpec builtin_system(const std::string& name)
{
    SystemSpec s;
    s.name = name;
    if (name == "s1") {
        s.K = 2;
        s.L = 2;
    } else if (name == "s2") {
        s.K = 2;
        s.L = 4;
    } else {
        throw std::invalid_argument("unknown system: " + name + " (expected s1 or s2)");
    }
    return s;
}

DDProfile builtin_profile(const std::string& name)
{
    auto make = [&](std::vector<double> tau, std::vector<double> nu) {
        DDProfile p;
        p.name = name;
        for (std::size_t i = 0; i < tau.size(); ++i)
            p.paths.push_back({tau[i], nu[i], std::nullopt});
        return p;
    };
    if (name == "A")
        return make({0, 0}, {0, 1});
    if (name == "B")
        return make({0, 1}, {0, 1});
    if (name == "C")
        return make({0, 0, 1, 1}, {0, 1, 0, 1});
    if (name == "D")
        return make({0.2, 1.4, 2.3, 3.6}, {-0.3, 1.4, 0.8, -0.2});
    throw std::invalid_argument("unknown profile: " + name + " (expected A, B, C or D)");
}

std::vector<CMatrix> path_factors(const DDProfile& profile, const PulseSpec& pulse,
                                  const DDGrid& grid)
{
    const ChannelRealization chan = realize_profile(profile);
    std::vector<CMatrix> out;
    out.reserve(chan.paths.size());
    for (const ChannelPath& p : chan.paths)
        out.push_back(build_path_matrix(p, pulse, grid));
    return out;
}

CMatrix build_symbol_matrix(const CVector& x, const std::vector<CMatrix>& factors)
{
    const Eigen::Index N = x.size();
    CMatrix X(static_cast<Eigen::Index>(factors.size()), N);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].rows() != N)
            throw std::invalid_argument("build_symbol_matrix: shape mismatch");
        X.row(static_cast<Eigen::Index>(i)) = x * factors[i];
    }
    return X;
}

CMatrix build_symbol_matrix(const CVector& x, const DDProfile& profile, const PulseSpec& pulse,
                            const DDGrid& grid)
{
    return build_symbol_matrix(x, path_factors(profile, pulse, grid));
}

int numerical_rank(const Eigen::VectorXd& s, int rows, int cols, double floor)
{
    if (s.size() == 0)
        return 0;
    const double smax = s.maxCoeff();
    const double tol = std::max(std::max(rows, cols) * std::numeric_limits<double>::epsilon() * smax, floor);
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > tol)
            ++r;
    return r;
}

namespace {

PulseSpec system_pulse(const SystemSpec& system, const DiversityOptions& opts)
{
    PulseSpec p = opts.pulse;
    p.Ts = system.Ts;
    return p;
}

void check_enumerable(const SystemSpec& system)
{
    if (system.N() * system.alphabet.bits_per_symbol > 10)
        throw std::invalid_argument("exhaustive pair enumeration needs |A|^(KL) <= 2^10");
}

CMatrix transmit_matrix(const CMatrix& data, bool with_pr, double slope)
{
    if (!with_pr)
        return data;
    CMatrix out(data.rows(), data.cols());
    for (Eigen::Index c = 0; c < data.rows(); ++c)
        out.row(c) = phase_rotate(data.row(c), slope);
    return out;
}

} // namespace

PairAnalysis analyze_pairs(const SystemSpec& system, const DDProfile& profile, bool with_pr,
                           const DiversityOptions& opts)
{
    check_enumerable(system);
    const DDGrid grid = system.grid();
    const std::vector<CMatrix> F = path_factors(profile, system_pulse(system, opts), grid);
    const int P = static_cast<int>(F.size());
    const int N = system.N();
    const int bps = system.alphabet.bits_per_symbol;

    const CMatrix data = candidate_matrix(N, system.alphabet);
    const CMatrix tx = transmit_matrix(data, with_pr, opts.pr_slope);
    const std::int64_t Q = data.rows();

    // rows of Y_p are the per-path outputs of every candidate
    std::vector<CMatrix> Y;
    for (const CMatrix& f : F)
        Y.push_back(tx * f);

    PairAnalysis pa;
    pa.P = P;
    pa.N = N;
    pa.Q = Q;
    pa.bits_per_symbol = bps;
    const std::int64_t pairs = Q * (Q - 1);
    pa.sigma.resize(static_cast<std::size_t>(pairs * P));
    pa.hamming.resize(static_cast<std::size_t>(pairs));
    pa.rank.resize(static_cast<std::size_t>(pairs));

    CMatrix D(P, N);
    std::int64_t idx = 0;
    for (std::int64_t i = 0; i < Q; ++i) {
        for (std::int64_t j = 0; j < Q; ++j) {
            if (i == j)
                continue;
            for (int p = 0; p < P; ++p)
                D.row(p) = Y[p].row(i) - Y[p].row(j);
            Eigen::JacobiSVD<CMatrix> svd(D);
            const Eigen::VectorXd s = svd.singularValues();
            for (int p = 0; p < P; ++p)
                pa.sigma[idx * P + p] = p < s.size() ? s[p] : 0.0;
            pa.rank[idx] = numerical_rank(s, P, N, opts.rank_floor);
            pa.hamming[idx] = std::popcount(static_cast<std::uint64_t>(i ^ j));
            ++idx;
        }
    }
    return pa;
}

RankHistogram rank_histogram(const PairAnalysis& pa, double floor)
{
    auto histogram = [&](double fl) {
        std::vector<std::int64_t> counts(pa.P + 1, 0);
        Eigen::VectorXd s(pa.P);
        for (std::int64_t k = 0; k < pa.pairs(); ++k) {
            for (int p = 0; p < pa.P; ++p)
                s[p] = pa.sigma[k * pa.P + p];
            ++counts[numerical_rank(s, pa.P, pa.N, fl)];
        }
        return counts;
    };
    RankHistogram h;
    h.counts = histogram(floor);
    h.min_rank = pa.P;
    for (int r = 0; r <= pa.P; ++r) {
        if (h.counts[r] > 0) {
            h.min_rank = r;
            break;
        }
    }
    for (double fl : {1e-7, 1e-8, 1e-9, 1e-10, 1e-11}) {
        h.sweep_floors.push_back(fl);
        h.sweep_counts.push_back(histogram(fl));
        if (h.sweep_counts.back() != h.counts)
            h.tolerance_stable = false;
    }
    return h;
}

RankHistogram rank_profile(const SystemSpec& system, const DDProfile& profile, bool with_pr,
                           const DiversityOptions& opts)
{
    return rank_histogram(analyze_pairs(system, profile, with_pr, opts), opts.rank_floor);
}

double pep_from_sigma(const double* sigma, int r, double rho, int P, bool high_snr)
{
    double v = 1.0;
    for (int l = 0; l < r; ++l) {
        const double q = rho * sigma[l] * sigma[l] / (4.0 * P);
        v /= high_snr ? q : 1.0 + q;
    }
    return v;
}

double pep_bound(const CMatrix& Xi, const CMatrix& Xj, double rho, int P, bool high_snr)
{
    if (Xi.rows() != Xj.rows() || Xi.cols() != Xj.cols())
        throw std::invalid_argument("pep_bound: shape mismatch");
    const CMatrix D = Xi - Xj;
    Eigen::JacobiSVD<CMatrix> svd(D);
    const Eigen::VectorXd s = svd.singularValues();
    const int r = numerical_rank(s, static_cast<int>(D.rows()), static_cast<int>(D.cols()), 1e-9);
    return pep_from_sigma(s.data(), r, rho, P, high_snr);
}

BerBounds ber_bounds(const PairAnalysis& pa, const std::vector<double>& snr_db, bool high_snr)
{
    int min_rank = pa.P;
    for (int r : pa.rank)
        min_rank = std::min(min_rank, r);
    const double norm = 1.0 / (static_cast<double>(pa.Q) * pa.N * pa.bits_per_symbol);
    BerBounds out;
    out.snr_db = snr_db;
    for (double db : snr_db) {
        const double rho = std::pow(10.0, db / 10.0);
        double up = 0.0, lo = 0.0;
        for (std::int64_t k = 0; k < pa.pairs(); ++k) {
            const int r = pa.rank[k];
            const double t = pa.hamming[k] * pep_from_sigma(&pa.sigma[k * pa.P], r, rho, pa.P, high_snr);
            up += t;
            if (r == min_rank)
                lo += t;
        }
        out.upper.push_back(up * norm);
        out.lower.push_back(lo * norm);
    }
    return out;
}

BerBounds ber_bounds(const SystemSpec& system, const DDProfile& profile,
                     const std::vector<double>& snr_db, bool with_pr, const DiversityOptions& opts)
{
    return ber_bounds(analyze_pairs(system, profile, with_pr, opts), snr_db);
}

CMatrix CandidateBank::outputs(const std::vector<cd>& h) const
{
    if (h.size() != R.size())
        throw std::invalid_argument("CandidateBank: gain count does not match path count");
    CMatrix out = CMatrix::Zero(symbols.rows(), symbols.cols());
    for (std::size_t i = 0; i < R.size(); ++i)
        out += h[i] * R[i];
    return out;
}

CandidateBank build_candidate_bank(const SystemSpec& system, const DDProfile& profile, bool with_pr,
                                   const DiversityOptions& opts)
{
    const DDGrid grid = system.grid();
    const std::vector<CMatrix> F = path_factors(profile, system_pulse(system, opts), grid);
    CandidateBank bank;
    bank.symbols = candidate_matrix(system.N(), system.alphabet);
    const CMatrix tx = transmit_matrix(bank.symbols, with_pr, opts.pr_slope);
    for (const CMatrix& f : F)
        bank.R.push_back(tx * f);
    return bank;
}

} // namespace zakotfs
