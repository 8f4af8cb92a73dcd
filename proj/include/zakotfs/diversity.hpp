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

#include "zakotfs/channel.hpp"
#include "zakotfs/core.hpp"
#include "zakotfs/detect.hpp"
#include "zakotfs/pulse.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace zakotfs {

using DDProfile = ChannelProfile;

/// Small system used for exhaustive pair enumeration.
struct SystemSpec {
    std::string name;
    int K = 2;
    int L = 2;
    Alphabet alphabet = Alphabet::bpsk();
    double Ts = 1.0 / 60e3;

    DDGrid grid() const { return DDGrid(K, L, Ts); }
    int N() const { return K * L; }
};

/// "s1": K = L = 2. "s2": K = 2, L = 4. Both BPSK.
SystemSpec builtin_system(const std::string& name);

/// Profiles "A" to "D" (delays and Dopplers in bins):
///   A: tau = [0, 0],  nu = [0, 1]
///   B: tau = [0, 1],  nu = [0, 1]
///   C: tau = [0, 0, 1, 1],  nu = [0, 1, 0, 1]
///   D: tau = [0.2, 1.4, 2.3, 3.6],  nu = [-0.3, 1.4, 0.8, -0.2]
DDProfile builtin_profile(const std::string& name);

struct DiversityOptions {
    PulseSpec pulse;        // Ts is overwritten with the system Ts
    double pr_slope = 1.0;  // phase-rotation slope (radians per q/N)
    double rank_floor = 1e-9;
};

/// Unit-gain per-path factors F_i = E_i G_i, so that x H = sum_i h'_i x F_i.
std::vector<CMatrix> path_factors(const DDProfile& profile, const PulseSpec& pulse,
                                  const DDGrid& grid);

/// P x N matrix whose row i is x F_i; y = h X reproduces x H for the
/// effective gains h.
CMatrix build_symbol_matrix(const CVector& x, const std::vector<CMatrix>& factors);
CMatrix build_symbol_matrix(const CVector& x, const DDProfile& profile, const PulseSpec& pulse,
                            const DDGrid& grid);

/// Singular values below max(max(P, N) eps sigma_max, floor) count as zero.
int numerical_rank(const Eigen::VectorXd& singular_values, int rows, int cols, double floor);

/// Per-pair spectra for every ordered pair (i, j), i != j, of candidate
/// vectors (enumerated as in candidate_vector).
struct PairAnalysis {
    int P = 0;
    int N = 0;
    std::int64_t Q = 0;
    int bits_per_symbol = 1;
    std::vector<double> sigma;      // P singular values per pair, descending
    std::vector<int> hamming;       // bit distance per pair
    std::vector<int> rank;          // numerical rank per pair at the default floor
    std::int64_t pairs() const { return static_cast<std::int64_t>(hamming.size()); }
};

PairAnalysis analyze_pairs(const SystemSpec& system, const DDProfile& profile, bool with_pr,
                           const DiversityOptions& opts = {});

struct RankHistogram {
    std::vector<std::int64_t> counts; // counts[r], r = 0..P
    int min_rank = 0;
    std::vector<double> sweep_floors;
    std::vector<std::vector<std::int64_t>> sweep_counts;
    bool tolerance_stable = true; // every floor in the sweep gives the same counts
};

RankHistogram rank_histogram(const PairAnalysis& pa, double floor = 1e-9);

/// Throws std::invalid_argument if |A|^(KL) > 2^10.
RankHistogram rank_profile(const SystemSpec& system, const DDProfile& profile, bool with_pr,
                           const DiversityOptions& opts = {});

/// Chernoff bound on the pairwise error probability:
///   prod_l 1 / (1 + rho lambda_l / (4P))
/// over the nonzero eigenvalues of (Xi - Xj)(Xi - Xj)^H. With high_snr the
/// factors are replaced by 4P / (rho lambda_l).
double pep_bound(const CMatrix& Xi, const CMatrix& Xj, double rho, int P, bool high_snr = false);
double pep_from_sigma(const double* sigma, int r, double rho, int P, bool high_snr = false);

struct BerBounds {
    std::vector<double> snr_db;
    std::vector<double> upper;
    std::vector<double> lower;
};

/// upper = 1/(Q N log2|A|) sum_{i != j} d_H(i, j) PEP(i, j); lower is the same
/// sum over minimum-rank pairs only.
BerBounds ber_bounds(const PairAnalysis& pa, const std::vector<double>& snr_db, bool high_snr = false);
BerBounds ber_bounds(const SystemSpec& system, const DDProfile& profile,
                     const std::vector<double>& snr_db, bool with_pr,
                     const DiversityOptions& opts = {});

/// Candidate outputs for ML over a fixed-geometry channel with random gains:
/// for gains h the noiseless output of candidate c is sum_i h_i R_i.row(c).
struct CandidateBank {
    CMatrix symbols;           // Q x N data vectors, before any rotation
    std::vector<CMatrix> R;    // per path, Q x N
    CMatrix outputs(const std::vector<cd>& h) const;
};

CandidateBank build_candidate_bank(const SystemSpec& system, const DDProfile& profile, bool with_pr,
                                   const DiversityOptions& opts = {});

} // namespace zakotfs
