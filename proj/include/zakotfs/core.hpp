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

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace zakotfs {

using cd = std::complex<double>;

// All public contracts use row vectors: y = x * H.
using CVector = Eigen::RowVectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::RowVectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Delay-Doppler grid: K Doppler bins by L delay bins, sample period Ts = 1/B.
class DDGrid {
public:
    DDGrid(int K, int L, double Ts);

    int K() const { return K_; }
    int L() const { return L_; }
    int N() const { return K_ * L_; }
    double Ts() const { return Ts_; }
    double bandwidth() const { return 1.0 / Ts_; }
    double delay_resolution() const { return Ts_; }
    double doppler_resolution() const { return 1.0 / (static_cast<double>(N()) * Ts_); }

    bool operator==(const DDGrid&) const = default;

private:
    int K_;
    int L_;
    double Ts_;
};

/// K x L grid of delay-Doppler symbols; values(k, l) = Z[k, l].
///
/// Storage is column-major, so the flat index of (k, l) is k + K*l, which
/// is also the vectorization used for x_DD / y_DD everywhere.
struct DDFrame {
    DDGrid grid;
    CMatrix values;

    explicit DDFrame(const DDGrid& g);
    DDFrame(const DDGrid& g, CMatrix v);

    cd& operator()(int k, int l) { return values(k, l); }
    const cd& operator()(int k, int l) const { return values(k, l); }
};

struct TimeSignal {
    CVector samples;
    int cp_len = 0;

    int size() const { return static_cast<int>(samples.size()); }
    /// Samples with the cyclic prefix stripped.
    CVector body() const { return samples.tail(samples.size() - cp_len); }
};

/// Prepends the last cp_len samples of a CP-free signal.
TimeSignal add_cyclic_prefix(const TimeSignal& x, int cp_len);
TimeSignal remove_cyclic_prefix(const TimeSignal& x);

struct ChannelPath {
    cd gain{1.0, 0.0};
    int delay_int = 0;         // alpha_i
    double delay_frac = 0.0;   // a_i in [-0.5, 0.5]
    int doppler_int = 0;       // beta_i
    double doppler_frac = 0.0; // b_i in [-0.5, 0.5]

    double delay_bins() const { return delay_int + delay_frac; }
    double doppler_bins() const { return doppler_int + doppler_frac; }
    double delay_seconds(const DDGrid& g) const { return delay_bins() * g.delay_resolution(); }
    double doppler_hz(const DDGrid& g) const { return doppler_bins() * g.doppler_resolution(); }
    /// h'_i = h_i * exp(j 2 pi tau_i nu_i).
    cd effective_gain(const DDGrid& g) const;

    /// Splits real-valued bin positions into integer + fractional parts
    /// using round-to-nearest.
    static ChannelPath from_bins(cd gain, double delay_bins, double doppler_bins);
};

struct ChannelRealization {
    std::vector<ChannelPath> paths;

    int P() const { return static_cast<int>(paths.size()); }
    /// Throws std::invalid_argument on an empty list or out-of-range fractions.
    void validate() const;
};

/// Deterministic random stream keyed by (master_seed, stream_id).
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    double uniform(double lo, double hi);
    int uniform_int(int lo, int hi); // inclusive
    double normal();
    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    cd complex_gaussian(double variance);
    int bit();
    std::uint64_t next_u64() { return engine_(); }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id);

/// Combines structured coordinates (point index, trial index, purpose...)
/// into a single stream id.
std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts);

std::uint64_t splitmix64(std::uint64_t x);

CVector flatten(const DDFrame& frame);
DDFrame unflatten(const CVector& v, const DDGrid& grid);

} // namespace zakotfs
