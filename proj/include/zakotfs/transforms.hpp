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

/// Inverse discrete Zak transform:
///   x[n] = K^{-1/2} sum_k Z[k, n mod L] e^{j 2 pi floor(n/L) k / K}
/// Computed as one length-K inverse FFT per delay column.
TimeSignal idzt(const DDFrame& frame);

/// Discrete Zak transform:
///   Z[k, l] = K^{-1/2} sum_{n<K} y[l + nL] e^{-j 2 pi k n / K}
/// Throws std::invalid_argument if the signal carries a CP or its length
/// differs from grid.N().
DDFrame dzt(const TimeSignal& signal, const DDGrid& grid);

/// Unitary ISFFT from the delay-Doppler grid to a K x L time-frequency grid
/// (row n = multicarrier symbol, column m = subcarrier):
///   X[n, m] = (KL)^{-1/2} sum_{k,l} Z[k, l] e^{j 2 pi (n k / K - m l / L)}
CMatrix isfft(const DDFrame& frame);

/// Inverse of isfft.
DDFrame sfft(const CMatrix& tf, const DDGrid& grid);

struct TransformTiming {
    double dzt_seconds = 0.0;  // median of (IDZT + DZT) per frame
    double sfft_seconds = 0.0; // median of (ISFFT + SFFT) per frame
};

/// Wall-clock cost of a full frame transform in each direction. K and L
/// must be powers of two.
TransformTiming transform_cost_benchmark(int K, int L, int repetitions);

} // namespace zakotfs
