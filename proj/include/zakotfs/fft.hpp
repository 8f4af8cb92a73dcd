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

/// Unnormalized in-place DFT of any length, backed by Eigen's FFT module.
///
/// forward:  X[k] = sum_n x[n] e^{-j 2 pi k n / n_}
/// inverse:  x[n] = sum_k X[k] e^{+j 2 pi k n / n_}   (no 1/n scaling)
class FftPlan {
public:
    explicit FftPlan(int n);
    int size() const { return n_; }
    void forward(cd* data) const { run(data, false); }
    void inverse(cd* data) const { run(data, true); }

private:
    void run(cd* data, bool inverse) const;
    int n_;
};

/// Shared plan for length n. Thread-safe.
const FftPlan& fft_plan(int n);

bool is_power_of_two(int n);

} // namespace zakotfs
