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


#include "zakotfs/fft.hpp"

#include <unsupported/Eigen/FFT>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace zakotfs {

bool is_power_of_two(int n)
{
    return n > 0 && (n & (n - 1)) == 0;
}

FftPlan::FftPlan(int n) : n_(n)
{
    if (n < 1)
        throw std::invalid_argument("FftPlan: length must be positive");
}

void FftPlan::run(cd* data, bool inverse) const
{
    if (n_ == 1)
        return;
    // Eigen::FFT caches twiddles per length and is not safe to share
    // between threads; its kernels also need distinct source and target.
    thread_local Eigen::FFT<double> fft = [] {
        Eigen::FFT<double> f;
        f.SetFlag(Eigen::FFT<double>::Unscaled);
        return f;
    }();
    thread_local std::vector<cd> src;
    src.assign(data, data + n_);
    if (inverse)
        fft.inv(data, src.data(), n_);
    else
        fft.fwd(data, src.data(), n_);
}

const FftPlan& fft_plan(int n)
{
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<FftPlan>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_unique<FftPlan>(n);
    return *slot;
}

} // namespace zakotfs
