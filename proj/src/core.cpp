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

#include "zakotfs/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace zakotfs {

DDGrid::DDGrid(int K, int L, double Ts) : K_(K), L_(L), Ts_(Ts)
{
    if (K < 1 || L < 1)
        throw std::invalid_argument("DDGrid: K and L must be positive");
    if (!(Ts > 0.0) || !std::isfinite(Ts))
        throw std::invalid_argument("DDGrid: Ts must be positive");
}

DDFrame::DDFrame(const DDGrid& g) : grid(g), values(CMatrix::Zero(g.K(), g.L())) {}

DDFrame::DDFrame(const DDGrid& g, CMatrix v) : grid(g), values(std::move(v))
{
    if (values.rows() != g.K() || values.cols() != g.L())
        throw std::invalid_argument("DDFrame: value dimensions do not match grid");
}

TimeSignal add_cyclic_prefix(const TimeSignal& x, int cp_len)
{
    if (x.cp_len != 0)
        throw std::invalid_argument("add_cyclic_prefix: signal already carries a prefix");
    if (cp_len < 0 || cp_len > x.size())
        throw std::invalid_argument("add_cyclic_prefix: bad prefix length");
    TimeSignal out;
    out.cp_len = cp_len;
    out.samples.resize(x.size() + cp_len);
    out.samples.head(cp_len) = x.samples.tail(cp_len);
    out.samples.tail(x.size()) = x.samples;
    return out;
}

TimeSignal remove_cyclic_prefix(const TimeSignal& x)
{
    return TimeSignal{x.body(), 0};
}

cd ChannelPath::effective_gain(const DDGrid& g) const
{
    // tau * nu = (l Ts) * (k / (N Ts)) = l k / N
    const double phase = 2.0 * kPi * delay_bins() * doppler_bins() / g.N();
    return gain * std::polar(1.0, phase);
}

ChannelPath ChannelPath::from_bins(cd gain, double delay_bins, double doppler_bins)
{
    ChannelPath p;
    p.gain = gain;
    p.delay_int = static_cast<int>(std::lround(delay_bins));
    p.delay_frac = delay_bins - p.delay_int;
    p.doppler_int = static_cast<int>(std::lround(doppler_bins));
    p.doppler_frac = doppler_bins - p.doppler_int;
    return p;
}

void ChannelRealization::validate() const
{
    if (paths.empty())
        throw std::invalid_argument("ChannelRealization: at least one path is required");
    for (const auto& p : paths) {
        if (std::abs(p.delay_frac) > 0.5 + 1e-12 || std::abs(p.doppler_frac) > 0.5 + 1e-12)
            throw std::invalid_argument("ChannelRealization: fractional part outside [-0.5, 0.5]");
        if (p.delay_bins() < -1e-12)
            throw std::invalid_argument("ChannelRealization: negative path delay");
    }
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts)
{
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (auto p : parts)
        h = splitmix64(h ^ splitmix64(p));
    return h;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id),
      engine_(splitmix64(splitmix64(master_seed) ^ (stream_id + 0x632be59bd9b4e019ULL)))
{
}

double RngStream::uniform(double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

int RngStream::uniform_int(int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

double RngStream::normal()
{
    return normal_(engine_);
}

cd RngStream::complex_gaussian(double variance)
{
    const double s = std::sqrt(variance / 2.0);
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
}

int RngStream::bit()
{
    return static_cast<int>(engine_() >> 63);
}

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id)
{
    return RngStream(master_seed, stream_id);
}

CVector flatten(const DDFrame& frame)
{
    return Eigen::Map<const CVector>(frame.values.data(), frame.grid.N());
}

DDFrame unflatten(const CVector& v, const DDGrid& grid)
{
    if (v.size() != grid.N())
        throw std::invalid_argument("unflatten: vector length " + std::to_string(v.size()) +
                                    " does not match grid size " + std::to_string(grid.N()));
    return DDFrame(grid, Eigen::Map<const CMatrix>(v.data(), grid.K(), grid.L()));
}

} // namespace zakotfs
