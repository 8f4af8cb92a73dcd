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

#include "zakotfs/channel.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zakotfs {

void ChannelStats::validate() const
{
    if (P < 1)
        throw std::invalid_argument("channel: P must be >= 1");
    if (!(tau_max >= 0.0))
        throw std::invalid_argument("channel: tau_max must be >= 0");
    if (!(nu_max >= 0.0))
        throw std::invalid_argument("channel: nu_max must be >= 0");
    if (!(gain_variance > 0.0))
        throw std::invalid_argument("channel: gain_variance must be > 0");
}

int max_delay_bins(const ChannelStats& stats, const DDGrid& grid)
{
    return static_cast<int>(std::lround(stats.tau_max / grid.Ts()));
}

bool doppler_aliases(const ChannelStats& stats, const DDGrid& grid)
{
    const double kmax = stats.nu_max / grid.doppler_resolution();
    return kmax > 0.5 * grid.K();
}

ChannelRealization generate_channel(const ChannelStats& stats, const DDGrid& grid, RngStream& rng)
{
    stats.validate();
    const int alpha_max = max_delay_bins(stats, grid);
    if (alpha_max >= grid.L())
        throw std::invalid_argument("channel: maximum delay exceeds the delay span of the frame");
    const double bins_per_hz = 1.0 / grid.doppler_resolution();

    ChannelRealization out;
    out.paths.reserve(stats.P);
    for (int i = 0; i < stats.P; ++i) {
        ChannelPath p;
        p.delay_int = rng.uniform_int(0, alpha_max);
        double a = stats.fractional ? rng.uniform(-0.5, 0.5) : 0.0;
        // keep the physical delay nonnegative
        if (p.delay_int == 0)
            a = std::abs(a);
        p.delay_frac = a;
        const double theta = rng.uniform(-kPi, kPi);
        double k = stats.nu_max * std::cos(theta) * bins_per_hz;
        if (!stats.fractional)
            k = std::round(k);
        p.doppler_int = static_cast<int>(std::lround(k));
        p.doppler_frac = k - p.doppler_int;
        p.gain = rng.complex_gaussian(stats.gain_variance);
        out.paths.push_back(p);
    }
    return out;
}

namespace {

struct SparsePulse {
    std::vector<int> offset;
    std::vector<double> value;
};

SparsePulse sparse_pulse(const ChannelPath& p, const PulseSpec& spec, int N)
{
    const CVector g = sample_delay_sequence(p.delay_bins(), N, spec);
    SparsePulse s;
    for (int n = 0; n < N; ++n) {
        if (g[n] != 0.0) {
            s.offset.push_back(n);
            s.value.push_back(g[n].real());
        }
    }
    return s;
}

} // namespace

TimeChannel::TimeChannel(const ChannelRealization& chan, const PulseSpec& spec, const DDGrid& grid)
    : N_(grid.N())
{
    for (const ChannelPath& p : chan.paths) {
        Path tp;
        tp.he = p.effective_gain(grid) * doppler_sequence(p.doppler_bins(), N_);
        const SparsePulse g = sparse_pulse(p, spec, N_);
        tp.offset = g.offset;
        tp.value = g.value;
        paths_.push_back(std::move(tp));
    }
}

CVector TimeChannel::apply(const CVector& x) const
{
    if (x.size() != N_)
        throw std::invalid_argument("TimeChannel: signal length does not match grid");
    CVector y = CVector::Zero(N_);
    CVector xe(N_);
    for (const Path& p : paths_) {
        xe = x.cwiseProduct(p.he);
        for (std::size_t t = 0; t < p.offset.size(); ++t) {
            const int d = p.offset[t];
            const double v = p.value[t];
            // y[m] += v xe[(m - d) mod N]
            y.tail(N_ - d) += v * xe.head(N_ - d);
            if (d > 0)
                y.head(d) += v * xe.tail(d);
        }
    }
    return y;
}

TimeSignal apply_channel_time(const TimeSignal& x, const ChannelRealization& chan,
                              const PulseSpec& spec, const DDGrid& grid)
{
    if (x.cp_len != 0)
        throw std::invalid_argument("apply_channel_time: input must not carry a CP");
    if (x.size() != grid.N())
        throw std::invalid_argument("apply_channel_time: signal length does not match grid");
    TimeSignal y;
    y.samples = TimeChannel(chan, spec, grid).apply(x.samples);
    return y;
}

TimeSignal add_noise(const TimeSignal& y, double N0, RngStream& rng)
{
    if (!(N0 >= 0.0))
        throw std::invalid_argument("add_noise: N0 must be >= 0");
    TimeSignal out = y;
    if (N0 == 0.0)
        return out;
    for (Eigen::Index n = 0; n < out.samples.size(); ++n)
        out.samples[n] += rng.complex_gaussian(N0);
    return out;
}

CMatrix build_time_operator(const ChannelRealization& chan, const PulseSpec& spec,
                            const DDGrid& grid)
{
    const int N = grid.N();
    CMatrix G = CMatrix::Zero(N, N);
    for (const ChannelPath& p : chan.paths) {
        const cd h = p.effective_gain(grid);
        const CVector e = doppler_sequence(p.doppler_bins(), N);
        const SparsePulse g = sparse_pulse(p, spec, N);
        for (int n = 0; n < N; ++n) {
            const cd he = h * e[n];
            for (std::size_t t = 0; t < g.offset.size(); ++t)
                G(n, (n + g.offset[t]) % N) += he * g.value[t];
        }
    }
    return G;
}

ChannelProfile parse_profile(const std::string& text)
{
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("profile: ") + e.what());
    }
    if (!j.is_object())
        throw std::runtime_error("profile: top level must be an object");
    ChannelProfile out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() != "name" && it.key() != "paths")
            throw std::runtime_error("profile." + it.key() + ": unknown key");
    }
    if (j.contains("name")) {
        if (!j["name"].is_string())
            throw std::runtime_error("profile.name: expected a string");
        out.name = j["name"].get<std::string>();
    }
    if (!j.contains("paths") || !j["paths"].is_array() || j["paths"].empty())
        throw std::runtime_error("profile.paths: expected a nonempty array");
    const json& arr = j["paths"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = "profile.paths[" + std::to_string(i) + "]";
        const json& pj = arr[i];
        if (!pj.is_object())
            throw std::runtime_error(where + ": expected an object");
        ProfilePath p;
        for (auto it = pj.begin(); it != pj.end(); ++it) {
            const std::string& key = it.key();
            if (key == "delay" || key == "doppler") {
                if (!it->is_number())
                    throw std::runtime_error(where + "." + key + ": expected a number");
                (key == "delay" ? p.delay_bins : p.doppler_bins) = it->get<double>();
            } else if (key == "gain") {
                if (it->is_number()) {
                    p.gain = cd(it->get<double>(), 0.0);
                } else if (it->is_array() && it->size() == 2 && (*it)[0].is_number() &&
                           (*it)[1].is_number()) {
                    p.gain = cd((*it)[0].get<double>(), (*it)[1].get<double>());
                } else {
                    throw std::runtime_error(where + ".gain: expected a number or [re, im]");
                }
            } else {
                throw std::runtime_error(where + "." + key + ": unknown key");
            }
        }
        if (!pj.contains("delay") || !pj.contains("doppler"))
            throw std::runtime_error(where + ": delay and doppler are required");
        if (p.delay_bins < 0.0)
            throw std::runtime_error(where + ".delay: must be >= 0");
        out.paths.push_back(p);
    }
    return out;
}

ChannelProfile load_profile(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("profile: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_profile(ss.str());
}

ChannelRealization realize_profile(const ChannelProfile& profile, const std::vector<cd>& gains)
{
    if (!gains.empty() && static_cast<int>(gains.size()) != profile.P())
        throw std::invalid_argument("realize_profile: gain count does not match path count");
    ChannelRealization out;
    for (int i = 0; i < profile.P(); ++i) {
        const ProfilePath& pp = profile.paths[i];
        cd g = pp.gain ? *pp.gain : (gains.empty() ? cd(1.0, 0.0) : gains[i]);
        out.paths.push_back(ChannelPath::from_bins(g, pp.delay_bins, pp.doppler_bins));
    }
    return out;
}

} // namespace zakotfs
