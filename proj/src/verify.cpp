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

#include "zakotfs/verify.hpp"

#include "zakotfs/baselines.hpp"
#include "zakotfs/channel.hpp"
#include "zakotfs/ddmatrix.hpp"
#include "zakotfs/montecarlo.hpp"
#include "zakotfs/transforms.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

namespace zakotfs {

namespace {

std::string fmt(const char* f, double v)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

DDFrame random_frame(const DDGrid& g, RngStream& rng)
{
    DDFrame f(g);
    for (int l = 0; l < g.L(); ++l)
        for (int k = 0; k < g.K(); ++k)
            f(k, l) = rng.complex_gaussian(1.0);
    return f;
}

ChannelRealization random_channel(const DDGrid& g, RngStream& rng, bool fractional)
{
    ChannelStats st;
    st.P = 3;
    st.tau_max = (g.L() - 1) * g.Ts();
    st.nu_max = 0.5 * g.K() * g.doppler_resolution();
    st.gain_variance = 1.0 / 3;
    st.fractional = fractional;
    return generate_channel(st, g, rng);
}

// Dense matrix of a linear map on row vectors, one basis row at a time.
CMatrix matrix_of(int n, const std::function<CVector(const CVector&)>& f)
{
    CMatrix M(n, n);
    for (int q = 0; q < n; ++q) {
        CVector e = CVector::Zero(n);
        e[q] = 1.0;
        M.row(q) = f(e);
    }
    return M;
}

} // namespace

std::vector<VerifyResult> run_verify_suite(std::uint64_t seed)
{
    std::vector<VerifyResult> out;
    RngStream rng(seed, 0);

    {
        double err = 0.0, iso = 0.0;
        for (auto [K, L] : {std::pair{64, 64}, std::pair{16, 16}, std::pair{3, 5}, std::pair{7, 4}}) {
            const DDGrid g(K, L, 1.0);
            const DDFrame Z = random_frame(g, rng);
            const TimeSignal x = idzt(Z);
            err = std::max(err, (dzt(x, g).values - Z.values).cwiseAbs().maxCoeff());
            TimeSignal y;
            y.samples = flatten(random_frame(g, rng));
            err = std::max(err, (idzt(dzt(y, g)).samples - y.samples).cwiseAbs().maxCoeff());
            iso = std::max(iso, std::abs(x.samples.norm() - Z.values.norm()));
        }
        out.push_back({"dzt_round_trip", err < 1e-12, fmt("max abs error %.3e", err)});
        out.push_back({"idzt_isometry", iso < 1e-12, fmt("norm difference %.3e", iso)});
    }

    {
        double err = 0.0;
        for (int K : {4, 8, 16}) {
            const DDGrid g(K, 2 * K, 1.0);
            const DDFrame Z = random_frame(g, rng);
            err = std::max(err, (sfft(isfft(Z), g).values - Z.values).cwiseAbs().maxCoeff());
            err = std::max(err, std::abs(isfft(Z).norm() - Z.values.norm()));
        }
        out.push_back({"sfft_round_trip", err < 1e-12, fmt("max abs error %.3e", err)});
    }

    {
        double err = 0.0;
        for (int K : {2, 4, 8}) {
            for (double gamma : {0.0, 0.5}) {
                for (bool frac : {false, true}) {
                    const DDGrid g(K, K, 1.0);
                    PulseSpec pulse;
                    pulse.rolloff = gamma;
                    const ChannelRealization chan = random_channel(g, rng, frac);
                    const CMatrix H = build_effective_channel(chan, pulse, g).H;
                    const CMatrix Ho = matrix_of(g.N(), [&](const CVector& x) {
                        return flatten(dzt(apply_channel_time(idzt(unflatten(x, g)), chan, pulse, g), g));
                    });
                    err = std::max(err, (H - Ho).cwiseAbs().maxCoeff());
                }
            }
        }
        out.push_back({"effective_channel_oracle", err < 1e-9, fmt("max abs error %.3e", err)});
    }

    {
        double err = 0.0;
        const DDGrid g(4, 4, 1.0);
        PulseSpec pulse;
        pulse.rolloff = 0.3;
        const ChannelRealization chan = random_channel(g, rng, true);
        for (const ChannelPath& p : chan.paths) {
            const CMatrix EG = build_doppler_factor(doppler_sequence(p.doppler_bins(), g.N()), g) *
                               build_delay_factor(sample_delay_sequence(p.delay_bins(), g.N(), pulse), g);
            err = std::max(err, (EG - build_path_matrix(p, pulse, g)).cwiseAbs().maxCoeff());
        }
        out.push_back({"factor_product", err < 1e-10, fmt("max abs error %.3e", err)});
    }

    {
        const DDGrid g(4, 8, 1.0);
        const ChannelRealization chan = random_channel(g, rng, true);
        const PulseSpec rect = rectangular_pulse(g.Ts());
        const CMatrix M2 = matrix_of(g.N(), [&](const CVector& x) {
            return two_step_modulate(unflatten(x, g)).samples;
        });
        const CMatrix H2 = M2 * build_time_operator(chan, rect, g) * M2.adjoint();
        const double err = (H2 - two_step_effective_channel(chan, g)).cwiseAbs().maxCoeff();
        out.push_back({"two_step_oracle", err < 1e-10, fmt("max abs error %.3e", err)});
    }

    {
        const DDGrid g(4, 8, 1.0);
        const ChannelRealization chan = random_channel(g, rng, true);
        const PulseSpec rect = rectangular_pulse(g.Ts());
        const int cp = ofdm_cp_length((g.L() - 1) * g.Ts(), g);
        const OfdmChannel oc = ofdm_effective_channel(chan, rect, g, cp);
        double err = 0.0;
        for (int trial = 0; trial < 4; ++trial) {
            const CVector x = flatten(random_frame(g, rng));
            const CVector y = ofdm_demodulate(ofdm_channel(ofdm_modulate(x, g, cp).samples, chan, rect, g), g, cp);
            for (int s = 0; s < g.K(); ++s) {
                const CVector ys = x.segment(s * g.L(), g.L()) * oc.Hf[s];
                err = std::max(err, (ys - y.segment(s * g.L(), g.L())).cwiseAbs().maxCoeff());
            }
        }
        out.push_back({"ofdm_oracle", err < 1e-10, fmt("max abs error %.3e", err)});
    }

    {
        const double N0 = 0.7;
        const int n = 200000;
        TimeSignal z;
        z.samples = CVector::Zero(n);
        RngStream nr(seed, 99);
        const TimeSignal w = add_noise(z, N0, nr);
        double re = 0.0, im = 0.0, cross = 0.0;
        for (int i = 0; i < n; ++i) {
            re += w.samples[i].real() * w.samples[i].real();
            im += w.samples[i].imag() * w.samples[i].imag();
            cross += w.samples[i].real() * w.samples[i].imag();
        }
        re /= n;
        im /= n;
        cross /= n;
        const double var = re + im;
        const bool ok = std::abs(var / N0 - 1.0) < 0.02 && std::abs(re / (N0 / 2) - 1.0) < 0.03 &&
                        std::abs(im / (N0 / 2) - 1.0) < 0.03 && std::abs(cross) < 0.01;
        out.push_back({"noise_statistics", ok, fmt("empirical variance / N0 = %.4f", var / N0)});
    }

    {
        RngStream a(seed, 5), b(seed, 5), c(seed, 6);
        bool same = true, differ = false;
        for (int i = 0; i < 64; ++i) {
            const auto va = a.next_u64();
            same = same && va == b.next_u64();
            differ = differ || va != c.next_u64();
        }
        SweepSpec spec;
        spec.fixed.K = 4;
        spec.fixed.L = 4;
        spec.fixed.tau_max_s = 2.0 / spec.fixed.bandwidth_hz;
        spec.fixed.master_seed = seed;
        spec.fixed.batch_size = 3;
        spec.values = {0.0, 6.0};
        spec.schemes = {SchemeId::DztOtfs, SchemeId::TwoStepOtfs, SchemeId::Ofdm};
        spec.min_errors = 20;
        spec.max_trials = 40;
        const auto r1 = run_sweep(spec, 1);
        const auto r3 = run_sweep(spec, 3);
        bool sweep_same = true;
        for (std::size_t s = 0; s < r1.size(); ++s)
            for (std::size_t p = 0; p < r1[s].points.size(); ++p)
                sweep_same = sweep_same && r1[s].points[p].bit_errors == r3[s].points[p].bit_errors &&
                             r1[s].points[p].trials == r3[s].points[p].trials;
        out.push_back({"rng_determinism", same && differ && sweep_same,
                       sweep_same ? "streams and sweep counts reproducible" : "sweep counts depend on workers"});
    }

    return out;
}

} // namespace zakotfs
