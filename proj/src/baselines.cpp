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

#include "zakotfs/baselines.hpp"

#include "zakotfs/ddmatrix.hpp"
#include "zakotfs/fft.hpp"
#include "zakotfs/transforms.hpp"

#include <cmath>
#include <stdexcept>

namespace zakotfs {

std::string scheme_name(SchemeId s)
{
    switch (s) {
    case SchemeId::DztOtfs:
        return "dzt";
    case SchemeId::TwoStepOtfs:
        return "twostep";
    case SchemeId::Ofdm:
        return "ofdm";
    }
    return "?";
}

SchemeId parse_scheme(const std::string& name)
{
    if (name == "dzt")
        return SchemeId::DztOtfs;
    if (name == "twostep")
        return SchemeId::TwoStepOtfs;
    if (name == "ofdm")
        return SchemeId::Ofdm;
    throw std::invalid_argument("unknown scheme: " + name + " (expected dzt, twostep, ofdm or all)");
}

std::vector<SchemeId> parse_scheme_list(const std::string& name)
{
    if (name == "all")
        return {SchemeId::DztOtfs, SchemeId::TwoStepOtfs, SchemeId::Ofdm};
    return {parse_scheme(name)};
}

PulseSpec rectangular_pulse(double Ts)
{
    PulseSpec p;
    p.shape = PulseShape::Rectangular;
    p.Ts = Ts;
    p.half_width_taps = 1;
    return p;
}

namespace {

// Unitary L-point DFT applied to every length-L block of v.
void blockwise_dft(cd* v, int blocks, int L, bool inverse)
{
    const FftPlan& plan = fft_plan(L);
    const double s = 1.0 / std::sqrt(static_cast<double>(L));
    for (int b = 0; b < blocks; ++b) {
        cd* p = v + static_cast<std::ptrdiff_t>(b) * L;
        if (inverse)
            plan.inverse(p);
        else
            plan.forward(p);
        for (int t = 0; t < L; ++t)
            p[t] *= s;
    }
}

} // namespace

TimeSignal two_step_modulate(const DDFrame& frame)
{
    const int K = frame.grid.K();
    const int L = frame.grid.L();
    const CMatrix X = isfft(frame); // X(n, m): symbol n, subcarrier m
    TimeSignal out;
    out.samples.resize(frame.grid.N());
    for (int n = 0; n < K; ++n)
        for (int m = 0; m < L; ++m)
            out.samples[n * L + m] = X(n, m);
    blockwise_dft(out.samples.data(), K, L, true);
    return out;
}

DDFrame two_step_demodulate(const TimeSignal& signal, const DDGrid& grid)
{
    if (signal.cp_len != 0 || signal.size() != grid.N())
        throw std::invalid_argument("two_step_demodulate: expected N samples without CP");
    const int K = grid.K();
    const int L = grid.L();
    CVector v = signal.samples;
    blockwise_dft(v.data(), K, L, false);
    CMatrix X(K, L);
    for (int n = 0; n < K; ++n)
        for (int m = 0; m < L; ++m)
            X(n, m) = v[n * L + m];
    return sfft(X, grid);
}

CMatrix two_step_effective_channel(const ChannelRealization& chan, const DDGrid& grid)
{
    const int N = grid.N();
    const TimeChannel ch(chan, rectangular_pulse(grid.Ts()), grid);
    CMatrix H(N, N);
    TimeSignal y;
    for (int q = 0; q < N; ++q) {
        DDFrame e(grid);
        e.values(q % grid.K(), q / grid.K()) = 1.0;
        y.samples = ch.apply(two_step_modulate(e).samples);
        H.row(q) = flatten(two_step_demodulate(y, grid));
    }
    return H;
}

int ofdm_cp_length(double tau_max, const DDGrid& grid)
{
    return static_cast<int>(std::ceil(tau_max / grid.Ts() - 1e-9)) + 1;
}

TimeSignal ofdm_modulate(const CVector& x, const DDGrid& grid, int cp_len)
{
    const int K = grid.K();
    const int L = grid.L();
    if (x.size() != grid.N())
        throw std::invalid_argument("ofdm_modulate: expected N symbols");
    if (cp_len < 0 || cp_len > L)
        throw std::invalid_argument("ofdm_modulate: CP length must lie in [0, L]");
    CVector body = x;
    blockwise_dft(body.data(), K, L, true);
    const int S = L + cp_len;
    TimeSignal out;
    out.samples.resize(static_cast<Eigen::Index>(K) * S);
    for (int s = 0; s < K; ++s)
        for (int c = 0; c < S; ++c)
            out.samples[s * S + c] = body[s * L + (c - cp_len + L) % L];
    return out;
}

CVector ofdm_channel(const CVector& stream, const ChannelRealization& chan, const PulseSpec& pulse,
                     const DDGrid& grid)
{
    const int M = static_cast<int>(stream.size());
    const int W = pulse.half_width_taps;
    CVector y = CVector::Zero(M);
    for (const ChannelPath& p : chan.paths) {
        const cd h = p.effective_gain(grid);
        const double l = p.delay_bins();
        const int lo = static_cast<int>(std::floor(l)) - W - 1;
        const int hi = static_cast<int>(std::ceil(l)) + W + 1;
        for (int d = lo; d <= hi; ++d) {
            const double g = rc_autocorr((d - l) * pulse.Ts, pulse);
            if (g == 0.0)
                continue;
            for (int n = 0; n < M; ++n) {
                const int m = n + d;
                if (m < 0 || m >= M)
                    continue;
                const cd e = std::polar(1.0, 2.0 * kPi * p.doppler_bins() * n / grid.N());
                y[m] += h * g * e * stream[n];
            }
        }
    }
    return y;
}

CVector ofdm_demodulate(const CVector& stream, const DDGrid& grid, int cp_len, const CVector* noise)
{
    const int K = grid.K();
    const int L = grid.L();
    const int S = L + cp_len;
    if (stream.size() != static_cast<Eigen::Index>(K) * S)
        throw std::invalid_argument("ofdm_demodulate: stream length mismatch");
    CVector body(grid.N());
    for (int s = 0; s < K; ++s)
        for (int m = 0; m < L; ++m)
            body[s * L + m] = stream[s * S + cp_len + m];
    if (noise)
        body += *noise;
    blockwise_dft(body.data(), K, L, false);
    return body;
}

OfdmChannel ofdm_effective_channel(const ChannelRealization& chan, const PulseSpec& pulse,
                                   const DDGrid& grid, int cp_len)
{
    const int K = grid.K();
    const int L = grid.L();
    const int N = grid.N();
    const int S = L + cp_len;
    const int W = pulse.half_width_taps;
    OfdmChannel out;
    out.cp_len = cp_len;

    // Fwd[m, k] = e^{-j 2 pi m k / L} / sqrt(L); body = x_f Fwd^H
    CMatrix Fwd(L, L);
    for (int m = 0; m < L; ++m)
        for (int k = 0; k < L; ++k)
            Fwd(m, k) = std::polar(1.0 / std::sqrt(static_cast<double>(L)), -2.0 * kPi * m * k / L);

    for (int s = 0; s < K; ++s) {
        // time-domain L x L operator from body sample b to received body sample m
        CMatrix T = CMatrix::Zero(L, L);
        const int t0 = s * S;
        for (const ChannelPath& p : chan.paths) {
            const cd h = p.effective_gain(grid);
            const double l = p.delay_bins();
            for (int c = 0; c < S; ++c) {
                const int b = (c - cp_len + L) % L;
                const cd he = h * std::polar(1.0, 2.0 * kPi * p.doppler_bins() * (t0 + c) / N);
                for (int m = 0; m < L; ++m) {
                    const int d = cp_len + m - c;
                    if (std::abs(d - l) > W)
                        continue;
                    const double g = rc_autocorr((d - l) * pulse.Ts, pulse);
                    if (g != 0.0)
                        T(b, m) += he * g;
                }
            }
        }
        out.Hf.push_back(Fwd.adjoint() * T * Fwd);
    }
    return out;
}

SchemeLink::SchemeLink(SchemeId id, const ChannelRealization& chan, const SchemeOptions& opts,
                       const DDGrid& grid)
    : id_(id), grid_(grid), opts_(opts)
{
    switch (id) {
    case SchemeId::DztOtfs: {
        PulseSpec pulse = opts.pulse;
        pulse.Ts = grid.Ts();
        H_ = build_effective_channel(chan, pulse, grid).H;
        eq_ = std::make_unique<MmseEqualizer>(H_);
        break;
    }
    case SchemeId::TwoStepOtfs:
        H_ = two_step_effective_channel(chan, grid);
        eq_ = std::make_unique<MmseEqualizer>(H_);
        break;
    case SchemeId::Ofdm:
        ofdm_ = ofdm_effective_channel(chan, rectangular_pulse(grid.Ts()), grid, opts.ofdm_cp_len);
        if (opts.ofdm_eq == OfdmEqualizer::FullIci)
            for (const CMatrix& Hf : ofdm_.Hf)
                ofdm_eq_.push_back(std::make_unique<MmseEqualizer>(Hf));
        break;
    }
}

CVector SchemeLink::receive(const CVector& x, const CVector& w, double N0) const
{
    const int N = grid_.N();
    const int L = grid_.L();
    if (x.size() != N || w.size() != N)
        throw std::invalid_argument("SchemeLink::receive: expected N symbols and N noise samples");
    const double sigma = std::sqrt(N0);
    switch (id_) {
    case SchemeId::DztOtfs: {
        const CVector tx = opts_.phase_rotation ? phase_rotate(x, opts_.pr_slope) : x;
        TimeSignal wt;
        wt.samples = sigma * w;
        return tx * H_ + flatten(dzt(wt, grid_));
    }
    case SchemeId::TwoStepOtfs: {
        TimeSignal wt;
        wt.samples = sigma * w;
        return x * H_ + flatten(two_step_demodulate(wt, grid_));
    }
    case SchemeId::Ofdm: {
        CVector y(N);
        CVector v = sigma * w;
        blockwise_dft(v.data(), grid_.K(), L, false);
        for (int s = 0; s < grid_.K(); ++s)
            y.segment(s * L, L) = x.segment(s * L, L) * ofdm_.Hf[s] + v.segment(s * L, L);
        return y;
    }
    }
    return {};
}

CVector SchemeLink::equalize(const CVector& y, double N0) const
{
    const int L = grid_.L();
    switch (id_) {
    case SchemeId::DztOtfs: {
        const CVector z = eq_->equalize(y, N0);
        return opts_.phase_rotation ? phase_unrotate(z, opts_.pr_slope) : z;
    }
    case SchemeId::TwoStepOtfs:
        return eq_->equalize(y, N0);
    case SchemeId::Ofdm: {
        CVector z(y.size());
        for (int s = 0; s < grid_.K(); ++s) {
            if (opts_.ofdm_eq == OfdmEqualizer::FullIci) {
                z.segment(s * L, L) = ofdm_eq_[s]->equalize(y.segment(s * L, L), N0);
            } else {
                for (int k = 0; k < L; ++k) {
                    const cd c = ofdm_.Hf[s](k, k);
                    const double den = std::norm(c) + N0;
                    z[s * L + k] = den > 0.0 ? y[s * L + k] * std::conj(c) / den : cd(0.0, 0.0);
                }
            }
        }
        return z;
    }
    }
    return {};
}

CVector SchemeLink::ml_detect(const CVector& y, const Alphabet& a) const
{
    const int L = grid_.L();
    switch (id_) {
    case SchemeId::DztOtfs: {
        if (!opts_.phase_rotation)
            return zakotfs::ml_detect(y, H_, a);
        // rotated transmit vector: y = (x Theta) H
        CMatrix RH = H_;
        for (Eigen::Index q = 0; q < RH.rows(); ++q)
            RH.row(q) *= std::polar(1.0, opts_.pr_slope * q / static_cast<double>(RH.rows()));
        return zakotfs::ml_detect(y, RH, a);
    }
    case SchemeId::TwoStepOtfs:
        return zakotfs::ml_detect(y, H_, a);
    case SchemeId::Ofdm: {
        CVector z(y.size());
        for (int s = 0; s < grid_.K(); ++s)
            z.segment(s * L, L) = zakotfs::ml_detect(y.segment(s * L, L), ofdm_.Hf[s], a);
        return z;
    }
    }
    return {};
}

Bits run_scheme(SchemeId scheme, const Bits& bits, const ChannelRealization& chan,
                const SchemeOptions& opts, const DDGrid& grid, double N0, const CVector& w,
                const Alphabet& alphabet)
{
    const CVector x = bits_to_symbols(bits, alphabet);
    if (x.size() != grid.N())
        throw std::invalid_argument("run_scheme: bit count does not fill the frame");
    const double sigma = std::sqrt(N0);
    SchemeLink link(scheme, chan, opts, grid);
    CVector y;
    switch (scheme) {
    case SchemeId::DztOtfs: {
        PulseSpec pulse = opts.pulse;
        pulse.Ts = grid.Ts();
        const CVector tx = opts.phase_rotation ? phase_rotate(x, opts.pr_slope) : x;
        TimeSignal r = apply_channel_time(idzt(unflatten(tx, grid)), chan, pulse, grid);
        r.samples += sigma * w;
        y = flatten(dzt(r, grid));
        break;
    }
    case SchemeId::TwoStepOtfs: {
        TimeSignal r = apply_channel_time(two_step_modulate(unflatten(x, grid)), chan,
                                          rectangular_pulse(grid.Ts()), grid);
        r.samples += sigma * w;
        y = flatten(two_step_demodulate(r, grid));
        break;
    }
    case SchemeId::Ofdm: {
        const TimeSignal s = ofdm_modulate(x, grid, opts.ofdm_cp_len);
        const CVector r = ofdm_channel(s.samples, chan, rectangular_pulse(grid.Ts()), grid);
        const CVector v = sigma * w;
        y = ofdm_demodulate(r, grid, opts.ofdm_cp_len, &v);
        break;
    }
    }
    return symbols_to_bits(link.equalize(y, N0), alphabet);
}

} // namespace zakotfs
