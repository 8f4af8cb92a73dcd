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

#include <memory>
#include <string>
#include <vector>

namespace zakotfs {

enum class SchemeId { DztOtfs, TwoStepOtfs, Ofdm };

std::string scheme_name(SchemeId s); // "dzt", "twostep", "ofdm"
SchemeId parse_scheme(const std::string& name);
std::vector<SchemeId> parse_scheme_list(const std::string& name); // also accepts "all"

/// Rectangular transmit and receive pulses of one sample: the composite is
/// a triangle of half-width Ts.
PulseSpec rectangular_pulse(double Ts);

/// Two-step OTFS with rectangular pulses and no per-symbol CP: ISFFT to a
/// K x L time-frequency grid, then one L-point IDFT per multicarrier
/// symbol: s[nL + t] = L^{-1/2} sum_m X[n, m] e^{j 2 pi m t / L}.
TimeSignal two_step_modulate(const DDFrame& frame);
DDFrame two_step_demodulate(const TimeSignal& signal, const DDGrid& grid);

/// Effective DD channel of the two-step link, found by pushing each unit
/// vector through modulate, the circular channel (rectangular pulse) and
/// demodulate.
CMatrix two_step_effective_channel(const ChannelRealization& chan, const DDGrid& grid);

/// OFDM: K symbols of L subcarriers, each with its own CP. Data symbol
/// x[s L + k] rides on subcarrier k of symbol s.
struct OfdmChannel {
    int cp_len = 0;
    std::vector<CMatrix> Hf; // per symbol, L x L, y_f = x_f Hf
};

/// ceil(tau_max / Ts) + 1: covers the largest delay plus the pulse tail.
int ofdm_cp_length(double tau_max, const DDGrid& grid);

TimeSignal ofdm_modulate(const CVector& x, const DDGrid& grid, int cp_len);
/// Linear time-varying channel over the whole CP-extended stream, with
/// Doppler phase referenced to the first transmitted sample:
///   y[m] = sum_i h'_i sum_n x[n] e^{j 2 pi k_i n / N} g_i[m - n]
CVector ofdm_channel(const CVector& stream, const ChannelRealization& chan, const PulseSpec& pulse,
                     const DDGrid& grid);
/// Strips each CP and applies the unitary L-point DFT; noise is added
/// to the body samples (w has N entries).
CVector ofdm_demodulate(const CVector& stream, const DDGrid& grid, int cp_len,
                        const CVector* noise = nullptr);

OfdmChannel ofdm_effective_channel(const ChannelRealization& chan, const PulseSpec& pulse,
                                   const DDGrid& grid, int cp_len);

enum class OfdmEqualizer { OneTap, FullIci };

struct SchemeOptions {
    PulseSpec pulse;                     // DZT-OTFS composite pulse
    OfdmEqualizer ofdm_eq = OfdmEqualizer::OneTap;
    int ofdm_cp_len = 1;
    bool phase_rotation = false;         // DZT-OTFS only
    double pr_slope = 1.0;
};

/// Matrix-level link for one scheme and one channel realization. The
/// receive/equalize pair reproduces the physical pipeline of run_scheme
/// for noise w scaled by sqrt(N0).
class SchemeLink {
public:
    SchemeLink(SchemeId id, const ChannelRealization& chan, const SchemeOptions& opts,
               const DDGrid& grid);

    SchemeId id() const { return id_; }
    /// Noisy observation in the detector domain. w holds N unit-variance
    /// time-domain noise samples.
    CVector receive(const CVector& x, const CVector& w, double N0) const;
    /// Soft MMSE estimates of the data symbols.
    CVector equalize(const CVector& y, double N0) const;
    /// Exhaustive ML decisions (data symbols); per OFDM symbol for OFDM.
    CVector ml_detect(const CVector& y, const Alphabet& a) const;

    const CMatrix& H() const { return H_; }
    const OfdmChannel& ofdm() const { return ofdm_; }

private:
    SchemeId id_;
    DDGrid grid_;
    SchemeOptions opts_;
    CMatrix H_;                       // DD schemes
    std::unique_ptr<MmseEqualizer> eq_;
    OfdmChannel ofdm_;
    std::vector<std::unique_ptr<MmseEqualizer>> ofdm_eq_;
};

/// Physical pipeline: bits -> symbols -> modulate -> channel -> add N0-scaled
/// noise w -> demodulate -> MMSE -> hard bits.
Bits run_scheme(SchemeId scheme, const Bits& bits, const ChannelRealization& chan,
                const SchemeOptions& opts, const DDGrid& grid, double N0, const CVector& w,
                const Alphabet& alphabet);

} // namespace zakotfs
