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

#include "zakotfs/baselines.hpp"
#include "zakotfs/channel.hpp"
#include "zakotfs/core.hpp"
#include "zakotfs/diversity.hpp"
#include "zakotfs/pulse.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace zakotfs {

struct DopplerSweepConfig {
    std::vector<double> nu_grid_hz{500.0, 937.5, 1875.0, 3750.0, 5625.0, 7500.0, 9375.0, 11250.0};
    double tau_max_s = 2.0 / 60e3;
    double snr_db = 20.0;
};

struct DelaySweepConfig {
    std::vector<double> tau_grid_s{1.0 / 60e3, 2.0 / 60e3, 4.0 / 60e3, 6.0 / 60e3,
                                   8.0 / 60e3, 10.0 / 60e3, 12.0 / 60e3, 14.0 / 60e3};
    double nu_max_hz = 937.0;
    double snr_db = 20.0;
};

struct RolloffStudyConfig {
    std::vector<double> gammas{0.1, 0.5, 0.9};
    double snr_db = 15.0;
    // Doppler axis
    std::vector<double> nu_grid_hz{500.0, 937.5, 1875.0, 3750.0, 5625.0, 7500.0, 9375.0, 11250.0};
    double tau_max_s = 2.0 / 60e3;
    // delay axis
    std::vector<double> tau_grid_s{1.0 / 60e3, 2.0 / 60e3, 4.0 / 60e3, 6.0 / 60e3,
                                   8.0 / 60e3, 10.0 / 60e3, 12.0 / 60e3, 14.0 / 60e3};
    double nu_max_hz = 937.0;
};

struct BoundsConfig {
    std::string system = "s1";
    std::string profile = "A";
    std::vector<double> snr_grid_db{0, 5, 10, 15, 20, 25, 30, 35};
    bool with_pr = false;
    std::int64_t min_errors = 400;
    std::int64_t max_trials = 1000000;
};

/// Every simulation parameter. Defaults follow the K = L = 16,
/// B = 60 kHz, P = 4 link with BPSK and MMSE detection.
struct SimConfig {
    // grid
    int K = 16;
    int L = 16;
    double bandwidth_hz = 60e3;
    double carrier_hz = 4e9; // recorded only

    // pulse
    double rolloff = 0.0;
    int half_width_taps = 16;

    // channel
    int P = 4;
    double tau_max_s = 8.0 / 60e3;
    double nu_max_hz = 937.0;
    bool fractional = true;
    std::string profile_file; // fixed geometry with random gains when set

    // run
    std::uint64_t master_seed = 1;
    std::int64_t min_errors = 200;
    std::int64_t max_trials = 20000;
    std::string detector = "mmse"; // mmse | ml
    std::vector<std::string> schemes{"dzt", "twostep", "ofdm"};
    std::vector<double> snr_grid_db{0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
    std::string alphabet = "bpsk";
    bool phase_rotation = false;
    double pr_slope = 1.0;
    std::string ofdm_equalizer = "one-tap"; // one-tap | full-ici
    int batch_size = 8;

    DopplerSweepConfig doppler;
    DelaySweepConfig delay;
    RolloffStudyConfig rolloff_study;
    BoundsConfig bounds;

    // output
    std::string csv_path;
    std::string plot_script;

    DDGrid grid() const { return DDGrid(K, L, 1.0 / bandwidth_hz); }
    PulseSpec pulse() const;
    ChannelStats stats() const;
    SchemeOptions scheme_options() const;
    /// Both throw std::invalid_argument naming the field. validate_link
    /// covers the grid, pulse, channel and run sections only.
    void validate() const;
    void validate_link() const;
};

enum class SweepAxis { SnrDb, NuMax, TauMax, Rolloff };
std::string axis_name(SweepAxis a); // snr_db, nu_max, tau_max, rolloff

enum class Detector { Mmse, Ml };

struct SweepSpec {
    SweepAxis axis = SweepAxis::SnrDb;
    std::vector<double> values;
    SimConfig fixed;
    double snr_db = 20.0; // used when the axis is not SNR
    std::vector<SchemeId> schemes{SchemeId::DztOtfs};
    Detector detector = Detector::Mmse;
    std::int64_t min_errors = 200;
    std::int64_t max_trials = 20000;
};

struct BerPoint {
    double axis_value = 0.0;
    double snr_db = 0.0;
    std::int64_t trials = 0;
    std::int64_t bit_errors = 0;
    std::int64_t bits_per_trial = 0;
    double ber = 0.0;
    double ci_halfwidth = 0.0; // 95 %, normal approximation
    bool low_confidence = false;
};

struct BerCurve {
    std::string scheme; // scheme name, or a label such as "dzt,gamma=0.5"
    std::string axis_name;
    std::vector<BerPoint> points;
};

/// Fills ber and ci_halfwidth from the counts.
void finalize_point(BerPoint& p);

/// Stream ids for per-trial randomness. All draws for trial t depend only on
/// t, so every axis point and scheme sees the same channel, data and noise.
enum class StreamPurpose : std::uint64_t { Channel = 1, Data = 2, Noise = 3, Gains = 4 };
std::uint64_t trial_stream(StreamPurpose purpose, std::int64_t trial);

/// Worker count from ZAKOTFS_WORKERS, else 1.
int default_workers();

/// Paired Monte Carlo over the axis. Trials run in batches of
/// fixed.batch_size; a (scheme, point) pair stops once it has min_errors
/// errors or max_trials trials. Output does not depend on the worker count.
std::vector<BerCurve> run_sweep(const SweepSpec& spec, int workers = 1);

struct OverlayResult {
    std::string system;
    std::string profile;
    bool with_pr = false;
    int min_rank = 0;
    BerCurve sim;
    std::vector<double> upper;
    std::vector<double> lower;
};

/// ML simulation over a fixed geometry with i.i.d. CN(0, 1/P) gains, next
/// to the union-bound pair. Stopping rule as in run_sweep.
OverlayResult run_bound_overlay(const SimConfig& cfg, const BoundsConfig& bounds, int workers = 1);

/// DZT-OTFS curves at rolloff_study.snr_db for each gamma along the Doppler
/// (axis = NuMax) or delay (axis = TauMax) grid.
std::vector<BerCurve> run_rolloff_study(const SimConfig& cfg, SweepAxis axis, int workers = 1);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t v);

/// CSV with columns
///   scheme,axis_name,axis_value,snr_db,trials,bit_errors,ber,ci_halfwidth,seed,config_hash
/// preceded by '#' comment lines (header_comments, then any low-confidence
/// flags).
void write_ber_csv(std::ostream& os, const std::vector<BerCurve>& curves, std::uint64_t seed,
                   const std::string& config_hash, const std::vector<std::string>& header_comments);

} // namespace zakotfs
