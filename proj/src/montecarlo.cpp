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

#include "zakotfs/montecarlo.hpp"

#include "zakotfs/ddmatrix.hpp"
#include "zakotfs/detect.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace zakotfs {

PulseSpec SimConfig::pulse() const
{
    PulseSpec p;
    p.rolloff = rolloff;
    p.Ts = 1.0 / bandwidth_hz;
    p.half_width_taps = half_width_taps;
    return p;
}

ChannelStats SimConfig::stats() const
{
    ChannelStats s;
    s.P = P;
    s.tau_max = tau_max_s;
    s.nu_max = nu_max_hz;
    s.gain_variance = 1.0 / P;
    s.fractional = fractional;
    return s;
}

SchemeOptions SimConfig::scheme_options() const
{
    SchemeOptions o;
    o.pulse = pulse();
    o.ofdm_eq = ofdm_equalizer == "full-ici" ? OfdmEqualizer::FullIci : OfdmEqualizer::OneTap;
    o.ofdm_cp_len = ofdm_cp_length(tau_max_s, grid());
    o.phase_rotation = phase_rotation;
    o.pr_slope = pr_slope;
    return o;
}

namespace {

void require(bool ok, const std::string& field, const std::string& what)
{
    if (!ok)
        throw std::invalid_argument(field + ": " + what);
}

void require_grid(const std::vector<double>& v, const std::string& field, bool nonneg = true)
{
    require(!v.empty(), field, "must not be empty");
    for (std::size_t i = 0; i < v.size(); ++i) {
        require(std::isfinite(v[i]), field, "must be finite");
        if (nonneg)
            require(v[i] >= 0.0, field, "must be >= 0");
        if (i > 0)
            require(v[i] > v[i - 1], field, "must be strictly increasing");
    }
}

} // namespace

void SimConfig::validate_link() const
{
    require(K >= 1, "grid.K", "must be >= 1");
    require(L >= 1, "grid.L", "must be >= 1");
    require(K * L <= 1024, "grid", "K * L must not exceed 1024 for dense detectors");
    require(bandwidth_hz > 0.0, "grid.bandwidth_hz", "must be > 0");
    require(carrier_hz >= 0.0, "grid.carrier_hz", "must be >= 0");
    require(rolloff >= 0.0 && rolloff <= 1.0, "pulse.rolloff", "must lie in [0, 1]");
    require(half_width_taps >= 1, "pulse.half_width_taps", "must be >= 1");
    require(P >= 1, "channel.P", "must be >= 1");
    require(tau_max_s >= 0.0, "channel.tau_max_s", "must be >= 0");
    require(std::lround(tau_max_s * bandwidth_hz) < L, "channel.tau_max_s", "maximum delay must stay below L bins");
    require(nu_max_hz >= 0.0, "channel.nu_max_hz", "must be >= 0");
    require(min_errors >= 1, "run.min_errors", "must be >= 1");
    require(max_trials >= 1, "run.max_trials", "must be >= 1");
    require(detector == "mmse" || detector == "ml", "run.detector", "must be mmse or ml");
    require(!schemes.empty(), "run.schemes", "must not be empty");
    for (const auto& s : schemes) {
        try {
            parse_scheme(s);
        } catch (const std::invalid_argument&) {
            require(false, "run.schemes", "unknown scheme '" + s + "'");
        }
    }
    require_grid(snr_grid_db, "run.snr_grid_db", false);
    require(alphabet == "bpsk" || alphabet == "qpsk", "run.alphabet", "must be bpsk or qpsk");
    require(ofdm_equalizer == "one-tap" || ofdm_equalizer == "full-ici", "run.ofdm_equalizer",
            "must be one-tap or full-ici");
    require(batch_size >= 1, "run.batch_size", "must be >= 1");

}

void SimConfig::validate() const
{
    validate_link();
    require_grid(doppler.nu_grid_hz, "sweeps.doppler.nu_grid_hz");
    require(doppler.tau_max_s >= 0.0 && std::lround(doppler.tau_max_s * bandwidth_hz) < L,
            "sweeps.doppler.tau_max_s", "must lie in [0, (L - 0.5) Ts)");
    require_grid(delay.tau_grid_s, "sweeps.delay.tau_grid_s");
    require(std::lround(delay.tau_grid_s.back() * bandwidth_hz) < L, "sweeps.delay.tau_grid_s",
            "maximum delay must stay below L bins");
    require(delay.nu_max_hz >= 0.0, "sweeps.delay.nu_max_hz", "must be >= 0");

    require(!rolloff_study.gammas.empty(), "sweeps.rolloff.gammas", "must not be empty");
    for (double g : rolloff_study.gammas)
        require(g >= 0.0 && g <= 1.0, "sweeps.rolloff.gammas", "values must lie in [0, 1]");
    require_grid(rolloff_study.nu_grid_hz, "sweeps.rolloff.nu_grid_hz");
    require_grid(rolloff_study.tau_grid_s, "sweeps.rolloff.tau_grid_s");
    require(std::lround(rolloff_study.tau_grid_s.back() * bandwidth_hz) < L, "sweeps.rolloff.tau_grid_s",
            "maximum delay must stay below L bins");
    require(std::lround(rolloff_study.tau_max_s * bandwidth_hz) < L, "sweeps.rolloff.tau_max_s",
            "maximum delay must stay below L bins");
    require(rolloff_study.nu_max_hz >= 0.0, "sweeps.rolloff.nu_max_hz", "must be >= 0");

    require(bounds.system == "s1" || bounds.system == "s2", "bounds.system", "must be s1 or s2");
    require(bounds.profile == "A" || bounds.profile == "B" || bounds.profile == "C" || bounds.profile == "D",
            "bounds.profile", "must be A, B, C or D");
    require_grid(bounds.snr_grid_db, "bounds.snr_grid_db", false);
    require(bounds.min_errors >= 1, "bounds.min_errors", "must be >= 1");
    require(bounds.max_trials >= 1, "bounds.max_trials", "must be >= 1");
}

std::string axis_name(SweepAxis a)
{
    switch (a) {
    case SweepAxis::SnrDb:
        return "snr_db";
    case SweepAxis::NuMax:
        return "nu_max";
    case SweepAxis::TauMax:
        return "tau_max";
    case SweepAxis::Rolloff:
        return "rolloff";
    }
    return "?";
}

void finalize_point(BerPoint& p)
{
    const double bits = static_cast<double>(p.trials) * p.bits_per_trial;
    p.ber = bits > 0 ? p.bit_errors / bits : 0.0;
    p.ci_halfwidth = bits > 0 ? 1.96 * std::sqrt(p.ber * (1.0 - p.ber) / bits) : 0.0;
}

std::uint64_t trial_stream(StreamPurpose purpose, std::int64_t trial)
{
    return stream_key({static_cast<std::uint64_t>(purpose), static_cast<std::uint64_t>(trial)});
}

int default_workers()
{
    if (const char* v = std::getenv("ZAKOTFS_WORKERS")) {
        char* end = nullptr;
        const long n = std::strtol(v, &end, 10);
        if (end != v && *end == '\0' && n >= 1 && n <= 1024)
            return static_cast<int>(n);
    }
    return 1;
}

namespace {

// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index is
// handled exactly once; callers write results into per-index slots.
template <typename Fn>
void parallel_for(std::int64_t n, int workers, Fn fn)
{
    const int w = static_cast<int>(std::min<std::int64_t>(std::max(workers, 1), n));
    if (w <= 1) {
        for (std::int64_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(w);
    for (int t = 0; t < w; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::int64_t i = t; i < n; i += w)
                    fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

double n0_from_db(double snr_db)
{
    return std::pow(10.0, -snr_db / 10.0);
}

struct TrialData {
    Bits bits;
    CVector x;
    CVector w; // unit-variance time-domain noise
};

TrialData draw_trial(const SimConfig& cfg, const Alphabet& a, std::int64_t t)
{
    const int N = cfg.K * cfg.L;
    TrialData d;
    RngStream data(cfg.master_seed, trial_stream(StreamPurpose::Data, t));
    d.bits.resize(static_cast<std::size_t>(N) * a.bits_per_symbol);
    for (auto& b : d.bits)
        b = static_cast<std::uint8_t>(data.bit());
    d.x = bits_to_symbols(d.bits, a);
    RngStream noise(cfg.master_seed, trial_stream(StreamPurpose::Noise, t));
    d.w.resize(N);
    for (int n = 0; n < N; ++n)
        d.w[n] = noise.complex_gaussian(1.0);
    return d;
}

ChannelRealization draw_channel(const SimConfig& cfg, const ChannelProfile* profile, std::int64_t t)
{
    RngStream rng(cfg.master_seed, trial_stream(StreamPurpose::Channel, t));
    if (profile) {
        std::vector<cd> gains;
        for (int i = 0; i < profile->P(); ++i)
            gains.push_back(rng.complex_gaussian(1.0 / profile->P()));
        return realize_profile(*profile, gains);
    }
    return generate_channel(cfg.stats(), cfg.grid(), rng);
}

SimConfig at_point(const SweepSpec& spec, double v)
{
    SimConfig c = spec.fixed;
    switch (spec.axis) {
    case SweepAxis::SnrDb:
        break;
    case SweepAxis::NuMax:
        c.nu_max_hz = v;
        break;
    case SweepAxis::TauMax:
        c.tau_max_s = v;
        break;
    case SweepAxis::Rolloff:
        c.rolloff = v;
        break;
    }
    return c;
}

std::int64_t count_errors(const Bits& a, const Bits& b)
{
    std::int64_t e = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        e += a[i] != b[i];
    return e;
}

std::int64_t detect_errors(const SchemeLink& link, const TrialData& d, double N0, Detector det,
                           const Alphabet& a)
{
    const CVector y = link.receive(d.x, d.w, N0);
    const CVector xh = det == Detector::Ml ? link.ml_detect(y, a) : link.equalize(y, N0);
    return count_errors(d.bits, symbols_to_bits(xh, a));
}

} // namespace

std::vector<BerCurve> run_sweep(const SweepSpec& spec, int workers)
{
    if (spec.values.empty())
        throw std::invalid_argument("run_sweep: empty axis");
    if (spec.schemes.empty())
        throw std::invalid_argument("run_sweep: no schemes");
    const SimConfig& base = spec.fixed;
    for (double v : spec.values)
        at_point(spec, v).validate_link();
    const Alphabet alphabet = Alphabet::by_name(base.alphabet);
    const int S = static_cast<int>(spec.schemes.size());
    const int M = static_cast<int>(spec.values.size());
    const std::int64_t bits_per_trial = static_cast<std::int64_t>(base.K) * base.L * alphabet.bits_per_symbol;

    std::unique_ptr<ChannelProfile> profile;
    if (!base.profile_file.empty())
        profile = std::make_unique<ChannelProfile>(load_profile(base.profile_file));

    std::vector<SimConfig> point_cfg;
    for (double v : spec.values)
        point_cfg.push_back(at_point(spec, v));

    std::vector<std::int64_t> trials(S * M, 0), errors(S * M, 0);
    std::vector<char> active(S * M, 1);
    std::int64_t next_trial = 0;

    auto any_active = [&] { return std::find(active.begin(), active.end(), 1) != active.end(); };

    while (any_active()) {
        const std::int64_t n = std::min<std::int64_t>(base.batch_size, spec.max_trials - next_trial);
        std::vector<std::vector<std::int64_t>> out(n, std::vector<std::int64_t>(S * M, 0));

        parallel_for(n, workers, [&](std::int64_t b) {
            const std::int64_t t = next_trial + b;
            const TrialData d = draw_trial(base, alphabet, t);
            auto& res = out[b];
            if (spec.axis == SweepAxis::SnrDb) {
                const ChannelRealization chan = draw_channel(base, profile.get(), t);
                for (int s = 0; s < S; ++s) {
                    bool need = false;
                    for (int p = 0; p < M; ++p)
                        need = need || active[s * M + p];
                    if (!need)
                        continue;
                    const SchemeLink link(spec.schemes[s], chan, base.scheme_options(), base.grid());
                    for (int p = 0; p < M; ++p)
                        if (active[s * M + p])
                            res[s * M + p] = detect_errors(link, d, n0_from_db(spec.values[p]),
                                                           spec.detector, alphabet);
                }
            } else {
                const double N0 = n0_from_db(spec.snr_db);
                for (int p = 0; p < M; ++p) {
                    bool need = false;
                    for (int s = 0; s < S; ++s)
                        need = need || active[s * M + p];
                    if (!need)
                        continue;
                    const SimConfig& c = point_cfg[p];
                    const ChannelRealization chan = draw_channel(c, profile.get(), t);
                    for (int s = 0; s < S; ++s) {
                        if (!active[s * M + p])
                            continue;
                        const SchemeLink link(spec.schemes[s], chan, c.scheme_options(), c.grid());
                        res[s * M + p] = detect_errors(link, d, N0, spec.detector, alphabet);
                    }
                }
            }
        });

        for (std::int64_t b = 0; b < n; ++b)
            for (int i = 0; i < S * M; ++i)
                if (active[i])
                    errors[i] += out[b][i];
        next_trial += n;
        for (int i = 0; i < S * M; ++i) {
            if (!active[i])
                continue;
            trials[i] += n;
            if (errors[i] >= spec.min_errors || trials[i] >= spec.max_trials)
                active[i] = 0;
        }
    }

    std::vector<BerCurve> curves;
    for (int s = 0; s < S; ++s) {
        BerCurve c;
        c.scheme = scheme_name(spec.schemes[s]);
        c.axis_name = axis_name(spec.axis);
        for (int p = 0; p < M; ++p) {
            BerPoint pt;
            pt.axis_value = spec.values[p];
            pt.snr_db = spec.axis == SweepAxis::SnrDb ? spec.values[p] : spec.snr_db;
            pt.trials = trials[s * M + p];
            pt.bit_errors = errors[s * M + p];
            pt.bits_per_trial = bits_per_trial;
            pt.low_confidence = pt.bit_errors < spec.min_errors;
            finalize_point(pt);
            c.points.push_back(pt);
        }
        curves.push_back(c);
    }
    return curves;
}

OverlayResult run_bound_overlay(const SimConfig& cfg, const BoundsConfig& bounds, int workers)
{
    const SystemSpec system = builtin_system(bounds.system);
    const DDProfile profile = builtin_profile(bounds.profile);
    DiversityOptions opts;
    opts.pulse = cfg.pulse();
    opts.pr_slope = cfg.pr_slope;

    const PairAnalysis pa = analyze_pairs(system, profile, bounds.with_pr, opts);
    const BerBounds bb = ber_bounds(pa, bounds.snr_grid_db);
    const CandidateBank bank = build_candidate_bank(system, profile, bounds.with_pr, opts);
    const DDGrid grid = system.grid();
    const int P = profile.P();
    const int M = static_cast<int>(bounds.snr_grid_db.size());
    const std::int64_t Q = bank.symbols.rows();

    OverlayResult res;
    res.system = bounds.system;
    res.profile = bounds.profile;
    res.with_pr = bounds.with_pr;
    res.min_rank = rank_histogram(pa, opts.rank_floor).min_rank;
    res.upper = bb.upper;
    res.lower = bb.lower;

    std::vector<std::int64_t> trials(M, 0), errors(M, 0);
    std::vector<char> active(M, 1);
    std::int64_t next_trial = 0;
    // The per-trial work is tiny, so batches are larger than in run_sweep.
    const std::int64_t batch = std::max<std::int64_t>(cfg.batch_size, 1) * 512;

    while (std::find(active.begin(), active.end(), 1) != active.end()) {
        const std::int64_t n = std::min<std::int64_t>(batch, bounds.max_trials - next_trial);
        const int chunks = std::max(workers, 1);
        std::vector<std::vector<std::int64_t>> out(chunks, std::vector<std::int64_t>(M, 0));
        parallel_for(chunks, chunks, [&](std::int64_t ch) {
            for (std::int64_t b = ch; b < n; b += chunks) {
                const std::int64_t t = next_trial + b;
                RngStream g(cfg.master_seed, trial_stream(StreamPurpose::Gains, t));
                std::vector<cd> h(P);
                for (auto& v : h)
                    v = g.complex_gaussian(1.0 / P);
                RngStream data(cfg.master_seed, trial_stream(StreamPurpose::Data, t));
                const std::int64_t c = data.uniform_int(0, static_cast<int>(Q - 1));
                RngStream nz(cfg.master_seed, trial_stream(StreamPurpose::Noise, t));
                const CVector v = dd_noise(grid, 1.0, nz);
                const CMatrix outputs = bank.outputs(h);
                for (int p = 0; p < M; ++p) {
                    if (!active[p])
                        continue;
                    const CVector y = outputs.row(c) + std::sqrt(n0_from_db(bounds.snr_grid_db[p])) * v;
                    const std::int64_t ch_hat = nearest_row(y, outputs);
                    out[ch][p] += std::popcount(static_cast<std::uint64_t>(c ^ ch_hat));
                }
            }
        });
        for (int ch = 0; ch < chunks; ++ch)
            for (int p = 0; p < M; ++p)
                if (active[p])
                    errors[p] += out[ch][p];
        next_trial += n;
        for (int p = 0; p < M; ++p) {
            if (!active[p])
                continue;
            trials[p] += n;
            if (errors[p] >= bounds.min_errors || trials[p] >= bounds.max_trials)
                active[p] = 0;
        }
    }

    res.sim.scheme = "dzt";
    res.sim.axis_name = "snr_db";
    for (int p = 0; p < M; ++p) {
        BerPoint pt;
        pt.axis_value = bounds.snr_grid_db[p];
        pt.snr_db = bounds.snr_grid_db[p];
        pt.trials = trials[p];
        pt.bit_errors = errors[p];
        pt.bits_per_trial = static_cast<std::int64_t>(system.N()) * system.alphabet.bits_per_symbol;
        pt.low_confidence = pt.bit_errors < bounds.min_errors;
        finalize_point(pt);
        res.sim.points.push_back(pt);
    }
    return res;
}

std::vector<BerCurve> run_rolloff_study(const SimConfig& cfg, SweepAxis axis, int workers)
{
    if (axis != SweepAxis::NuMax && axis != SweepAxis::TauMax)
        throw std::invalid_argument("run_rolloff_study: axis must be nu_max or tau_max");
    const RolloffStudyConfig& rs = cfg.rolloff_study;
    std::vector<BerCurve> out;
    for (double g : rs.gammas) {
        SweepSpec spec;
        spec.axis = axis;
        spec.fixed = cfg;
        spec.fixed.rolloff = g;
        if (axis == SweepAxis::NuMax) {
            spec.values = rs.nu_grid_hz;
            spec.fixed.tau_max_s = rs.tau_max_s;
        } else {
            spec.values = rs.tau_grid_s;
            spec.fixed.nu_max_hz = rs.nu_max_hz;
        }
        spec.snr_db = rs.snr_db;
        spec.schemes = {SchemeId::DztOtfs};
        spec.detector = cfg.detector == "ml" ? Detector::Ml : Detector::Mmse;
        spec.min_errors = cfg.min_errors;
        spec.max_trials = cfg.max_trials;
        BerCurve c = run_sweep(spec, workers).front();
        std::ostringstream label;
        label << "dzt[gamma=" << g << "]";
        c.scheme = label.str();
        out.push_back(c);
    }
    return out;
}

std::uint64_t fnv1a64(const std::string& s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_ber_csv(std::ostream& os, const std::vector<BerCurve>& curves, std::uint64_t seed,
                   const std::string& config_hash, const std::vector<std::string>& header_comments)
{
    for (const auto& line : header_comments)
        os << "# " << line << '\n';
    for (const auto& c : curves)
        for (const auto& p : c.points)
            if (p.low_confidence) {
                char buf[160];
                std::snprintf(buf, sizeof buf,
                              "# low_confidence: scheme=%s %s=%.10g errors=%lld trials=%lld",
                              c.scheme.c_str(), c.axis_name.c_str(), p.axis_value,
                              static_cast<long long>(p.bit_errors), static_cast<long long>(p.trials));
                os << buf << '\n';
            }
    os << "scheme,axis_name,axis_value,snr_db,trials,bit_errors,ber,ci_halfwidth,seed,config_hash\n";
    for (const auto& c : curves) {
        for (const auto& p : c.points) {
            char buf[320];
            std::snprintf(buf, sizeof buf, "%s,%s,%.10g,%.10g,%lld,%lld,%.6e,%.6e,%llu,%s",
                          c.scheme.c_str(), c.axis_name.c_str(), p.axis_value, p.snr_db,
                          static_cast<long long>(p.trials), static_cast<long long>(p.bit_errors), p.ber,
                          p.ci_halfwidth, static_cast<unsigned long long>(seed), config_hash.c_str());
            os << buf << '\n';
        }
    }
}

} // namespace zakotfs
