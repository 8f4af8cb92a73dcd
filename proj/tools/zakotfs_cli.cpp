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
#include "zakotfs/config.hpp"
#include "zakotfs/ddmatrix.hpp"
#include "zakotfs/diversity.hpp"
#include "zakotfs/montecarlo.hpp"
#include "zakotfs/plots.hpp"
#include "zakotfs/transforms.hpp"
#include "zakotfs/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace zakotfs;

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kVerifyFailed = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void error_line(const std::string& kind, const std::string& field, const std::string& message)
{
    nlohmann::json j{{"error", kind}, {"message", message}};
    if (!field.empty())
        j["field"] = field;
    std::cerr << j.dump() << '\n';
}

struct Common {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string plot_script;
    std::optional<int> workers;
    std::optional<std::int64_t> min_errors;
    std::optional<std::int64_t> max_trials;
    std::string scheme;
};

void add_common(CLI::App* app, Common& c, bool sweep)
{
    app->add_option("-c,--config", c.config_path, "JSON config file (defaults apply when omitted)");
    app->add_option("--seed", c.seed, "Master seed (overrides run.master_seed)");
    app->add_option("-o,--out", c.out, "CSV output path (default: output.csv_path, else stdout)");
    if (!sweep)
        return;
    app->add_option("--plot-script", c.plot_script, "Write a matplotlib script for this CSV");
    app->add_option("-j,--workers", c.workers, "Worker threads (default: ZAKOTFS_WORKERS or 1)");
    app->add_option("--min-errors", c.min_errors, "Stop a point after this many bit errors");
    app->add_option("--max-trials", c.max_trials, "Stop a point after this many frames");
}

SimConfig resolve(const Common& c)
{
    SimConfig cfg = c.config_path.empty() ? parse_config("{}") : load_config(c.config_path);
    if (c.seed)
        cfg.master_seed = *c.seed;
    if (c.min_errors)
        cfg.min_errors = *c.min_errors;
    if (c.max_trials)
        cfg.max_trials = *c.max_trials;
    if (!c.out.empty())
        cfg.csv_path = c.out;
    if (!c.plot_script.empty())
        cfg.plot_script = c.plot_script;
    if (!c.scheme.empty()) {
        cfg.schemes.clear();
        for (SchemeId s : parse_scheme_list(c.scheme))
            cfg.schemes.push_back(scheme_name(s));
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        const std::string m = e.what();
        const auto pos = m.find(": ");
        throw ConfigError(pos == std::string::npos ? "<config>" : m.substr(0, pos),
                          pos == std::string::npos ? m : m.substr(pos + 2));
    }
    return cfg;
}

int workers_of(const Common& c)
{
    return c.workers ? std::max(1, *c.workers) : default_workers();
}

// Writes text to cfg.csv_path, or stdout when unset.
void emit(const SimConfig& cfg, const std::string& text)
{
    if (cfg.csv_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.csv_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + cfg.csv_path);
    out << text;
}

std::vector<std::string> header(const std::string& cmd, const SimConfig& cfg, const std::string& context)
{
    SimConfig c = cfg;
    c.csv_path.clear();
    c.plot_script.clear();
    std::vector<std::string> h;
    h.push_back("zakotfs " + cmd);
    h.push_back("context: " + context);
    h.push_back("config: " + emit_config(c, false));
    char buf[96];
    std::snprintf(buf, sizeof buf, "carrier_hz: %.6g (not used by the discrete model)", cfg.carrier_hz);
    h.push_back(buf);
    return h;
}

void maybe_plot(const SimConfig& cfg, const std::string& figure)
{
    if (cfg.plot_script.empty())
        return;
    write_plot_script(cfg.plot_script, figure, cfg.csv_path.empty() ? "results.csv" : cfg.csv_path);
}

std::vector<SchemeId> schemes_of(const SimConfig& cfg)
{
    std::vector<SchemeId> out;
    for (const auto& s : cfg.schemes)
        out.push_back(parse_scheme(s));
    return out;
}

int run_ber(const std::string& cmd, SweepAxis axis, const Common& com, const std::string& dump_h)
{
    const SimConfig cfg = resolve(com);
    SweepSpec spec;
    spec.axis = axis;
    spec.fixed = cfg;
    spec.schemes = schemes_of(cfg);
    spec.detector = cfg.detector == "ml" ? Detector::Ml : Detector::Mmse;
    spec.min_errors = cfg.min_errors;
    spec.max_trials = cfg.max_trials;
    std::string figure;
    std::vector<std::string> notes;
    switch (axis) {
    case SweepAxis::SnrDb:
        spec.values = cfg.snr_grid_db;
        figure = "fig5";
        break;
    case SweepAxis::NuMax:
        spec.values = cfg.doppler.nu_grid_hz;
        spec.fixed.tau_max_s = cfg.doppler.tau_max_s;
        spec.snr_db = cfg.doppler.snr_db;
        figure = "fig6";
        break;
    case SweepAxis::TauMax:
        spec.values = cfg.delay.tau_grid_s;
        spec.fixed.nu_max_hz = cfg.delay.nu_max_hz;
        spec.snr_db = cfg.delay.snr_db;
        figure = "fig6";
        break;
    case SweepAxis::Rolloff:
        break;
    }
    for (double v : spec.values) {
        SimConfig c = spec.fixed;
        if (axis == SweepAxis::NuMax)
            c.nu_max_hz = v;
        if (doppler_aliases(c.stats(), c.grid())) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "doppler_aliasing: nu_max=%.10g exceeds half the Doppler span", c.nu_max_hz);
            notes.push_back(buf);
        }
    }

    if (!dump_h.empty()) {
        RngStream rng(cfg.master_seed, trial_stream(StreamPurpose::Channel, 0));
        const ChannelRealization chan = generate_channel(spec.fixed.stats(), cfg.grid(), rng);
        std::ofstream out(dump_h);
        if (!out)
            throw std::runtime_error("cannot write " + dump_h);
        write_matrix_csv(out, build_effective_channel(chan, cfg.pulse(), cfg.grid()).H);
    }

    const auto curves = run_sweep(spec, workers_of(com));
    std::vector<std::string> h = header(cmd, cfg, axis_name(axis));
    h.insert(h.end(), notes.begin(), notes.end());
    std::ostringstream os;
    write_ber_csv(os, curves, cfg.master_seed, config_hash(cfg, cmd), h);
    emit(cfg, os.str());
    maybe_plot(cfg, figure);
    return kOk;
}

int run_rolloff(const Common& com, const std::string& axis_arg)
{
    const SimConfig cfg = resolve(com);
    SweepAxis axis;
    if (axis_arg == "doppler")
        axis = SweepAxis::NuMax;
    else if (axis_arg == "delay")
        axis = SweepAxis::TauMax;
    else
        throw UsageError("--axis must be doppler or delay");
    const auto curves = run_rolloff_study(cfg, axis, workers_of(com));
    std::ostringstream os;
    const std::string ctx = "rolloff-study|" + axis_arg;
    write_ber_csv(os, curves, cfg.master_seed, config_hash(cfg, ctx), header("rolloff-study", cfg, axis_arg));
    emit(cfg, os.str());
    maybe_plot(cfg, axis == SweepAxis::NuMax ? "fig7" : "fig8");
    return kOk;
}

std::vector<std::string> split_list(const std::string& s, const std::vector<std::string>& all)
{
    if (s == "all")
        return all;
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

int run_rank_profile(const Common& com, const std::string& system_arg, const std::string& profile_arg,
                     const std::string& pr_arg, const std::string& profile_file)
{
    const SimConfig cfg = resolve(com);
    DiversityOptions opts;
    opts.pulse = cfg.pulse();
    opts.pr_slope = cfg.pr_slope;

    struct Row {
        std::string system, profile;
    };
    std::vector<Row> rows;
    if (!profile_file.empty()) {
        for (const auto& s : split_list(system_arg, {"s1", "s2"}))
            rows.push_back({s, ""});
    } else if (system_arg == "all" && profile_arg == "all") {
        rows = {{"s1", "A"}, {"s1", "B"}, {"s2", "C"}, {"s2", "D"}};
    } else {
        for (const auto& s : split_list(system_arg, {"s1", "s2"}))
            for (const auto& p : split_list(profile_arg, {"A", "B", "C", "D"}))
                rows.push_back({s, p});
    }
    std::vector<bool> prs;
    if (pr_arg == "both")
        prs = {false, true};
    else if (pr_arg == "no")
        prs = {false};
    else if (pr_arg == "yes")
        prs = {true};
    else
        throw UsageError("--pr must be no, yes or both");

    std::ostringstream os;
    for (const auto& line : header("rank-profile", cfg, system_arg + "|" + profile_arg + "|" + pr_arg))
        os << "# " << line << '\n';
    os << "system,profile,with_pr,pairs,rank_1,rank_2,rank_3,rank_4,min_rank,tolerance_stable\n";
    for (const Row& r : rows) {
        const SystemSpec sys = builtin_system(r.system);
        const DDProfile prof = profile_file.empty() ? builtin_profile(r.profile) : load_profile(profile_file);
        for (bool pr : prs) {
            const RankHistogram h = rank_profile(sys, prof, pr, opts);
            std::int64_t total = 0;
            for (auto c : h.counts)
                total += c;
            os << sys.name << ',' << (prof.name.empty() ? r.profile : prof.name) << ',' << (pr ? "yes" : "no") << ','
               << total;
            for (int rank = 1; rank <= 4; ++rank) {
                os << ',';
                if (rank < static_cast<int>(h.counts.size()))
                    os << h.counts[rank];
                else
                    os << '-';
            }
            os << ',' << h.min_rank << ',' << (h.tolerance_stable ? "yes" : "no") << '\n';
        }
    }
    emit(cfg, os.str());
    return kOk;
}

int run_pep_bounds(const Common& com, const std::optional<std::string>& system_arg,
                   const std::optional<std::string>& profile_arg, const std::optional<bool>& with_pr,
                   bool bounds_only)
{
    SimConfig cfg = resolve(com);
    if (system_arg)
        cfg.bounds.system = *system_arg;
    if (profile_arg)
        cfg.bounds.profile = *profile_arg;
    if (with_pr)
        cfg.bounds.with_pr = *with_pr;
    if (com.min_errors)
        cfg.bounds.min_errors = *com.min_errors;
    if (com.max_trials)
        cfg.bounds.max_trials = *com.max_trials;
    if (bounds_only)
        cfg.bounds.max_trials = 0;
    const std::string tag = cfg.bounds.system + "-" + cfg.bounds.profile + (cfg.bounds.with_pr ? "+pr" : "");

    std::vector<BerCurve> curves;
    BerCurve up, lo;
    up.scheme = "upper[" + tag + "]";
    lo.scheme = "lower[" + tag + "]";
    up.axis_name = lo.axis_name = "snr_db";
    std::vector<double> upper, lower;
    if (bounds_only) {
        const SystemSpec sys = builtin_system(cfg.bounds.system);
        DiversityOptions opts;
        opts.pulse = cfg.pulse();
        opts.pr_slope = cfg.pr_slope;
        const BerBounds b = ber_bounds(sys, builtin_profile(cfg.bounds.profile), cfg.bounds.snr_grid_db,
                                       cfg.bounds.with_pr, opts);
        upper = b.upper;
        lower = b.lower;
    } else {
        if (cfg.bounds.max_trials < 1)
            throw ConfigError("bounds.max_trials", "must be >= 1");
        OverlayResult r = run_bound_overlay(cfg, cfg.bounds, workers_of(com));
        r.sim.scheme = "sim[" + tag + "]";
        curves.push_back(r.sim);
        upper = r.upper;
        lower = r.lower;
    }
    for (std::size_t i = 0; i < cfg.bounds.snr_grid_db.size(); ++i) {
        BerPoint p;
        p.axis_value = p.snr_db = cfg.bounds.snr_grid_db[i];
        p.ber = upper[i];
        up.points.push_back(p);
        p.ber = lower[i];
        lo.points.push_back(p);
    }
    curves.push_back(up);
    curves.push_back(lo);
    std::ostringstream os;
    write_ber_csv(os, curves, cfg.master_seed, config_hash(cfg, "pep-bounds|" + tag),
                  header("pep-bounds", cfg, tag));
    emit(cfg, os.str());
    maybe_plot(cfg, cfg.bounds.with_pr ? "fig3" : "fig2");
    return kOk;
}

int run_verify(const Common& com)
{
    const SimConfig cfg = resolve(com);
    bool ok = true;
    std::ostringstream os;
    for (const auto& r : run_verify_suite(cfg.master_seed)) {
        os << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << '\n';
        ok = ok && r.passed;
    }
    std::cout << os.str();
    if (!ok) {
        error_line("verification", "", "one or more identities failed");
        return kVerifyFailed;
    }
    return kOk;
}

int run_bench(const Common& com, const std::vector<int>& sizes, int reps)
{
    const SimConfig cfg = resolve(com);
    std::ostringstream os;
    os << "# zakotfs bench-transforms (wall-clock; not reproducible byte for byte)\n";
    os << "K,L,dzt_seconds,sfft_seconds,ratio\n";
    for (int n : sizes) {
        const TransformTiming t = transform_cost_benchmark(n, n, reps);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%d,%d,%.6e,%.6e,%.4f\n", n, n, t.dzt_seconds, t.sfft_seconds,
                      t.sfft_seconds / t.dzt_seconds);
        os << buf;
    }
    emit(cfg, os.str());
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"zakotfs: Zak-transform OTFS link simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "zakotfs 0.1.0");

    Common com;
    std::string dump_h;

    auto* snr = app.add_subcommand("ber-vs-snr", "BER against SNR for each scheme");
    add_common(snr, com, true);
    snr->add_option("--scheme", com.scheme, "dzt | twostep | ofdm | all (default: run.schemes)");
    snr->add_option("--dump-h", dump_h, "Write the DZT-OTFS H of trial 0 as row,col,re,im CSV");

    auto* dop = app.add_subcommand("ber-vs-doppler", "BER against maximum Doppler");
    add_common(dop, com, true);
    dop->add_option("--scheme", com.scheme, "dzt | twostep | ofdm | all");

    auto* del = app.add_subcommand("ber-vs-delay", "BER against maximum delay");
    add_common(del, com, true);
    del->add_option("--scheme", com.scheme, "dzt | twostep | ofdm | all");

    std::string axis = "doppler";
    auto* roll = app.add_subcommand("rolloff-study", "DZT-OTFS BER for several roll-off factors");
    add_common(roll, com, true);
    roll->add_option("--axis", axis, "doppler | delay")->check(CLI::IsMember({"doppler", "delay"}));

    std::string rp_system = "all", rp_profile = "all", rp_pr = "both", rp_file;
    auto* rank = app.add_subcommand("rank-profile", "Rank histogram of symbol difference matrices");
    add_common(rank, com, false);
    rank->add_option("--system", rp_system, "s1 | s2 | all");
    rank->add_option("--profile", rp_profile, "A | B | C | D | all (comma lists accepted)");
    rank->add_option("--pr", rp_pr, "no | yes | both")->check(CLI::IsMember({"no", "yes", "both"}));
    rank->add_option("--profile-file", rp_file, "JSON profile instead of a built-in one");

    std::optional<std::string> pb_system, pb_profile;
    std::optional<bool> pb_pr;
    bool pb_only = false;
    auto* pep = app.add_subcommand("pep-bounds", "Union bounds with simulated ML BER");
    add_common(pep, com, true);
    pep->add_option("--system", pb_system, "s1 | s2")->check(CLI::IsMember({"s1", "s2"}));
    pep->add_option("--profile", pb_profile, "A | B | C | D")->check(CLI::IsMember({"A", "B", "C", "D"}));
    pep->add_flag("--pr,!--no-pr", pb_pr, "Apply phase rotation");
    pep->add_flag("--bounds-only", pb_only, "Skip the simulation");

    auto* ver = app.add_subcommand("verify", "Run the identity and oracle suite");
    add_common(ver, com, false);

    std::vector<int> sizes{64, 128, 256};
    int reps = 15;
    auto* bench = app.add_subcommand("bench-transforms", "Time DZT against SFFT frame transforms");
    add_common(bench, com, false);
    bench->add_option("--sizes", sizes, "K = L values (powers of two)")->delimiter(',');
    bench->add_option("--reps", reps, "Repetitions (median is reported)")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        error_line("usage", "", e.what());
        return kUsage;
    }

    try {
        if (snr->parsed())
            return run_ber("ber-vs-snr", SweepAxis::SnrDb, com, dump_h);
        if (dop->parsed())
            return run_ber("ber-vs-doppler", SweepAxis::NuMax, com, "");
        if (del->parsed())
            return run_ber("ber-vs-delay", SweepAxis::TauMax, com, "");
        if (roll->parsed())
            return run_rolloff(com, axis);
        if (rank->parsed())
            return run_rank_profile(com, rp_system, rp_profile, rp_pr, rp_file);
        if (pep->parsed())
            return run_pep_bounds(com, pb_system, pb_profile, pb_pr, pb_only);
        if (ver->parsed())
            return run_verify(com);
        if (bench->parsed())
            return run_bench(com, sizes, reps);
    } catch (const UsageError& e) {
        error_line("usage", "", e.what());
        return kUsage;
    } catch (const ConfigError& e) {
        error_line("validation", e.field(), e.what());
        return kValidation;
    } catch (const std::invalid_argument& e) {
        error_line("validation", "", e.what());
        return kValidation;
    } catch (const std::exception& e) {
        error_line("runtime", "", e.what());
        return kValidation;
    }
    return kUsage;
}
