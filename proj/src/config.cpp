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

#include "zakotfs/config.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace zakotfs {

using nlohmann::json;

namespace {

class Section {
public:
    Section(const json& j, std::string path, std::set<std::string> keys) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!keys.count(it.key()))
                throw ConfigError(field(it.key()), "unknown key");
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    bool has(const std::string& key) const { return j_.contains(key); }
    const json& at(const std::string& key) const { return j_.at(key); }

    void get(const std::string& key, double& out) const
    {
        if (!has(key))
            return;
        const json& v = j_.at(key);
        if (!v.is_number())
            throw ConfigError(field(key), "expected a number");
        out = v.get<double>();
    }
    void get(const std::string& key, int& out) const
    {
        std::int64_t v = out;
        get(key, v);
        if (v < INT32_MIN || v > INT32_MAX)
            throw ConfigError(field(key), "out of range");
        out = static_cast<int>(v);
    }
    void get(const std::string& key, std::int64_t& out) const
    {
        if (!has(key))
            return;
        const json& v = j_.at(key);
        if (!v.is_number_integer())
            throw ConfigError(field(key), "expected an integer");
        out = v.get<std::int64_t>();
    }
    void get(const std::string& key, std::uint64_t& out) const
    {
        if (!has(key))
            return;
        const json& v = j_.at(key);
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
            throw ConfigError(field(key), "expected a nonnegative integer");
        out = v.get<std::uint64_t>();
    }
    void get(const std::string& key, bool& out) const
    {
        if (!has(key))
            return;
        const json& v = j_.at(key);
        if (!v.is_boolean())
            throw ConfigError(field(key), "expected true or false");
        out = v.get<bool>();
    }
    void get(const std::string& key, std::string& out) const
    {
        if (!has(key))
            return;
        const json& v = j_.at(key);
        if (!v.is_string())
            throw ConfigError(field(key), "expected a string");
        out = v.get<std::string>();
    }
    void get(const std::string& key, std::vector<double>& out) const
    {
        if (!has(key))
            return;
        const json& v = j_.at(key);
        if (!v.is_array())
            throw ConfigError(field(key), "expected an array of numbers");
        std::vector<double> r;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number())
                throw ConfigError(field(key) + "[" + std::to_string(i) + "]", "expected a number");
            r.push_back(v[i].get<double>());
        }
        out = r;
    }
    void get(const std::string& key, std::vector<std::string>& out) const
    {
        if (!has(key))
            return;
        const json& v = j_.at(key);
        if (!v.is_array())
            throw ConfigError(field(key), "expected an array of strings");
        std::vector<std::string> r;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_string())
                throw ConfigError(field(key) + "[" + std::to_string(i) + "]", "expected a string");
            r.push_back(v[i].get<std::string>());
        }
        out = r;
    }

private:
    const json& j_;
    std::string path_;
};

std::string field_of(const std::invalid_argument& e)
{
    const std::string m = e.what();
    const auto pos = m.find(": ");
    return pos == std::string::npos ? std::string("<config>") : m.substr(0, pos);
}

} // namespace

SimConfig parse_config(const std::string& text, const std::string& base_dir)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
    }
    SimConfig c;
    Section r(root, "", {"grid", "pulse", "channel", "run", "sweeps", "bounds", "output"});

    if (r.has("grid")) {
        Section s(r.at("grid"), "grid", {"K", "L", "bandwidth_hz", "carrier_hz"});
        s.get("K", c.K);
        s.get("L", c.L);
        s.get("bandwidth_hz", c.bandwidth_hz);
        s.get("carrier_hz", c.carrier_hz);
    }
    if (r.has("pulse")) {
        Section s(r.at("pulse"), "pulse", {"rolloff", "half_width_taps"});
        s.get("rolloff", c.rolloff);
        s.get("half_width_taps", c.half_width_taps);
    }
    if (r.has("channel")) {
        Section s(r.at("channel"), "channel", {"P", "tau_max_s", "nu_max_hz", "fractional", "profile_file"});
        s.get("P", c.P);
        s.get("tau_max_s", c.tau_max_s);
        s.get("nu_max_hz", c.nu_max_hz);
        s.get("fractional", c.fractional);
        s.get("profile_file", c.profile_file);
    }
    if (r.has("run")) {
        Section s(r.at("run"), "run",
                  {"master_seed", "min_errors", "max_trials", "detector", "schemes", "snr_grid_db", "alphabet",
                   "phase_rotation", "pr_slope", "ofdm_equalizer", "batch_size"});
        s.get("master_seed", c.master_seed);
        s.get("min_errors", c.min_errors);
        s.get("max_trials", c.max_trials);
        s.get("detector", c.detector);
        s.get("schemes", c.schemes);
        s.get("snr_grid_db", c.snr_grid_db);
        s.get("alphabet", c.alphabet);
        s.get("phase_rotation", c.phase_rotation);
        s.get("pr_slope", c.pr_slope);
        s.get("ofdm_equalizer", c.ofdm_equalizer);
        s.get("batch_size", c.batch_size);
    }
    if (r.has("sweeps")) {
        Section s(r.at("sweeps"), "sweeps", {"doppler", "delay", "rolloff"});
        if (s.has("doppler")) {
            Section d(s.at("doppler"), "sweeps.doppler", {"nu_grid_hz", "tau_max_s", "snr_db"});
            d.get("nu_grid_hz", c.doppler.nu_grid_hz);
            d.get("tau_max_s", c.doppler.tau_max_s);
            d.get("snr_db", c.doppler.snr_db);
        }
        if (s.has("delay")) {
            Section d(s.at("delay"), "sweeps.delay", {"tau_grid_s", "nu_max_hz", "snr_db"});
            d.get("tau_grid_s", c.delay.tau_grid_s);
            d.get("nu_max_hz", c.delay.nu_max_hz);
            d.get("snr_db", c.delay.snr_db);
        }
        if (s.has("rolloff")) {
            Section d(s.at("rolloff"), "sweeps.rolloff",
                      {"gammas", "snr_db", "nu_grid_hz", "tau_max_s", "tau_grid_s", "nu_max_hz"});
            d.get("gammas", c.rolloff_study.gammas);
            d.get("snr_db", c.rolloff_study.snr_db);
            d.get("nu_grid_hz", c.rolloff_study.nu_grid_hz);
            d.get("tau_max_s", c.rolloff_study.tau_max_s);
            d.get("tau_grid_s", c.rolloff_study.tau_grid_s);
            d.get("nu_max_hz", c.rolloff_study.nu_max_hz);
        }
    }
    if (r.has("bounds")) {
        Section s(r.at("bounds"), "bounds",
                  {"system", "profile", "snr_grid_db", "with_pr", "min_errors", "max_trials"});
        s.get("system", c.bounds.system);
        s.get("profile", c.bounds.profile);
        s.get("snr_grid_db", c.bounds.snr_grid_db);
        s.get("with_pr", c.bounds.with_pr);
        s.get("min_errors", c.bounds.min_errors);
        s.get("max_trials", c.bounds.max_trials);
    }
    if (r.has("output")) {
        Section s(r.at("output"), "output", {"csv_path", "plot_script"});
        s.get("csv_path", c.csv_path);
        s.get("plot_script", c.plot_script);
    }

    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        const std::string m = e.what();
        const std::string f = field_of(e);
        throw ConfigError(f, m.substr(std::min(m.size(), f.size() + 2)));
    }

    if (!c.profile_file.empty()) {
        std::filesystem::path p(c.profile_file);
        if (p.is_relative() && !base_dir.empty())
            p = std::filesystem::path(base_dir) / p;
        if (!std::filesystem::exists(p))
            throw ConfigError("channel.profile_file", "file not found: " + p.string());
        c.profile_file = p.string();
    }
    return c;
}

SimConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("<file>", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::filesystem::path(path).parent_path().string());
}

std::string emit_config(const SimConfig& c, bool pretty)
{
    json j;
    j["grid"] = {{"K", c.K}, {"L", c.L}, {"bandwidth_hz", c.bandwidth_hz}, {"carrier_hz", c.carrier_hz}};
    j["pulse"] = {{"rolloff", c.rolloff}, {"half_width_taps", c.half_width_taps}};
    j["channel"] = {{"P", c.P},
                    {"tau_max_s", c.tau_max_s},
                    {"nu_max_hz", c.nu_max_hz},
                    {"fractional", c.fractional},
                    {"profile_file", c.profile_file}};
    j["run"] = {{"master_seed", c.master_seed},
                {"min_errors", c.min_errors},
                {"max_trials", c.max_trials},
                {"detector", c.detector},
                {"schemes", c.schemes},
                {"snr_grid_db", c.snr_grid_db},
                {"alphabet", c.alphabet},
                {"phase_rotation", c.phase_rotation},
                {"pr_slope", c.pr_slope},
                {"ofdm_equalizer", c.ofdm_equalizer},
                {"batch_size", c.batch_size}};
    j["sweeps"]["doppler"] = {
        {"nu_grid_hz", c.doppler.nu_grid_hz}, {"tau_max_s", c.doppler.tau_max_s}, {"snr_db", c.doppler.snr_db}};
    j["sweeps"]["delay"] = {
        {"tau_grid_s", c.delay.tau_grid_s}, {"nu_max_hz", c.delay.nu_max_hz}, {"snr_db", c.delay.snr_db}};
    j["sweeps"]["rolloff"] = {{"gammas", c.rolloff_study.gammas},
                              {"snr_db", c.rolloff_study.snr_db},
                              {"nu_grid_hz", c.rolloff_study.nu_grid_hz},
                              {"tau_max_s", c.rolloff_study.tau_max_s},
                              {"tau_grid_s", c.rolloff_study.tau_grid_s},
                              {"nu_max_hz", c.rolloff_study.nu_max_hz}};
    j["bounds"] = {{"system", c.bounds.system},
                   {"profile", c.bounds.profile},
                   {"snr_grid_db", c.bounds.snr_grid_db},
                   {"with_pr", c.bounds.with_pr},
                   {"min_errors", c.bounds.min_errors},
                   {"max_trials", c.bounds.max_trials}};
    j["output"] = {{"csv_path", c.csv_path}, {"plot_script", c.plot_script}};
    return pretty ? j.dump(2) + "\n" : j.dump();
}

std::string config_hash(const SimConfig& cfg, const std::string& context)
{
    SimConfig c = cfg;
    // output locations do not change results
    c.csv_path.clear();
    c.plot_script.clear();
    return hex64(fnv1a64(emit_config(c, false) + "|" + context));
}

bool operator==(const SimConfig& a, const SimConfig& b)
{
    return emit_config(a, false) == emit_config(b, false);
}

} // namespace zakotfs
