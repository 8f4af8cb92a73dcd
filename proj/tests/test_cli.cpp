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

#include "doctest.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args)
{
    const std::string cmd = std::string(ZAKOTFS_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), n);
    const int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch()
{
    const fs::path d = fs::temp_directory_path() / "zakotfs_cli_test";
    fs::create_directories(d);
    return d;
}

const char* kSmall = R"({
  "grid": {"K": 4, "L": 4},
  "channel": {"tau_max_s": 3.3333333333333335e-05, "nu_max_hz": 4000},
  "run": {"snr_grid_db": [0, 10], "min_errors": 20, "max_trials": 48},
  "sweeps": {
    "doppler": {"nu_grid_hz": [500, 4000]},
    "delay": {"tau_grid_s": [1.6666666666666667e-05, 5e-05]},
    "rolloff": {"gammas": [0.1, 0.9], "nu_grid_hz": [500, 4000], "tau_grid_s": [1.6666666666666667e-05]}
  }
})";

} // namespace

TEST_CASE("verify passes")
{
    const Run r = cli("verify");
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("rank profile row")
{
    const Run r = cli("rank-profile --system s1 --profile A --pr no");
    CHECK(r.code == 0);
    CHECK(r.out.find("s1,A,no,240,32,208,") != std::string::npos);
}

TEST_CASE("usage and validation exit codes")
{
    CHECK(cli("").code == 1);
    CHECK(cli("ber-vs-snr --no-such-flag").code == 1);
    CHECK(cli("frobnicate").code == 1);
    const fs::path d = scratch();
    std::ofstream(d / "bad.json") << R"({"pulse": {"rolloff": 1.5}})";
    const Run r = cli("ber-vs-snr -c " + (d / "bad.json").string());
    CHECK(r.code == 2);
    CHECK(r.out.find(R"("field":"pulse.rolloff")") != std::string::npos);
    CHECK(cli("ber-vs-snr --scheme fbmc").code == 2);
    CHECK(cli("ber-vs-snr -c /no/such/file.json").code == 2);
}

TEST_CASE("sweep output is byte identical across runs and worker counts")
{
    const fs::path d = scratch();
    std::ofstream(d / "small.json") << kSmall;
    const std::string c = " -c " + (d / "small.json").string();
    for (const std::string sub : {"ber-vs-snr --scheme all", "ber-vs-doppler --scheme all",
                                  "ber-vs-delay --scheme dzt", "rolloff-study --axis doppler"}) {
        REQUIRE(cli(sub + c + " --seed 7 -j 1 -o " + (d / "a.csv").string()).code == 0);
        REQUIRE(cli(sub + c + " --seed 7 -j 1 -o " + (d / "b.csv").string()).code == 0);
        REQUIRE(cli(sub + c + " --seed 7 -j 3 -o " + (d / "c.csv").string()).code == 0);
        const std::string a = slurp(d / "a.csv");
        CHECK(!a.empty());
        CHECK(a == slurp(d / "b.csv"));
        CHECK(a == slurp(d / "c.csv"));
    }
    // the seed lands in every row
    const std::string a = slurp(d / "a.csv");
    CHECK(a.find("scheme,axis_name,axis_value,snr_db,trials,bit_errors,ber,ci_halfwidth,seed,config_hash") !=
          std::string::npos);
    CHECK(a.find(",7,") != std::string::npos);
}

TEST_CASE("channel dump and plot script")
{
    const fs::path d = scratch();
    std::ofstream(d / "small.json") << kSmall;
    const Run r = cli("ber-vs-snr --scheme dzt -c " + (d / "small.json").string() + " -o " +
                      (d / "o.csv").string() + " --dump-h " + (d / "h.csv").string() +
                      " --plot-script " + (d / "fig.py").string());
    REQUIRE(r.code == 0);
    const std::string h = slurp(d / "h.csv");
    CHECK(std::count(h.begin(), h.end(), '\n') == 16 * 16 + 1);
    const std::string py = slurp(d / "fig.py");
    CHECK(py.find("o.csv") != std::string::npos);
    CHECK(py.find("matplotlib") != std::string::npos);
}

TEST_CASE("pep bounds and bench output")
{
    const Run b = cli("pep-bounds --system s1 --profile A --bounds-only");
    CHECK(b.code == 0);
    CHECK(b.out.find("upper[") != std::string::npos);
    CHECK(b.out.find("lower[") != std::string::npos);
    const Run t = cli("bench-transforms --sizes 8 16 --reps 3");
    CHECK(t.code == 0);
    CHECK(t.out.find("K,L,dzt_seconds,sfft_seconds,ratio") != std::string::npos);
}
