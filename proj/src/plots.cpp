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

#include "zakotfs/plots.hpp"

#include <fstream>
#include <map>
#include <stdexcept>

namespace zakotfs {

namespace {

struct FigureText {
    const char* title;
    const char* xlabel;
    double xscale; // axis values are multiplied by this before plotting
};

const std::map<std::string, FigureText>& figures()
{
    static const std::map<std::string, FigureText> f{
        {"fig2", {"Simulated BER and union bounds (ML)", "SNR (dB)", 1.0}},
        {"fig3", {"BER with and without phase rotation (ML)", "SNR (dB)", 1.0}},
        {"fig5", {"BER vs SNR", "SNR (dB)", 1.0}},
        {"fig6", {"BER vs maximum Doppler", "nu_max (kHz)", 1e-3}},
        {"fig7", {"Roll-off: BER vs maximum Doppler", "nu_max (kHz)", 1e-3}},
        {"fig8", {"Roll-off: BER vs maximum delay", "tau_max (us)", 1e6}},
    };
    return f;
}

std::string py_string(const std::string& s)
{
    std::string out = "'";
    for (char c : s) {
        if (c == '\\' || c == '\'')
            out += '\\';
        out += c;
    }
    return out + "'";
}

} // namespace

std::string plot_script(const std::string& figure, const std::string& csv_path)
{
    auto it = figures().find(figure);
    if (it == figures().end())
        throw std::invalid_argument("unknown figure: " + figure);
    const FigureText& t = it->second;
    std::string s;
    s += "#!/usr/bin/env python3\n";
    s += "# Generated by zakotfs. Usage: python3 <this file> [out.png]\n";
    s += "import csv, sys\n";
    s += "import matplotlib\n";
    s += "matplotlib.use('Agg')\n";
    s += "import matplotlib.pyplot as plt\n\n";
    s += "CSV = " + py_string(csv_path) + "\n";
    s += "XSCALE = " + std::to_string(t.xscale) + "\n\n";
    s += "curves = {}\n";
    s += "with open(CSV) as fh:\n";
    s += "    rows = csv.DictReader(line for line in fh if not line.startswith('#'))\n";
    s += "    for r in rows:\n";
    s += "        c = curves.setdefault(r['scheme'], ([], []))\n";
    s += "        c[0].append(float(r['axis_value']) * XSCALE)\n";
    s += "        c[1].append(float(r['ber']))\n\n";
    s += "fig, ax = plt.subplots(figsize=(6.4, 4.4))\n";
    s += "for name, (x, y) in curves.items():\n";
    s += "    pts = [(a, b) for a, b in zip(x, y) if b > 0]\n";
    s += "    if not pts:\n";
    s += "        continue\n";
    s += "    style = '--' if name.startswith(('upper', 'lower')) else '-o'\n";
    s += "    ax.semilogy([p[0] for p in pts], [p[1] for p in pts], style, label=name, markersize=4)\n";
    s += "ax.set_xlabel(" + py_string(t.xlabel) + ")\n";
    s += "ax.set_ylabel('BER')\n";
    s += "ax.set_title(" + py_string(t.title) + ")\n";
    s += "ax.grid(True, which='both', alpha=0.3)\n";
    s += "ax.legend(fontsize=8)\n";
    s += "fig.tight_layout()\n";
    s += "fig.savefig(sys.argv[1] if len(sys.argv) > 1 else " + py_string(figure + ".png") + ", dpi=150)\n";
    return s;
}

void write_plot_script(const std::string& path, const std::string& figure, const std::string& csv_path)
{
    const std::string text = plot_script(figure, csv_path);
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

} // namespace zakotfs
