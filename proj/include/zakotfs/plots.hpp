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

#include <string>

namespace zakotfs {

/// Self-contained matplotlib script that reads a BER CSV and draws one
/// figure: fig2 (bounds overlay), fig3 (with/without phase rotation),
/// fig5 (BER vs SNR), fig6 (BER vs Doppler), fig7/fig8 (roll-off vs Doppler
/// and delay). Throws std::invalid_argument for unknown names.
std::string plot_script(const std::string& figure, const std::string& csv_path);

void write_plot_script(const std::string& path, const std::string& figure, const std::string& csv_path);

} // namespace zakotfs
