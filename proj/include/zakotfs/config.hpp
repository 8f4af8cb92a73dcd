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

#include "zakotfs/montecarlo.hpp"

#include <stdexcept>
#include <string>

namespace zakotfs {

/// Config problem tied to a field path such as "pulse.rolloff".
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(field)
    {
    }
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Parses a JSON config. Missing keys keep their defaults, unknown keys are
/// rejected, and the result is validated. Relative profile paths resolve
/// against base_dir.
SimConfig parse_config(const std::string& text, const std::string& base_dir = "");
SimConfig load_config(const std::string& path);

/// Canonical JSON (sorted keys). parse_config(emit_config(c)) == c.
std::string emit_config(const SimConfig& cfg, bool pretty = true);

/// FNV-1a of the compact config plus a context string (subcommand, flags).
std::string config_hash(const SimConfig& cfg, const std::string& context);

bool operator==(const SimConfig& a, const SimConfig& b);

} // namespace zakotfs
