// SPDX-License-Identifier: Apache-2.0
//
// isacbf: minimum-power beamforming design for joint radar / communication downlinks
// Copyright (C) 2026 the isacbf authors
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

#include <stdexcept>
#include <string>

#include "isacbf/scene.hpp"

namespace isacbf {

// Malformed scenario/experiment documents: JSON syntax errors, unknown keys,
// missing fields, wrong types, or domain violations found at parse time.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// JSON scenario document. Angles in degrees, distances in meters, powers in
// dBm, gains in dB; unknown keys are rejected. See README for the schema.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path); // throws ParseError (also for I/O)

// Round-trip serialization (used to echo the scenario into run records).
std::string scenario_to_json(const Scenario& scenario);

// Atomic file write: content goes to a temp file in the target directory
// first, then renames over the destination, so readers never observe a
// partial file. Throws std::runtime_error on I/O failure.
void atomic_write_file(const std::string& path, const std::string& content);

} // namespace isacbf
