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

#include <optional>
#include <string>
#include <vector>

#include "isacbf/irm.hpp"
#include "isacbf/scenario_io.hpp"

namespace isacbf {

enum class ExperimentKind { single, antenna_sweep, distance_sweep, angle_sets, decomposition };

// One named user/target placement for the angle-set comparison family.
struct AngleSet {
    std::string name;
    std::vector<double> user_angles_deg;
    std::vector<double> target_angles_deg;
};

// Parsed experiment document: a base scenario plus the kind-specific sweep
// lists. Unknown keys are rejected, sweep lists must be nonempty for their
// kind.
struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::single;
    Scenario base;
    std::vector<int> antenna_counts;       // antenna_sweep
    std::vector<double> distances_m;       // distance_sweep
    std::vector<double> beam_widths_deg;   // distance_sweep
    double fixed_distance_m = 10.0;        // distance_sweep: the non-swept entity
    std::vector<AngleSet> angle_sets;      // angle_sets

    void validate() const;
};

ExperimentSpec parse_experiment(const std::string& json_text);
ExperimentSpec load_experiment(const std::string& path);

// Everything needed to audit one solve after the fact. Serializes to JSON
// with complex matrices as nested arrays of [re, im] pairs; reloads
// losslessly (shortest round-trip float form).
struct RunRecord {
    Scenario scenario;
    IRMResult result;
    std::vector<double> user_rates_bps_hz;
    double beam_matching_error = 0.0;
    std::string created_at; // ISO 8601 UTC; informational only, never in CSVs
};

RunRecord make_run_record(const Scenario& scenario, const IRMResult& result);
std::string run_record_to_json(const RunRecord& record);
RunRecord parse_run_record(const std::string& json_text);
RunRecord load_run_record(const std::string& path);

// Fixed-format helpers shared by all CSV emitters: 9 significant digits,
// LF endings, "-inf" for nonpositive powers rendered in dBm.
std::string format_number(double value);

// Runs one scenario end to end.
RunRecord run_scenario(const Scenario& scenario, const IRMParams& params = {});

// Sweep rows. A row with status != optimal carries the failure class instead
// of a power (power fields are NaN and render as the status string).
struct SweepRow {
    std::string label;      // "user"/"target" for distance sweeps, set name otherwise
    double swept_value = 0; // N or distance
    double beam_width_deg = 0;
    double power_mw = 0;
    int iterations = 0;
    bool converged = false;
    conic::SolveStatus status = conic::SolveStatus::numerical_failure;
    std::optional<RunRecord> record;
};

// One run per antenna count; per-run failures are recorded per row and the
// sweep continues. CSV header: `N,power_dBm,iters`.
std::vector<SweepRow> sweep_antennas(const Scenario& base, const std::vector<int>& antenna_counts,
                                     const IRMParams& params = {}, int workers = 1);
std::string antenna_sweep_csv(const std::vector<SweepRow>& rows);

// Sweeps target distance (user pinned at fixed_distance_m) and then user
// distance (target pinned), for each beam width. Requires exactly one user
// and one target in the base scenario. CSV header:
// `swept_entity,distance_m,delta_deg,power_dBm`.
std::vector<SweepRow> sweep_distance(const Scenario& base, const std::vector<double>& distances_m,
                                     const std::vector<double>& beam_widths_deg,
                                     double fixed_distance_m, const IRMParams& params = {},
                                     int workers = 1);
std::string distance_sweep_csv(const std::vector<SweepRow>& rows);

// Runs each named placement on the base scenario (users/targets replaced,
// distances and everything else inherited). CSV header:
// `set,power_dBm,iters`.
std::vector<SweepRow> run_angle_sets(const Scenario& base, const std::vector<AngleSet>& sets,
                                     const IRMParams& params = {}, int workers = 1);
std::string angle_sets_csv(const std::vector<SweepRow>& rows);

// Re-evaluates every design constraint of a stored record with the metrics
// module (rates, pattern window, PSD, rank-one consistency, power bookkeeping)
// and reports each margin.
struct ValidationCheck {
    std::string name;
    double margin = 0.0; // >= 0 means satisfied
    bool pass = false;
};
struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool pass = false;
    std::string to_text() const;
};
ValidationReport validate_solution(const RunRecord& record);

// Emits a standalone gnuplot script rendering the given CSVs (beampattern
// files as dBm-vs-degrees panels, sweep files as power curves). Never
// executes it; regeneration from identical inputs is byte-identical.
std::string plot_script(const std::vector<std::string>& csv_paths);

} // namespace isacbf
