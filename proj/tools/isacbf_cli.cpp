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
//
// Command-line front end. Exit codes are a total function of the outcome
// class: 0 success, 1 I/O or usage failure, 2 config parse error (nothing
// written), 3 infeasible scenario, 4 non-convergence (solver breakdown or
// iteration budget exhausted). `validate` exits 0 iff all checks pass, 1
// otherwise.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isacbf/experiments.hpp"
#include "isacbf/units.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNonConvergence = 4;

namespace fs = std::filesystem;

struct GlobalOptions {
    std::string config;
    std::string output_dir = ".";
    int workers = 1;
    isacbf::IRMParams params;
};

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

int exit_code_for(const std::vector<isacbf::SweepRow>& rows) {
    bool all_ok = true;
    bool any_infeasible = false;
    for (const auto& row : rows) {
        all_ok = all_ok && row.converged;
        any_infeasible = any_infeasible || row.status == isacbf::conic::SolveStatus::infeasible;
    }
    if (all_ok)
        return kExitSuccess;
    return any_infeasible ? kExitInfeasible : kExitNonConvergence;
}

void write_row_records(const std::vector<isacbf::SweepRow>& rows, const std::string& dir,
                       const std::function<std::string(const isacbf::SweepRow&)>& file_name) {
    for (const auto& row : rows)
        if (row.record.has_value())
            isacbf::atomic_write_file(join(dir, file_name(row)),
                                      isacbf::run_record_to_json(*row.record));
}

int cmd_solve(const GlobalOptions& opt) {
    const isacbf::Scenario scenario = isacbf::load_scenario(opt.config);
    const isacbf::RunRecord record = isacbf::run_scenario(scenario, opt.params);

    isacbf::atomic_write_file(join(opt.output_dir, "record.json"),
                              isacbf::run_record_to_json(record));

    const isacbf::IRMResult& result = record.result;
    if (result.sdr_status == isacbf::conic::SolveStatus::infeasible) {
        std::cerr << "scenario is infeasible\n";
        return kExitInfeasible;
    }
    if (result.sdr_status != isacbf::conic::SolveStatus::optimal || !result.converged) {
        std::cerr << "run did not converge (relaxation status: "
                  << isacbf::conic::to_string(result.sdr_status)
                  << ", penalized iterations: " << result.iterations << ")\n";
        return kExitNonConvergence;
    }

    const std::vector<double> grid = isacbf::default_angle_grid();
    isacbf::atomic_write_file(join(opt.output_dir, "beampattern_sdr.csv"),
                              isacbf::beampattern_csv(result.sdr_set, scenario.array, grid));
    isacbf::atomic_write_file(join(opt.output_dir, "beampattern_irm.csv"),
                              isacbf::beampattern_csv(result.set, scenario.array, grid));
    isacbf::atomic_write_file(join(opt.output_dir, "irm_trace.csv"),
                              isacbf::iteration_trace_csv(result));

    std::cout << "power " << isacbf::dbm_string(result.final_power_mw) << " dBm ("
              << isacbf::format_number(result.final_power_mw) << " mW), relaxation bound "
              << isacbf::dbm_string(result.sdr_power_mw) << " dBm, " << result.iterations
              << " penalized iterations\n";
    return kExitSuccess;
}

int cmd_sweep_antennas(const GlobalOptions& opt) {
    const isacbf::ExperimentSpec spec = isacbf::load_experiment(opt.config);
    if (spec.kind != isacbf::ExperimentKind::antenna_sweep)
        throw isacbf::ParseError("expected an experiment of kind 'antenna-sweep'");

    const auto rows =
        isacbf::sweep_antennas(spec.base, spec.antenna_counts, opt.params, opt.workers);
    isacbf::atomic_write_file(join(opt.output_dir, "antenna_sweep.csv"),
                              isacbf::antenna_sweep_csv(rows));
    write_row_records(rows, opt.output_dir, [](const isacbf::SweepRow& row) {
        return "record_N" + std::to_string(static_cast<int>(row.swept_value)) + ".json";
    });
    std::cout << isacbf::antenna_sweep_csv(rows);
    return exit_code_for(rows);
}

int cmd_sweep_distance(const GlobalOptions& opt) {
    const isacbf::ExperimentSpec spec = isacbf::load_experiment(opt.config);
    if (spec.kind != isacbf::ExperimentKind::distance_sweep)
        throw isacbf::ParseError("expected an experiment of kind 'distance-sweep'");

    const auto rows = isacbf::sweep_distance(spec.base, spec.distances_m, spec.beam_widths_deg,
                                             spec.fixed_distance_m, opt.params, opt.workers);
    isacbf::atomic_write_file(join(opt.output_dir, "distance_sweep.csv"),
                              isacbf::distance_sweep_csv(rows));
    write_row_records(rows, opt.output_dir, [](const isacbf::SweepRow& row) {
        return "record_" + row.label + "_d" + isacbf::format_number(row.swept_value) + "_w" +
               isacbf::format_number(row.beam_width_deg) + ".json";
    });
    std::cout << isacbf::distance_sweep_csv(rows);
    return exit_code_for(rows);
}

int cmd_angle_sets(const GlobalOptions& opt) {
    const isacbf::ExperimentSpec spec = isacbf::load_experiment(opt.config);
    if (spec.kind != isacbf::ExperimentKind::angle_sets)
        throw isacbf::ParseError("expected an experiment of kind 'angle-sets'");

    const auto rows = isacbf::run_angle_sets(spec.base, spec.angle_sets, opt.params, opt.workers);
    isacbf::atomic_write_file(join(opt.output_dir, "angle_sets.csv"),
                              isacbf::angle_sets_csv(rows));
    write_row_records(rows, opt.output_dir, [](const isacbf::SweepRow& row) {
        return "record_set_" + row.label + ".json";
    });
    for (const auto& row : rows)
        if (row.record.has_value() && row.record->result.converged)
            isacbf::atomic_write_file(
                join(opt.output_dir, "decomposition_" + row.label + ".csv"),
                isacbf::beampattern_csv(row.record->result.set, row.record->scenario.array,
                                        isacbf::default_angle_grid()));
    std::cout << isacbf::angle_sets_csv(rows);
    return exit_code_for(rows);
}

int cmd_validate(const std::string& record_path) {
    const isacbf::RunRecord record = isacbf::load_run_record(record_path);
    const isacbf::ValidationReport report = isacbf::validate_solution(record);
    std::cout << report.to_text();
    return report.pass ? kExitSuccess : kExitFailure;
}

int cmd_plot(const std::vector<std::string>& csvs, const std::string& output) {
    isacbf::atomic_write_file(output, isacbf::plot_script(csvs));
    std::cout << "wrote " << output << "\n";
    return kExitSuccess;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum-power transmit beamforming for joint radar/communication downlinks"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions opt;
    app.add_option("--config", opt.config, "Scenario or experiment JSON document");
    app.add_option("--output-dir", opt.output_dir, "Directory for CSVs and run records")
        ->capture_default_str();
    app.add_option("--workers", opt.workers, "Concurrent runs in sweeps")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--gap-tol", opt.params.solver.gap_tol, "Solver relative duality-gap tolerance")
        ->capture_default_str();
    app.add_option("--feas-tol", opt.params.solver.feas_tol, "Solver feasibility tolerance")
        ->capture_default_str();
    app.add_option("--solver-max-iterations", opt.params.solver.max_iterations,
                   "Interior-point iteration budget")
        ->capture_default_str();
    app.add_option("--irm-max-iterations", opt.params.max_iterations,
                   "Penalized re-solve budget for rank minimization")
        ->capture_default_str();

    auto* solve = app.add_subcommand("solve", "Run one scenario; write record and beampatterns");
    auto* sweep_n = app.add_subcommand("sweep-antennas", "Power vs antenna count");
    auto* sweep_d = app.add_subcommand("sweep-distance", "Power vs user/target distance");
    auto* sets = app.add_subcommand("angle-sets", "Compare named user/target placements");

    std::string record_path;
    auto* validate = app.add_subcommand("validate", "Re-check all constraints of a run record");
    validate->add_option("record", record_path, "Run record JSON")->required();

    std::vector<std::string> plot_csvs;
    std::string plot_output = "plots.gp";
    auto* plot = app.add_subcommand("plot", "Emit a gnuplot script for existing CSVs");
    plot->add_option("csvs", plot_csvs, "CSV files to render")->required();
    plot->add_option("--script-output", plot_output, "Plot script path")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(validate))
            return cmd_validate(record_path);
        if (app.got_subcommand(plot))
            return cmd_plot(plot_csvs, plot_output);

        if (opt.config.empty()) {
            std::cerr << "--config is required for this subcommand\n";
            return kExitFailure;
        }
        if (app.got_subcommand(solve))
            return cmd_solve(opt);
        if (app.got_subcommand(sweep_n))
            return cmd_sweep_antennas(opt);
        if (app.got_subcommand(sweep_d))
            return cmd_sweep_distance(opt);
        if (app.got_subcommand(sets))
            return cmd_angle_sets(opt);
    } catch (const isacbf::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
