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
// Experiment drivers: sweeps over antenna counts, distances and angle
// placements, run records for post-hoc auditing, and the CSV / plot-script
// emitters. All CSV output is fixed-format (9 significant digits, LF) so
// reruns of identical inputs are byte-identical; wall-clock data stays in
// the JSON records only.

#include <atomic>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "isacbf/experiments.hpp"
#include "isacbf/units.hpp"

namespace isacbf {

using nlohmann::json;

namespace detail {
Scenario scenario_from_json_value(const json& j);
json scenario_json_value(const Scenario& s);
} // namespace detail

namespace {

[[noreturn]] void fail(const std::string& message) { throw ParseError(message); }

const char* kind_token(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::single: return "single";
    case ExperimentKind::antenna_sweep: return "antenna-sweep";
    case ExperimentKind::distance_sweep: return "distance-sweep";
    case ExperimentKind::angle_sets: return "angle-sets";
    case ExperimentKind::decomposition: return "decomposition";
    }
    return "?";
}

ExperimentKind kind_from_token(const std::string& token) {
    for (ExperimentKind k : {ExperimentKind::single, ExperimentKind::antenna_sweep,
                             ExperimentKind::distance_sweep, ExperimentKind::angle_sets,
                             ExperimentKind::decomposition})
        if (token == kind_token(k))
            return k;
    fail("unknown experiment kind '" + token + "'");
}

conic::SolveStatus status_from_token(const std::string& token) {
    for (conic::SolveStatus s :
         {conic::SolveStatus::optimal, conic::SolveStatus::infeasible,
          conic::SolveStatus::unbounded, conic::SolveStatus::max_iterations,
          conic::SolveStatus::numerical_failure})
        if (token == conic::to_string(s))
            return s;
    fail("unknown solver status '" + token + "'");
}

// Runs fn(0..count-1) on up to `workers` threads; results must be written to
// pre-sized slots so the output order never depends on scheduling.
void run_indexed(int count, int workers, const std::function<void(int)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
            fn(i);
    };
    std::vector<std::thread> pool;
    const int n = std::min(workers, count);
    pool.reserve(n);
    for (int t = 0; t < n; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
}

SweepRow run_one(const Scenario& scenario, const IRMParams& params, std::string label,
                 double swept_value) {
    SweepRow row;
    row.label = std::move(label);
    row.swept_value = swept_value;
    row.beam_width_deg = scenario.beam_width_deg;
    try {
        RunRecord record = run_scenario(scenario, params);
        const IRMResult& r = record.result;
        row.converged = r.converged;
        row.iterations = r.iterations;
        row.power_mw = r.converged ? r.final_power_mw : std::nan("");
        if (r.sdr_status != conic::SolveStatus::optimal)
            row.status = r.sdr_status;
        else
            row.status = r.converged ? conic::SolveStatus::optimal
                                     : conic::SolveStatus::max_iterations;
        row.record = std::move(record);
    } catch (const std::exception&) {
        row.status = conic::SolveStatus::numerical_failure;
        row.power_mw = std::nan("");
    }
    return row;
}

std::string power_cell(const SweepRow& row) {
    if (row.converged && std::isfinite(row.power_mw))
        return dbm_string(row.power_mw);
    return conic::to_string(row.status);
}

// --- run-record JSON helpers -------------------------------------------------

json matrix_to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array())
        fail(where + " must be an array of rows");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0)
        return Eigen::MatrixXcd(0, 0);
    const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j.at(static_cast<size_t>(r));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            fail(where + " is not rectangular");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const json& cell = row.at(static_cast<size_t>(c));
            if (!cell.is_array() || cell.size() != 2)
                fail(where + " entries must be [re, im] pairs");
            m(r, c) = {cell.at(0).get<double>(), cell.at(1).get<double>()};
        }
    }
    return m;
}

json vector_to_json(const Eigen::VectorXcd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back({v(i).real(), v(i).imag()});
    return out;
}

Eigen::VectorXcd vector_from_json(const json& j, const std::string& where) {
    if (!j.is_array())
        fail(where + " must be an array of [re, im] pairs");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const json& cell = j.at(static_cast<size_t>(i));
        if (!cell.is_array() || cell.size() != 2)
            fail(where + " entries must be [re, im] pairs");
        v(i) = {cell.at(0).get<double>(), cell.at(1).get<double>()};
    }
    return v;
}

json set_to_json(const BeamformerSet& set) {
    json j;
    j["user_covariances"] = json::array();
    for (const auto& w : set.user_covariances)
        j["user_covariances"].push_back(matrix_to_json(w));
    j["radar_covariance"] = matrix_to_json(set.radar_covariance);
    j["beamformers"] = json::array();
    for (const auto& w : set.beamformers)
        j["beamformers"].push_back(vector_to_json(w));
    return j;
}

BeamformerSet set_from_json(const json& j, const std::string& where) {
    BeamformerSet set;
    for (const auto& w : j.at("user_covariances"))
        set.user_covariances.push_back(matrix_from_json(w, where + ".user_covariances"));
    set.radar_covariance = matrix_from_json(j.at("radar_covariance"), where + ".radar_covariance");
    for (const auto& w : j.at("beamformers"))
        set.beamformers.push_back(vector_from_json(w, where + ".beamformers"));
    return set;
}

json report_to_json(const conic::SolverReport& r) {
    return {{"status", conic::to_string(r.status)}, {"iterations", r.iterations},
            {"duality_gap", r.duality_gap},         {"primal_residual", r.primal_residual},
            {"dual_residual", r.dual_residual},     {"wall_time_s", r.wall_time_s}};
}

conic::SolverReport report_from_json(const json& j) {
    conic::SolverReport r;
    r.status = status_from_token(j.at("status").get<std::string>());
    r.iterations = j.at("iterations").get<int>();
    r.duality_gap = j.at("duality_gap").get<double>();
    r.primal_residual = j.at("primal_residual").get<double>();
    r.dual_residual = j.at("dual_residual").get<double>();
    r.wall_time_s = j.at("wall_time_s").get<double>();
    return r;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

} // namespace

void ExperimentSpec::validate() const {
    base.validate();
    switch (kind) {
    case ExperimentKind::single:
    case ExperimentKind::decomposition:
        break;
    case ExperimentKind::antenna_sweep:
        if (antenna_counts.empty())
            throw std::invalid_argument("antenna sweep needs a nonempty antenna count list");
        for (int n : antenna_counts)
            if (n < 2)
                throw std::invalid_argument("antenna counts must be at least 2");
        break;
    case ExperimentKind::distance_sweep:
        if (distances_m.empty())
            throw std::invalid_argument("distance sweep needs a nonempty distance list");
        if (beam_widths_deg.empty())
            throw std::invalid_argument("distance sweep needs a nonempty beam width list");
        for (double d : distances_m)
            if (!(d > 0))
                throw std::invalid_argument("swept distances must be positive");
        for (double w : beam_widths_deg)
            if (w < 0)
                throw std::invalid_argument("beam widths cannot be negative");
        if (!(fixed_distance_m > 0))
            throw std::invalid_argument("the fixed-entity distance must be positive");
        break;
    case ExperimentKind::angle_sets:
        if (angle_sets.empty())
            throw std::invalid_argument("angle-set comparison needs a nonempty set list");
        for (const auto& set : angle_sets) {
            if (set.name.empty())
                throw std::invalid_argument("every angle set needs a name");
            if (set.user_angles_deg.empty() || set.target_angles_deg.empty())
                throw std::invalid_argument("angle set '" + set.name +
                                            "' needs user and target angles");
        }
        break;
    }
}

ExperimentSpec parse_experiment(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(std::string("JSON syntax error: ") + e.what());
    }
    if (!j.is_object())
        fail("experiment document must be a JSON object");
    for (const auto& item : j.items())
        if (item.key() != "kind" && item.key() != "scenario" && item.key() != "antenna_counts" &&
            item.key() != "distances_m" && item.key() != "beam_widths_deg" &&
            item.key() != "fixed_distance_m" && item.key() != "angle_sets")
            fail("unknown key '" + item.key() + "' in experiment document");
    if (!j.contains("kind") || !j.at("kind").is_string())
        fail("experiment document needs a string 'kind'");
    if (!j.contains("scenario"))
        fail("experiment document needs a 'scenario'");

    ExperimentSpec spec;
    spec.kind = kind_from_token(j.at("kind").get<std::string>());
    spec.base = detail::scenario_from_json_value(j.at("scenario"));

    if (j.contains("antenna_counts")) {
        if (!j.at("antenna_counts").is_array())
            fail("'antenna_counts' must be an array");
        for (const auto& n : j.at("antenna_counts")) {
            if (!n.is_number_integer())
                fail("antenna counts must be integers");
            spec.antenna_counts.push_back(n.get<int>());
        }
    }
    if (j.contains("distances_m")) {
        if (!j.at("distances_m").is_array())
            fail("'distances_m' must be an array");
        for (const auto& d : j.at("distances_m"))
            spec.distances_m.push_back(d.get<double>());
    }
    if (j.contains("beam_widths_deg")) {
        if (!j.at("beam_widths_deg").is_array())
            fail("'beam_widths_deg' must be an array");
        for (const auto& w : j.at("beam_widths_deg"))
            spec.beam_widths_deg.push_back(w.get<double>());
    }
    if (j.contains("fixed_distance_m"))
        spec.fixed_distance_m = j.at("fixed_distance_m").get<double>();
    if (j.contains("angle_sets")) {
        if (!j.at("angle_sets").is_array())
            fail("'angle_sets' must be an array");
        for (const auto& js : j.at("angle_sets")) {
            if (!js.is_object())
                fail("angle sets must be objects");
            for (const auto& item : js.items())
                if (item.key() != "name" && item.key() != "user_angles_deg" &&
                    item.key() != "target_angles_deg")
                    fail("unknown key '" + item.key() + "' in angle set");
            AngleSet set;
            set.name = js.at("name").get<std::string>();
            for (const auto& a : js.at("user_angles_deg"))
                set.user_angles_deg.push_back(a.get<double>());
            for (const auto& a : js.at("target_angles_deg"))
                set.target_angles_deg.push_back(a.get<double>());
            spec.angle_sets.push_back(std::move(set));
        }
    }

    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        fail(std::string("invalid experiment: ") + e.what());
    }
    return spec;
}

ExperimentSpec load_experiment(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail("cannot open experiment file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment(buffer.str());
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

RunRecord make_run_record(const Scenario& scenario, const IRMResult& result) {
    RunRecord record;
    record.scenario = scenario;
    record.result = result;
    record.created_at = utc_timestamp();
    if (!result.set.user_covariances.empty()) {
        for (int k = 0; k < scenario.num_users(); ++k)
            record.user_rates_bps_hz.push_back(rate(sinr(result.set, k, scenario)));
        record.beam_matching_error =
            beam_matching_error(result.set, build_desired_pattern(scenario), scenario.array);
    }
    return record;
}

RunRecord run_scenario(const Scenario& scenario, const IRMParams& params) {
    scenario.validate();
    return make_run_record(scenario, run_irm(scenario, params));
}

std::string run_record_to_json(const RunRecord& record) {
    json j;
    j["scenario"] = detail::scenario_json_value(record.scenario);

    json r;
    r["converged"] = record.result.converged;
    r["iterations"] = record.result.iterations;
    r["final_relaxation"] = record.result.final_relaxation;
    r["sdr_power_mw"] = record.result.sdr_power_mw;
    r["final_power_mw"] = record.result.final_power_mw;
    r["sdr_status"] = conic::to_string(record.result.sdr_status);
    r["set"] = set_to_json(record.result.set);
    r["sdr_set"] = set_to_json(record.result.sdr_set);
    r["trace"] = json::array();
    for (const auto& it : record.result.trace)
        r["trace"].push_back({{"iteration", it.iteration},
                              {"weight", it.weight},
                              {"relaxation", it.relaxation},
                              {"power_mw", it.power_mw}});
    r["reports"] = json::array();
    for (const auto& rep : record.result.reports)
        r["reports"].push_back(report_to_json(rep));
    j["result"] = std::move(r);

    j["user_rates_bps_hz"] = record.user_rates_bps_hz;
    j["beam_matching_error"] = record.beam_matching_error;
    j["created_at"] = record.created_at;
    return j.dump(2) + "\n";
}

RunRecord parse_run_record(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(std::string("JSON syntax error: ") + e.what());
    }
    RunRecord record;
    try {
        record.scenario = detail::scenario_from_json_value(j.at("scenario"));
        const json& r = j.at("result");
        record.result.converged = r.at("converged").get<bool>();
        record.result.iterations = r.at("iterations").get<int>();
        record.result.final_relaxation = r.at("final_relaxation").get<double>();
        record.result.sdr_power_mw = r.at("sdr_power_mw").get<double>();
        record.result.final_power_mw = r.at("final_power_mw").get<double>();
        record.result.sdr_status = status_from_token(r.at("sdr_status").get<std::string>());
        record.result.set = set_from_json(r.at("set"), "result.set");
        record.result.sdr_set = set_from_json(r.at("sdr_set"), "result.sdr_set");
        for (const auto& it : r.at("trace"))
            record.result.trace.push_back({it.at("iteration").get<int>(),
                                           it.at("weight").get<double>(),
                                           it.at("relaxation").get<double>(),
                                           it.at("power_mw").get<double>()});
        for (const auto& rep : r.at("reports"))
            record.result.reports.push_back(report_from_json(rep));
        record.user_rates_bps_hz = j.at("user_rates_bps_hz").get<std::vector<double>>();
        record.beam_matching_error = j.at("beam_matching_error").get<double>();
        record.created_at = j.at("created_at").get<std::string>();
    } catch (const json::exception& e) {
        fail(std::string("malformed run record: ") + e.what());
    }
    return record;
}

RunRecord load_run_record(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail("cannot open run record '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_run_record(buffer.str());
}

std::vector<SweepRow> sweep_antennas(const Scenario& base, const std::vector<int>& antenna_counts,
                                     const IRMParams& params, int workers) {
    base.validate();
    if (antenna_counts.empty())
        throw std::invalid_argument("antenna sweep needs at least one antenna count");

    std::vector<SweepRow> rows(antenna_counts.size());
    run_indexed(static_cast<int>(antenna_counts.size()), workers, [&](int i) {
        Scenario scenario = base;
        scenario.array.num_antennas = antenna_counts[static_cast<size_t>(i)];
        rows[static_cast<size_t>(i)] =
            run_one(scenario, params, "antennas", antenna_counts[static_cast<size_t>(i)]);
    });
    return rows;
}

std::string antenna_sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "N,power_dBm,iters\n";
    for (const auto& row : rows)
        out += std::to_string(static_cast<int>(row.swept_value)) + "," + power_cell(row) + "," +
               std::to_string(row.iterations) + "\n";
    return out;
}

std::vector<SweepRow> sweep_distance(const Scenario& base, const std::vector<double>& distances_m,
                                     const std::vector<double>& beam_widths_deg,
                                     double fixed_distance_m, const IRMParams& params,
                                     int workers) {
    base.validate();
    if (base.num_users() != 1 || base.num_targets() != 1)
        throw std::invalid_argument(
            "the distance sweep isolates one variable and needs exactly one user and one target");
    if (distances_m.empty() || beam_widths_deg.empty())
        throw std::invalid_argument("distance sweep needs distances and beam widths");
    if (!(fixed_distance_m > 0))
        throw std::invalid_argument("the fixed-entity distance must be positive");

    struct Task {
        bool target_swept;
        double beam_width;
        double distance;
    };
    std::vector<Task> tasks;
    for (const bool target_swept : {true, false})
        for (double w : beam_widths_deg)
            for (double d : distances_m)
                tasks.push_back({target_swept, w, d});

    std::vector<SweepRow> rows(tasks.size());
    run_indexed(static_cast<int>(tasks.size()), workers, [&](int i) {
        const Task& task = tasks[static_cast<size_t>(i)];
        Scenario scenario = base;
        scenario.beam_width_deg = task.beam_width;
        if (task.target_swept) {
            scenario.targets[0].distance_m = task.distance;
            scenario.users[0].distance_m = fixed_distance_m;
        } else {
            scenario.users[0].distance_m = task.distance;
            scenario.targets[0].distance_m = fixed_distance_m;
        }
        rows[static_cast<size_t>(i)] =
            run_one(scenario, params, task.target_swept ? "target" : "user", task.distance);
    });
    return rows;
}

std::string distance_sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "swept_entity,distance_m,delta_deg,power_dBm\n";
    for (const auto& row : rows)
        out += row.label + "," + format_number(row.swept_value) + "," +
               format_number(row.beam_width_deg) + "," + power_cell(row) + "\n";
    return out;
}

std::vector<SweepRow> run_angle_sets(const Scenario& base, const std::vector<AngleSet>& sets,
                                     const IRMParams& params, int workers) {
    base.validate();
    if (sets.empty())
        throw std::invalid_argument("angle-set comparison needs at least one set");

    std::vector<SweepRow> rows(sets.size());
    run_indexed(static_cast<int>(sets.size()), workers, [&](int i) {
        const AngleSet& set = sets[static_cast<size_t>(i)];
        Scenario scenario = base;
        scenario.users.clear();
        for (double angle : set.user_angles_deg) {
            UserSpec user = base.users[0];
            user.angle_deg = angle;
            scenario.users.push_back(user);
        }
        scenario.targets.clear();
        for (double angle : set.target_angles_deg) {
            TargetSpec target = base.targets[0];
            target.angle_deg = angle;
            scenario.targets.push_back(target);
        }
        rows[static_cast<size_t>(i)] = run_one(scenario, params, set.name, i);
    });
    return rows;
}

std::string angle_sets_csv(const std::vector<SweepRow>& rows) {
    std::string out = "set,power_dBm,iters\n";
    for (const auto& row : rows)
        out += row.label + "," + power_cell(row) + "," + std::to_string(row.iterations) + "\n";
    return out;
}

ValidationReport validate_solution(const RunRecord& record) {
    ValidationReport report;
    auto add = [&](const std::string& name, double margin) {
        report.checks.push_back({name, margin, margin >= 0});
    };

    const Scenario& scenario = record.scenario;
    const BeamformerSet& set = record.result.set;

    if (set.user_covariances.empty()) {
        report.checks.push_back({"solution_present", -1.0, false});
        report.pass = false;
        return report;
    }

    try {
        set.validate();
        add("covariances_psd", 0.0);
    } catch (const std::invalid_argument&) {
        add("covariances_psd", -1.0);
    }

    // Rate floors are judged on the extracted vectors when available
    // (rank-one designs are what get deployed); covariances otherwise.
    BeamformerSet eval = set;
    if (set.beamformers.size() == set.user_covariances.size())
        for (size_t k = 0; k < set.beamformers.size(); ++k)
            eval.user_covariances[k] = set.beamformers[k] * set.beamformers[k].adjoint();

    for (int k = 0; k < scenario.num_users(); ++k) {
        const double r = rate(sinr(eval, k, scenario));
        add("rate_user" + std::to_string(k), r - (scenario.rate_floor_bps_hz - 1e-6));
    }

    const DesiredBeampattern pattern = build_desired_pattern(scenario);
    for (int m = 0; m < pattern.size(); ++m) {
        const auto& sample = pattern.samples[m];
        const double level = transmit_beampattern(eval, scenario.array, sample.angle_deg);
        const double tol = 1e-6 * sample.level_mw + 1e-6;
        add("pattern_lower_" + format_number(sample.angle_deg) + "deg",
            level - (sample.level_mw - sample.tolerance_mw - tol));
        add("pattern_upper_" + format_number(sample.angle_deg) + "deg",
            (sample.level_mw + sample.tolerance_mw + tol) - level);
    }

    if (set.beamformers.size() == set.user_covariances.size() && !set.beamformers.empty())
        for (size_t k = 0; k < set.beamformers.size(); ++k) {
            const auto& w = set.user_covariances[k];
            const double rel = (w - set.beamformers[k] * set.beamformers[k].adjoint()).norm() /
                               std::max(w.norm(), 1e-300);
            add("rank_one_user" + std::to_string(k), 1e-6 - rel);
        }

    const double power = total_power(set);
    add("power_bookkeeping",
        1e-9 * (1.0 + power) - std::abs(power - record.result.final_power_mw));
    add("relaxation_lower_bound",
        record.result.final_power_mw - record.result.sdr_power_mw + 1e-9 * (1.0 + power));

    report.pass = true;
    for (const auto& check : report.checks)
        report.pass = report.pass && check.pass;
    return report;
}

std::string ValidationReport::to_text() const {
    std::string out;
    for (const auto& check : checks)
        out += std::string(check.pass ? "PASS" : "FAIL") + "  " + check.name +
               "  margin=" + format_number(check.margin) + "\n";
    out += std::string(pass ? "PASS" : "FAIL") + "  overall\n";
    return out;
}

std::string plot_script(const std::vector<std::string>& csv_paths) {
    if (csv_paths.empty())
        throw std::invalid_argument("the plot script needs at least one CSV");

    struct Panel {
        std::string path;
        std::string header;
    };
    std::vector<Panel> panels;
    for (const auto& path : csv_paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("cannot open CSV '" + path + "'");
        std::string header;
        std::getline(in, header);
        if (!header.empty() && header.back() == '\r')
            header.pop_back();
        panels.push_back({path, header});
    }

    std::string out;
    out += "#!/usr/bin/env gnuplot\n";
    out += "# Generated plot script; renders every input CSV into one PNG.\n";
    out += "set terminal pngcairo size 900," + std::to_string(450 * panels.size()) + "\n";
    out += "set output 'plots.png'\n";
    out += "set datafile separator ','\n";
    out += "set datafile missing '-inf'\n";
    out += "set key autotitle columnhead\n";
    out += "set grid\n";
    out += "set multiplot layout " + std::to_string(panels.size()) + ",1\n";

    for (const auto& panel : panels) {
        const std::string& h = panel.header;
        out += "\n# " + panel.path + " (" + h + ")\n";
        if (h.rfind("angle_deg,", 0) == 0) {
            out += "set title 'Beampattern'\nset xlabel 'angle_deg'\nset ylabel 'dBm'\n";
            out += "plot '" + panel.path +
                   "' using (column('angle_deg')):(column('total_dBm')) with lines title "
                   "'total_dBm', \\\n     '' using "
                   "(column('angle_deg')):(column('comm_dBm')) with lines title 'comm_dBm', "
                   "\\\n     '' using (column('angle_deg')):(column('radar_dBm')) with lines "
                   "title 'radar_dBm'\n";
        } else if (h.rfind("N,", 0) == 0) {
            out += "set title 'Power vs antennas'\nset xlabel 'N'\nset ylabel 'power_dBm'\n";
            out += "plot '" + panel.path +
                   "' using (column('N')):(column('power_dBm')) with linespoints title "
                   "'power_dBm'\n";
        } else if (h.rfind("swept_entity,", 0) == 0) {
            out += "set title 'Power vs distance'\nset xlabel 'distance_m'\nset ylabel "
                   "'power_dBm'\n";
            out += "plot '" + panel.path +
                   "' using (column('distance_m')):(column('power_dBm')) with points title "
                   "'power_dBm'\n";
        } else if (h.rfind("set,", 0) == 0) {
            out += "set title 'Power per placement'\nset ylabel 'power_dBm'\nset style data "
                   "histograms\nset style fill solid 0.6\n";
            out += "plot '" + panel.path +
                   "' using (column('power_dBm')):xticlabels(1) title 'power_dBm'\n";
        } else if (h.rfind("iter,", 0) == 0) {
            out += "set title 'Rank penalty trace'\nset xlabel 'iter'\nset ylabel 'r'\nset "
                   "logscale y\n";
            out += "plot '" + panel.path +
                   "' using (column('iter')):(column('r')) with linespoints title 'r'\n";
            out += "unset logscale y\n";
        } else {
            throw std::runtime_error("unrecognized CSV header in '" + panel.path + "': " + h);
        }
    }
    out += "\nunset multiplot\n";
    return out;
}

} // namespace isacbf
