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
// Scenario documents live in JSON with human units (degrees, meters, dBm,
// dB); everything is converted to linear units at this boundary. Parsing is
// strict: unknown keys, missing fields, and type mismatches all raise
// ParseError so a typo cannot silently fall back to a default.

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "isacbf/scenario_io.hpp"
#include "isacbf/units.hpp"

namespace isacbf {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& message) { throw ParseError(message); }

void expect_object(const json& j, const std::string& where) {
    if (!j.is_object())
        fail(where + " must be a JSON object");
}

void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const auto& key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known)
            fail("unknown key '" + item.key() + "' in " + where);
    }
}

double get_number(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key))
        fail("missing key '" + key + "' in " + where);
    if (!j.at(key).is_number())
        fail("key '" + key + "' in " + where + " must be a number");
    return j.at(key).get<double>();
}

double get_number_or(const json& j, const std::string& key, const std::string& where,
                     double fallback) {
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_number())
        fail("key '" + key + "' in " + where + " must be a number");
    return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key))
        fail("missing key '" + key + "' in " + where);
    if (!j.at(key).is_number_integer())
        fail("key '" + key + "' in " + where + " must be an integer");
    return j.at(key).get<int>();
}

Scenario scenario_from_json(const json& j) {
    expect_object(j, "scenario");
    reject_unknown_keys(j,
                        {"array", "users", "targets", "rate_floor_bps_hz", "beam_width_deg",
                         "target_receive_level_dbm", "grid_resolution_deg", "sidelobe",
                         "mainlobe_tolerance_fraction"},
                        "scenario");

    Scenario s;

    if (!j.contains("array"))
        fail("missing key 'array' in scenario");
    const json& array = j.at("array");
    expect_object(array, "array");
    reject_unknown_keys(array, {"num_antennas", "carrier_frequency_ghz", "element_spacing_m"},
                        "array");
    s.array.num_antennas = get_int(array, "num_antennas", "array");
    s.array.carrier_frequency_hz = get_number(array, "carrier_frequency_ghz", "array") * 1e9;
    if (array.contains("element_spacing_m"))
        s.array.element_spacing_m = get_number(array, "element_spacing_m", "array");
    else if (s.array.carrier_frequency_hz > 0)
        s.array.element_spacing_m = 0.5 * s.array.wavelength_m();

    if (!j.contains("users") || !j.at("users").is_array() || j.at("users").empty())
        fail("scenario needs a nonempty 'users' array");
    for (const auto& ju : j.at("users")) {
        expect_object(ju, "user");
        reject_unknown_keys(
            ju, {"angle_deg", "distance_m", "noise_power_dbm", "tx_gain_db", "rx_gain_db"},
            "user");
        UserSpec u;
        u.angle_deg = get_number(ju, "angle_deg", "user");
        u.distance_m = get_number(ju, "distance_m", "user");
        u.noise_power_mw = dbm_to_mw(get_number(ju, "noise_power_dbm", "user"));
        u.tx_gain = db_to_linear(get_number_or(ju, "tx_gain_db", "user", 0.0));
        u.rx_gain = db_to_linear(get_number_or(ju, "rx_gain_db", "user", 0.0));
        s.users.push_back(u);
    }

    if (!j.contains("targets") || !j.at("targets").is_array() || j.at("targets").empty())
        fail("scenario needs a nonempty 'targets' array");
    for (const auto& jt : j.at("targets")) {
        expect_object(jt, "target");
        reject_unknown_keys(jt, {"angle_deg", "distance_m"}, "target");
        TargetSpec t;
        t.angle_deg = get_number(jt, "angle_deg", "target");
        t.distance_m = get_number(jt, "distance_m", "target");
        s.targets.push_back(t);
    }

    s.rate_floor_bps_hz = get_number(j, "rate_floor_bps_hz", "scenario");
    s.beam_width_deg = get_number(j, "beam_width_deg", "scenario");
    s.target_receive_level_dbm = get_number(j, "target_receive_level_dbm", "scenario");
    s.grid_resolution_deg = get_number_or(j, "grid_resolution_deg", "scenario", 1.0);
    s.mainlobe_tolerance_fraction =
        get_number_or(j, "mainlobe_tolerance_fraction", "scenario", 0.1);

    if (j.contains("sidelobe")) {
        const json& side = j.at("sidelobe");
        expect_object(side, "sidelobe");
        reject_unknown_keys(side, {"level_dbm", "tolerance_fraction"}, "sidelobe");
        s.sidelobe_region_enabled = true;
        s.sidelobe_level_mw = dbm_to_mw(get_number(side, "level_dbm", "sidelobe"));
        s.sidelobe_tolerance_mw =
            get_number(side, "tolerance_fraction", "sidelobe") * s.sidelobe_level_mw;
    }

    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        fail(std::string("invalid scenario: ") + e.what());
    }
    return s;
}

json scenario_to_json_value(const Scenario& s) {
    json j;
    j["array"] = {{"num_antennas", s.array.num_antennas},
                  {"carrier_frequency_ghz", s.array.carrier_frequency_hz / 1e9},
                  {"element_spacing_m", s.array.element_spacing_m}};
    j["users"] = json::array();
    for (const auto& u : s.users)
        j["users"].push_back({{"angle_deg", u.angle_deg},
                              {"distance_m", u.distance_m},
                              {"noise_power_dbm", mw_to_dbm(u.noise_power_mw)},
                              {"tx_gain_db", linear_to_db(u.tx_gain)},
                              {"rx_gain_db", linear_to_db(u.rx_gain)}});
    j["targets"] = json::array();
    for (const auto& t : s.targets)
        j["targets"].push_back({{"angle_deg", t.angle_deg}, {"distance_m", t.distance_m}});
    j["rate_floor_bps_hz"] = s.rate_floor_bps_hz;
    j["beam_width_deg"] = s.beam_width_deg;
    j["target_receive_level_dbm"] = s.target_receive_level_dbm;
    j["grid_resolution_deg"] = s.grid_resolution_deg;
    j["mainlobe_tolerance_fraction"] = s.mainlobe_tolerance_fraction;
    if (s.sidelobe_region_enabled)
        j["sidelobe"] = {{"level_dbm", mw_to_dbm(s.sidelobe_level_mw)},
                         {"tolerance_fraction", s.sidelobe_tolerance_mw / s.sidelobe_level_mw}};
    return j;
}

} // namespace

namespace detail {

// Shared with the experiment parser in experiments.cpp.
Scenario scenario_from_json_value(const json& j) { return scenario_from_json(j); }
json scenario_json_value(const Scenario& s) { return scenario_to_json_value(s); }

} // namespace detail

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(std::string("JSON syntax error: ") + e.what());
    }
    return scenario_from_json(j);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail("cannot open scenario file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::string scenario_to_json(const Scenario& scenario) {
    return scenario_to_json_value(scenario).dump(2) + "\n";
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path())
        fs::create_directories(target.parent_path());
    const fs::path temp = target.string() + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open '" + temp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw std::runtime_error("write to '" + temp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(temp, target, ec);
    if (ec)
        throw std::runtime_error("cannot move '" + temp.string() + "' into place: " +
                                 ec.message());
}

} // namespace isacbf
