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

#include "isacbf/scene.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace isacbf {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok)
        throw std::invalid_argument(message);
}

void require_angle_open_domain(double angle_deg, const std::string& what) {
    require(std::isfinite(angle_deg) && angle_deg > -90.0 && angle_deg < 90.0,
            what + " must lie in (-90, 90) degrees, got " + std::to_string(angle_deg));
}

} // namespace

ArrayGeometry ArrayGeometry::half_wavelength(int num_antennas, double carrier_frequency_hz) {
    ArrayGeometry g;
    g.num_antennas = num_antennas;
    g.carrier_frequency_hz = carrier_frequency_hz;
    require(carrier_frequency_hz > 0, "carrier frequency must be positive");
    g.element_spacing_m = 0.5 * g.wavelength_m();
    return g;
}

void ArrayGeometry::validate() const {
    require(num_antennas >= 2, "array needs at least 2 antennas");
    require(carrier_frequency_hz > 0, "carrier frequency must be positive");
    require(element_spacing_m > 0, "element spacing must be positive");
}

void UserSpec::validate() const {
    require_angle_open_domain(angle_deg, "user angle");
    require(distance_m > 0, "user distance must be positive");
    require(noise_power_mw > 0, "user noise power must be positive");
    require(tx_gain > 0 && rx_gain > 0, "antenna gains must be positive");
}

void TargetSpec::validate() const {
    require_angle_open_domain(angle_deg, "target angle");
    require(distance_m > 0, "target distance must be positive");
}

void Scenario::validate() const {
    array.validate();
    require(!users.empty(), "scenario needs at least one user");
    require(!targets.empty(), "scenario needs at least one target");
    for (const auto& u : users)
        u.validate();
    for (const auto& t : targets)
        t.validate();
    require(rate_floor_bps_hz > 0, "rate floor must be positive");
    require(beam_width_deg >= 0, "beam width must be nonnegative");
    require(grid_resolution_deg > 0, "grid resolution must be positive");
    require(mainlobe_tolerance_fraction > 0 && mainlobe_tolerance_fraction < 1,
            "mainlobe tolerance fraction must be in (0, 1)");
    if (sidelobe_region_enabled) {
        require(sidelobe_level_mw >= 0, "sidelobe level must be nonnegative");
        require(sidelobe_tolerance_mw > 0, "sidelobe tolerance must be positive");
    }
    for (const auto& t : targets) {
        require_angle_open_domain(t.angle_deg - beam_width_deg / 2.0, "mainlobe lower edge");
        require_angle_open_domain(t.angle_deg + beam_width_deg / 2.0, "mainlobe upper edge");
    }
}

void DesiredBeampattern::validate() const {
    require(!samples.empty(), "desired beampattern needs at least one sample");
    for (const auto& s : samples) {
        require_angle_open_domain(s.angle_deg, "pattern sample angle");
        require(s.level_mw >= 0, "pattern level must be nonnegative");
        require(s.tolerance_mw > 0, "pattern tolerance must be positive");
    }
}

ComplexVector steering_vector(const ArrayGeometry& array, double angle_deg) {
    array.validate();
    require_angle_open_domain(angle_deg, "steering angle");

    const int n = array.num_antennas;
    const double spacing_over_lambda = array.element_spacing_m / array.wavelength_m();
    const double phase_step =
        2.0 * std::numbers::pi * spacing_over_lambda * std::cos(deg_to_rad(angle_deg));

    ComplexVector a(n);
    for (int i = 0; i < n; ++i)
        a(i) = std::polar(1.0, phase_step * static_cast<double>(i));
    return a;
}

double pathloss(double distance_m, double tx_gain, double rx_gain, double wavelength_m) {
    require(distance_m > 0, "pathloss distance must be positive");
    require(wavelength_m > 0, "wavelength must be positive");
    require(tx_gain > 0 && rx_gain > 0, "antenna gains must be positive");
    const double four_pi = 4.0 * std::numbers::pi;
    return tx_gain * rx_gain * wavelength_m * wavelength_m /
           (four_pi * four_pi * distance_m * distance_m);
}

ComplexVector channel_vector(const ArrayGeometry& array, const UserSpec& user) {
    user.validate();
    const double beta = pathloss(user.distance_m, user.tx_gain, user.rx_gain, array.wavelength_m());
    return std::sqrt(beta) * steering_vector(array, user.angle_deg);
}

ComplexVector channel_vector(const ArrayGeometry& array, const TargetSpec& target) {
    target.validate();
    const double beta = pathloss(target.distance_m, 1.0, 1.0, array.wavelength_m());
    return std::sqrt(beta) * steering_vector(array, target.angle_deg);
}

double mainlobe_level_mw(const Scenario& scenario, const TargetSpec& target) {
    const double beta = pathloss(target.distance_m, 1.0, 1.0, scenario.array.wavelength_m());
    return dbm_to_mw(scenario.target_receive_level_dbm - linear_to_db(beta));
}

DesiredBeampattern build_desired_pattern(const Scenario& scenario) {
    scenario.validate();

    const double res = scenario.grid_resolution_deg;
    const double half_width = scenario.beam_width_deg / 2.0;
    constexpr double angle_eps = 1e-9;

    struct Lobe {
        double lo, hi, level, beta;
    };
    std::vector<Lobe> lobes;
    for (const auto& t : scenario.targets) {
        Lobe l;
        l.lo = t.angle_deg - half_width;
        l.hi = t.angle_deg + half_width;
        l.level = mainlobe_level_mw(scenario, t);
        l.beta = pathloss(t.distance_m, 1.0, 1.0, scenario.array.wavelength_m());
        lobes.push_back(l);
    }
    for (size_t i = 0; i < lobes.size(); ++i) {
        for (size_t j = i + 1; j < lobes.size(); ++j) {
            const bool overlap =
                lobes[i].lo <= lobes[j].hi + angle_eps && lobes[j].lo <= lobes[i].hi + angle_eps;
            if (overlap && std::abs(lobes[i].level - lobes[j].level) >
                               angle_eps * std::max(lobes[i].level, lobes[j].level)) {
                std::ostringstream os;
                os << "mainlobes of targets " << i << " and " << j
                   << " overlap with different desired levels; split the targets or equalize "
                      "their distances";
                throw std::invalid_argument(os.str());
            }
        }
    }

    // Angle -> sample, deduplicated. Mainlobe samples win over sidelobe ones.
    std::map<long long, PatternSample> by_key;
    auto key_of = [&](double angle) { return std::llround(angle / angle_eps); };

    auto add_mainlobe_sample = [&](double angle, const Lobe& l) {
        PatternSample s;
        s.angle_deg = angle;
        s.level_mw = l.level;
        s.tolerance_mw = scenario.mainlobe_tolerance_fraction * l.level;
        s.pathloss = l.beta;
        by_key[key_of(angle)] = s;
    };

    for (size_t p = 0; p < lobes.size(); ++p) {
        const Lobe& l = lobes[p];
        // Grid points are the integer multiples of the resolution.
        const long long k_lo = static_cast<long long>(std::ceil(l.lo / res - angle_eps));
        const long long k_hi = static_cast<long long>(std::floor(l.hi / res + angle_eps));
        for (long long k = k_lo; k <= k_hi; ++k)
            add_mainlobe_sample(static_cast<double>(k) * res, l);
        add_mainlobe_sample(scenario.targets[p].angle_deg, l);
    }

    if (scenario.sidelobe_region_enabled) {
        const long long k_min = static_cast<long long>(std::ceil(-90.0 / res)) ;
        const long long k_max = static_cast<long long>(std::floor(90.0 / res));
        for (long long k = k_min; k <= k_max; ++k) {
            const double angle = static_cast<double>(k) * res;
            if (angle <= -90.0 + angle_eps || angle >= 90.0 - angle_eps)
                continue;
            bool in_mainlobe = false;
            for (const auto& l : lobes)
                in_mainlobe |= (angle >= l.lo - angle_eps && angle <= l.hi + angle_eps);
            if (in_mainlobe)
                continue;
            if (by_key.count(key_of(angle)))
                continue;
            PatternSample s;
            s.angle_deg = angle;
            s.level_mw = scenario.sidelobe_level_mw;
            s.tolerance_mw = scenario.sidelobe_tolerance_mw;
            s.pathloss = 1.0;
            by_key[key_of(angle)] = s;
        }
    }

    DesiredBeampattern pattern;
    pattern.samples.reserve(by_key.size());
    for (const auto& [k, s] : by_key)
        pattern.samples.push_back(s);
    pattern.validate();
    return pattern;
}

} // namespace isacbf
