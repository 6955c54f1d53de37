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

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "isacbf/units.hpp"

namespace isacbf {

using ComplexVector = Eigen::VectorXcd;
using HermitianMatrix = Eigen::MatrixXcd;

// Uniform linear array at the base station. Element spacing defaults to
// half a wavelength when not given explicitly.
struct ArrayGeometry {
    int num_antennas = 0;            // N >= 2
    double carrier_frequency_hz = 0; // f_c > 0
    double element_spacing_m = 0;    // d > 0

    static ArrayGeometry half_wavelength(int num_antennas, double carrier_frequency_hz);

    double wavelength_m() const { return speed_of_light_m_s / carrier_frequency_hz; }
    void validate() const;
};

// A downlink communication user. Powers and gains are stored linearly;
// the config boundary converts from dBm / dB.
struct UserSpec {
    double angle_deg = 0;      // in (-90, 90)
    double distance_m = 0;     // > 0
    double noise_power_mw = 0; // sigma_k^2, linear, > 0
    double tx_gain = 1.0;      // linear, > 0
    double rx_gain = 1.0;      // linear, > 0

    void validate() const;
};

// A radar target to be sensed. Pathloss toward targets assumes unit
// antenna gains (the target is a passive reflector, not a receiver).
struct TargetSpec {
    double angle_deg = 0;
    double distance_m = 0; // > 0

    void validate() const;
};

// Full problem instance: geometry, users, targets and the knobs that
// shape the desired beampattern.
struct Scenario {
    ArrayGeometry array;
    std::vector<UserSpec> users;     // K >= 1
    std::vector<TargetSpec> targets; // P >= 1

    double rate_floor_bps_hz = 0;        // R_min > 0
    double beam_width_deg = 0;           // Delta >= 0
    double target_receive_level_dbm = 0; // Gamma
    double grid_resolution_deg = 1.0;    // > 0

    bool sidelobe_region_enabled = false;
    double sidelobe_level_mw = 0;     // linear, used when enabled
    double sidelobe_tolerance_mw = 0; // linear, > 0 when enabled

    double mainlobe_tolerance_fraction = 0.1; // in (0, 1)

    int num_antennas() const { return array.num_antennas; }
    int num_users() const { return static_cast<int>(users.size()); }
    int num_targets() const { return static_cast<int>(targets.size()); }

    // Throws std::invalid_argument when any field or derived quantity is out
    // of domain (including mainlobe intervals leaving (-90, 90)).
    void validate() const;
};

// One sampled point of the desired transmit beampattern: angle, desired
// level rho and tolerance eta (both linear).
struct PatternSample {
    double angle_deg = 0;
    double level_mw = 0;     // rho(theta_m) >= 0
    double tolerance_mw = 0; // eta_m > 0
    // Pathloss of the target owning this sample; 1 for sidelobe samples.
    // Used only by the channel-referenced constraint variant.
    double pathloss = 1.0;
};

struct DesiredBeampattern {
    std::vector<PatternSample> samples; // M >= 1, angles ascending

    int size() const { return static_cast<int>(samples.size()); }
    void validate() const;
};

// Steering vector of the ULA: element n carries phase 2*pi*(d/lambda)*n*cos(theta).
// The squared norm is exactly the antenna count.
ComplexVector steering_vector(const ArrayGeometry& array, double angle_deg);

// Free-space power gain G_T * G_R * lambda^2 / ((4*pi)^2 * d^2).
double pathloss(double distance_m, double tx_gain, double rx_gain, double wavelength_m);

// LOS channel h = sqrt(pathloss) * a(theta), so that h^H h = pathloss * N.
ComplexVector channel_vector(const ArrayGeometry& array, const UserSpec& user);
ComplexVector channel_vector(const ArrayGeometry& array, const TargetSpec& target);

// Samples the desired beampattern on the scenario grid: for every target,
// the grid points falling inside [theta_p - Delta/2, theta_p + Delta/2]
// plus theta_p itself, at level phi_p compensating the target pathloss;
// optionally a sidelobe region outside all mainlobes.
//
// Throws std::invalid_argument when two mainlobes overlap with different
// desired levels (the caller must disambiguate).
DesiredBeampattern build_desired_pattern(const Scenario& scenario);

// Desired mainlobe level for one target: linear(Gamma_dBm - 10*log10(beta_p)).
double mainlobe_level_mw(const Scenario& scenario, const TargetSpec& target);

} // namespace isacbf
