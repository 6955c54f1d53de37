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

#include "isacbf/scene.hpp"

namespace isacbf {

// A candidate design: one transmit covariance per user plus the radar
// covariance, optionally carrying the rank-one vectors recovered from them.
struct BeamformerSet {
    std::vector<HermitianMatrix> user_covariances; // W_k, one per user
    HermitianMatrix radar_covariance;              // R_d
    std::vector<ComplexVector> beamformers;        // w_k; empty until extracted

    int num_antennas() const {
        return radar_covariance.rows() > 0
                   ? static_cast<int>(radar_covariance.rows())
                   : (user_covariances.empty() ? 0 : static_cast<int>(user_covariances[0].rows()));
    }
    int num_users() const { return static_cast<int>(user_covariances.size()); }

    // Throws std::invalid_argument on dimension mismatch, Hermitian-symmetry breach
    // (1e-12 relative) or negative eigenvalues below -1e-9 * lambda_max.
    void validate() const;
};

// Total transmit power sum_k tr(W_k) + tr(R_d), in mW.
double total_power(const BeamformerSet& set);

// Transmit-side beampattern B(theta) = a(theta)^H (sum_k W_k + R_d) a(theta).
double transmit_beampattern(const BeamformerSet& set, const ArrayGeometry& array,
                            double angle_deg);

// Beam gain through an actual channel vector h: h^H (sum W_k + R_d) h, i.e. the
// level received at the far end, pathloss included.
double channel_beam_gain(const BeamformerSet& set, const ComplexVector& channel);

// Sum of squared deviations between designed and desired beampattern over the
// pattern's samples.
double beam_matching_error(const BeamformerSet& set, const DesiredBeampattern& pattern,
                           const ArrayGeometry& array);

// SINR of user k from the covariances (trace form). With rank-one-consistent
// sets this equals the vector form |h^H w_k|^2 / (...).
double sinr(const BeamformerSet& set, int user_index, const Scenario& scenario);

// Shannon rate log2(1 + gamma) in bits/s/Hz.
double rate(double sinr_value);

// Per-angle split of the transmit beampattern into its communication part
// a^H (sum W_k) a and radar part a^H R_d a; the two sum to the total pattern.
struct BeampatternDecomposition {
    std::vector<double> angles_deg;
    std::vector<double> communication_mw;
    std::vector<double> radar_mw;
    std::vector<double> total_mw;
};

BeampatternDecomposition component_decomposition(const BeamformerSet& set,
                                                 const ArrayGeometry& array,
                                                 const std::vector<double>& grid_deg);

// Default export grid: -90..90 degrees inclusive at 1-degree steps (181 points).
std::vector<double> default_angle_grid();

// CSV with header `angle_deg,total_dBm,comm_dBm,radar_dBm`, one row per grid
// angle ascending, 9 significant digits, LF line endings. Levels <= 0 mW are
// written as "-inf".
std::string beampattern_csv(const BeamformerSet& set, const ArrayGeometry& array,
                            const std::vector<double>& grid_deg);

} // namespace isacbf
