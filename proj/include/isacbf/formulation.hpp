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

#include "isacbf/conic/problem.hpp"
#include "isacbf/conic/solve.hpp"
#include "isacbf/metrics.hpp"
#include "isacbf/scene.hpp"

namespace isacbf {

struct FormulationOptions {
    // When true, pattern constraints use the channel-inclusive gain through
    // sqrt(pathloss)-scaled steering vectors instead of the transmit-side
    // beampattern; desired levels are rescaled by the same pathloss so the
    // two variants describe the same physical requirement.
    bool channel_inclusive_pattern = false;
    // When true, the radar covariance block is dropped (R_d fixed to zero).
    bool omit_radar_covariance = false;
};

// Data of the power-minimization SDP: per-user channel Gram matrices, pattern
// Gram matrices with their level windows, and the SINR floor.
struct P3Spec {
    int num_antennas = 0;
    std::vector<HermitianMatrix> user_gram;   // H_k = h_k h_k^H
    std::vector<double> noise_mw;             // sigma_k^2
    double sinr_floor = 0.0;                  // 2^rate_floor - 1
    std::vector<HermitianMatrix> sample_gram; // one per pattern sample
    std::vector<double> level_lower_mw;       // rho_m - eta_m
    std::vector<double> level_upper_mw;       // rho_m + eta_m
    bool with_radar_covariance = true;

    int num_users() const { return static_cast<int>(user_gram.size()); }
    int num_samples() const { return static_cast<int>(sample_gram.size()); }
    void validate() const; // throws std::invalid_argument
};

P3Spec make_p3_spec(const Scenario& scenario, const DesiredBeampattern& pattern,
                    const FormulationOptions& options = {});

// Block layout of the returned problems: blocks 0..K-1 are W_k, block K is
// R_d when present. build_p4 additionally registers scalar 0 as the
// relaxation variable r >= 0 and one LMI  r I - V_k^H W_k V_k >= 0  per user.
conic::ConicProblem build_p3(const P3Spec& spec);
conic::ConicProblem build_p4(const P3Spec& spec, const std::vector<Eigen::MatrixXcd>& panels,
                             double weight);

// Reads W_k / R_d back out of a solution of build_p3 or build_p4:
// Hermitian-symmetrized, validated PSD within tolerance (throws
// std::runtime_error on eigenvalues below -1e-9 * lambda_max).
BeamformerSet extract_solution(const P3Spec& spec, const conic::ConicSolution& solution);

} // namespace isacbf
