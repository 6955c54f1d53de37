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
// Translation between the physical scenario and the conic solver's language:
//
//   minimize    sum_k tr(W_k) + tr(R_d)                     (total power)
//   subject to  tr(H_k W_k) >= gamma_floor * (sum_{i != k} tr(H_k W_i)
//                                             + tr(H_k R_d) + sigma_k^2)
//               rho_m - eta_m <= a_m^H (sum_k W_k + R_d) a_m <= rho_m + eta_m
//               W_k, R_d PSD
//
// plus, for the penalized re-solve, a scalar r >= 0 with objective weight phi
// and per-user LMIs  r I - V_k^H W_k V_k >= 0  pushing all but one
// eigenvalue of each W_k toward zero.

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <string>

#include "isacbf/formulation.hpp"

namespace isacbf {

namespace {

void require(bool condition, const std::string& message) {
    if (!condition)
        throw std::invalid_argument(message);
}

} // namespace

void P3Spec::validate() const {
    require(num_antennas >= 2, "beamforming needs at least two antenna elements");
    require(!user_gram.empty(), "at least one user is required");
    require(noise_mw.size() == user_gram.size(), "one noise power per user is required");
    require(!sample_gram.empty(), "at least one pattern sample is required");
    require(level_lower_mw.size() == sample_gram.size() &&
                level_upper_mw.size() == sample_gram.size(),
            "one level window per pattern sample is required");
    require(sinr_floor >= 0, "the SINR floor cannot be negative");
    for (size_t k = 0; k < user_gram.size(); ++k) {
        require(user_gram[k].rows() == num_antennas && user_gram[k].cols() == num_antennas,
                "user Gram matrix dimension mismatch");
        require(noise_mw[k] > 0, "noise power must be positive");
    }
    for (size_t m = 0; m < sample_gram.size(); ++m) {
        require(sample_gram[m].rows() == num_antennas && sample_gram[m].cols() == num_antennas,
                "pattern Gram matrix dimension mismatch");
        require(level_lower_mw[m] <= level_upper_mw[m],
                "pattern level window is empty (lower > upper)");
    }
}

P3Spec make_p3_spec(const Scenario& scenario, const DesiredBeampattern& pattern,
                    const FormulationOptions& options) {
    scenario.validate();
    pattern.validate();

    P3Spec spec;
    spec.num_antennas = scenario.array.num_antennas;
    spec.sinr_floor = std::exp2(scenario.rate_floor_bps_hz) - 1.0;
    spec.with_radar_covariance = !options.omit_radar_covariance;

    for (const auto& user : scenario.users) {
        const ComplexVector h = channel_vector(scenario.array, user);
        spec.user_gram.push_back(h * h.adjoint());
        spec.noise_mw.push_back(user.noise_power_mw);
    }

    for (const auto& sample : pattern.samples) {
        ComplexVector a = steering_vector(scenario.array, sample.angle_deg);
        double level = sample.level_mw;
        double tolerance = sample.tolerance_mw;
        if (options.channel_inclusive_pattern) {
            a *= std::sqrt(sample.pathloss);
            level *= sample.pathloss;
            tolerance *= sample.pathloss;
        }
        spec.sample_gram.push_back(a * a.adjoint());
        spec.level_lower_mw.push_back(level - tolerance);
        spec.level_upper_mw.push_back(level + tolerance);
    }

    spec.validate();
    return spec;
}

namespace {

// Shared skeleton of the relaxed and penalized problems.
conic::ConicProblem build_common(const P3Spec& spec) {
    spec.validate();
    const int n = spec.num_antennas;
    const int k_users = spec.num_users();

    conic::ConicProblem problem;
    const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(n, n);

    for (int k = 0; k < k_users; ++k) {
        const int b = problem.add_block("W" + std::to_string(k), n);
        problem.objective_blocks[b] = identity;
    }
    if (spec.with_radar_covariance) {
        const int b = problem.add_block("Rd", n);
        problem.objective_blocks[b] = identity;
    }
    const int radar_block = spec.with_radar_covariance ? k_users : -1;

    // SINR floors, cleared of the ratio:
    //   tr(H_k W_k) - floor * (interference + radar leakage) >= floor * sigma_k^2
    for (int k = 0; k < k_users; ++k) {
        conic::LinearConstraint c;
        c.sense = conic::Sense::GreaterEqual;
        c.rhs = spec.sinr_floor * spec.noise_mw[k];
        for (int i = 0; i < k_users; ++i) {
            const double coeff = i == k ? 1.0 : -spec.sinr_floor;
            c.block_terms.push_back({i, coeff * spec.user_gram[k]});
        }
        if (radar_block >= 0)
            c.block_terms.push_back({radar_block, -spec.sinr_floor * spec.user_gram[k]});
        problem.constraints.push_back(std::move(c));
    }

    // Two-sided pattern windows on the total covariance.
    for (int m = 0; m < spec.num_samples(); ++m) {
        for (const bool upper : {false, true}) {
            conic::LinearConstraint c;
            c.sense = upper ? conic::Sense::LessEqual : conic::Sense::GreaterEqual;
            c.rhs = upper ? spec.level_upper_mw[m] : spec.level_lower_mw[m];
            for (int i = 0; i < k_users; ++i)
                c.block_terms.push_back({i, spec.sample_gram[m]});
            if (radar_block >= 0)
                c.block_terms.push_back({radar_block, spec.sample_gram[m]});
            problem.constraints.push_back(std::move(c));
        }
    }
    return problem;
}

} // namespace

conic::ConicProblem build_p3(const P3Spec& spec) {
    conic::ConicProblem problem = build_common(spec);
    problem.validate();
    return problem;
}

conic::ConicProblem build_p4(const P3Spec& spec, const std::vector<Eigen::MatrixXcd>& panels,
                             double weight) {
    require(static_cast<int>(panels.size()) == spec.num_users(),
            "one eigenvector panel per user is required");
    require(weight > 0, "the relaxation penalty weight must be positive");
    for (const auto& panel : panels)
        require(panel.rows() == spec.num_antennas && panel.cols() >= 1,
                "eigenvector panel dimension mismatch");

    conic::ConicProblem problem = build_common(spec);
    const int r = problem.add_scalar("r", 0.0);
    problem.objective_scalars[r] = weight;
    for (int k = 0; k < spec.num_users(); ++k)
        problem.lmis.push_back({r, k, panels[k]});
    problem.validate();
    return problem;
}

BeamformerSet extract_solution(const P3Spec& spec, const conic::ConicSolution& solution) {
    const int k_users = spec.num_users();
    const size_t expected = static_cast<size_t>(k_users) + (spec.with_radar_covariance ? 1 : 0);
    if (solution.blocks.size() < expected)
        throw std::invalid_argument("solution does not carry all covariance blocks");

    auto clean = [&](const Eigen::MatrixXcd& raw, const char* what) {
        HermitianMatrix w = 0.5 * (raw + raw.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(w, Eigen::EigenvaluesOnly);
        const double min_eig = eig.eigenvalues().minCoeff();
        const double max_eig = std::max(eig.eigenvalues().maxCoeff(), 0.0);
        if (min_eig < -1e-9 * std::max(max_eig, 1e-300))
            throw std::runtime_error(std::string(what) +
                                     " covariance is not positive semidefinite");
        return w;
    };

    BeamformerSet set;
    for (int k = 0; k < k_users; ++k)
        set.user_covariances.push_back(clean(solution.blocks[k], "user"));
    if (spec.with_radar_covariance)
        set.radar_covariance = clean(solution.blocks[k_users], "radar");
    else
        set.radar_covariance = HermitianMatrix::Zero(spec.num_antennas, spec.num_antennas);
    return set;
}

} // namespace isacbf
