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

#include "isacbf/conic/solve.hpp"
#include "isacbf/formulation.hpp"
#include "isacbf/metrics.hpp"
#include "isacbf/scene.hpp"

namespace isacbf {

struct IRMParams {
    double initial_weight = 1.0; // penalty weight on r in the first iteration
    double weight_step = 1.5;    // geometric growth factor, > 1
    // Convergence threshold on the squared relaxation scalar. By default r is
    // normalized by the largest top eigenvalue across the W_k before squaring
    // (scale invariance across pathloss regimes); set absolute_residual for
    // the raw power-unit test.
    double rank_threshold = 1e-7;
    bool absolute_residual = false;
    int max_iterations = 50;
    double rank_one_tol = 1e-6; // acceptable lambda_2 / lambda_1
    conic::SolverOptions solver;

    void validate() const;
};

struct IRMIterate {
    int iteration = 0;      // 1-based; the relaxation solve is iteration 0
    double weight = 0.0;    // penalty weight used this iteration
    double relaxation = 0.0; // optimal r
    double power_mw = 0.0;  // power part of the objective (without the r term)
};

struct IRMResult {
    BeamformerSet set;     // final covariances + extracted vectors (converged runs)
    BeamformerSet sdr_set; // the rank-unconstrained solution, for comparison curves
    bool converged = false;
    int iterations = 0;              // number of penalized re-solves (0 = SDR was rank one)
    double final_relaxation = 0.0;   // r from the last solve, 0 when no re-solve happened
    double sdr_power_mw = 0.0;       // lower bound on any rank-one design
    double final_power_mw = 0.0;
    conic::SolveStatus sdr_status = conic::SolveStatus::numerical_failure;
    std::vector<IRMIterate> trace;
    std::vector<conic::SolverReport> reports; // SDR solve first, then one per iteration
};

// Orthonormal eigenvectors of the N-1 smallest eigenvalues of a Hermitian PSD
// matrix, as an N x (N-1) panel; the excluded vector is a dominant one.
Eigen::MatrixXcd null_eigvecs(const HermitianMatrix& w);

// lambda_2 / lambda_1 for the two largest eigenvalues; 0 for exact rank one.
// Throws std::invalid_argument on the zero matrix.
double rank_one_ratio(const HermitianMatrix& w);

// w_k = sqrt(lambda_1) v_1 per matrix, phase-normalized so the
// largest-magnitude entry is real nonnegative. Throws std::runtime_error if
// any matrix fails rank_one_tol (including eigenvalue ties within tolerance).
std::vector<ComplexVector> extract_beamformers(const std::vector<HermitianMatrix>& covariances,
                                               double rank_one_tol = 1e-6);

// Full pipeline: solve the relaxed problem; if already rank one, extract and
// return. Otherwise iterate penalized solves with eigenvector panels refreshed
// from the current iterate and geometrically growing weight until the
// (normalized) squared relaxation scalar drops below rank_threshold.
//
// On relaxation-stage failure (infeasible scenario, solver breakdown) the
// result carries sdr_status and an empty set; converged stays false. A run
// that exhausts max_iterations returns converged = false with diagnostics.
IRMResult run_irm(const Scenario& scenario, const IRMParams& params = {},
                  const FormulationOptions& options = {});

// CSV `iter,phi,r,power_mW` of the iteration trace, 9 significant digits.
std::string iteration_trace_csv(const IRMResult& result);

} // namespace isacbf
