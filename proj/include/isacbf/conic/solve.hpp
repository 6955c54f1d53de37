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

#include <string>

#include "isacbf/conic/problem.hpp"

namespace isacbf::conic {

enum class SolveStatus {
    optimal,
    infeasible,
    unbounded,
    max_iterations,
    numerical_failure,
};

std::string to_string(SolveStatus status);

struct SolverOptions {
    double gap_tol = 1e-8;
    double feas_tol = 1e-8;
    int max_iterations = 200;
    std::string backend = "dense-ipm";
    bool verbose = false; // per-iteration trace on stderr

    void validate() const; // tolerances > 0, max_iterations >= 1
};

struct SolverReport {
    SolveStatus status = SolveStatus::numerical_failure;
    int iterations = 0;
    double duality_gap = 0.0;     // relative gap |primal - dual| / (1 + |primal|)
    double primal_residual = 0.0; // ||b - A(x)|| / (1 + ||b||)
    double dual_residual = 0.0;   // ||C - A^T(y) - Z||_F / (1 + ||C||_F)
    double wall_time_s = 0.0;
};

// Solves the problem with the dense primal-dual interior-point backend.
// status == optimal guarantees the reported residuals and duality gap are
// within the requested tolerances; any other status carries diagnostics
// rather than a silent wrong answer. Deterministic for identical inputs.
std::pair<ConicSolution, SolverReport> solve(const ConicProblem& problem,
                                             const SolverOptions& options = {});

// Independent feasibility audit of a candidate solution against a problem.
struct KktReport {
    // Per linear constraint: violation in natural units (0 when satisfied;
    // |lhs - rhs| for equalities, max(0, breach) for inequalities).
    std::vector<double> constraint_violations;
    // Per block: smallest eigenvalue (negative = PSD violation).
    std::vector<double> block_min_eigenvalues;
    // Per LMI constraint: smallest eigenvalue of x I - M^H X M.
    std::vector<double> lmi_min_eigenvalues;
    // Per scalar with a bound: max(0, lower_bound - x).
    std::vector<double> scalar_bound_violations;

    double max_constraint_violation() const;
    double min_block_eigenvalue() const;
};

KktReport check_kkt(const ConicProblem& problem, const ConicSolution& solution);

} // namespace isacbf::conic
