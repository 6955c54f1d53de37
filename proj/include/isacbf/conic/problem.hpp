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
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace isacbf::conic {

// Standard-form conic problem over Hermitian PSD matrix blocks and bounded
// scalar variables:
//
//   minimize    sum_b <C_b, X_b>  +  sum_s c_s * x_s
//   subject to  sum_b <A_{i,b}, X_b> + sum_s a_{i,s} * x_s  (<= | >= | =)  b_i
//               x_s * I_m - M^H X_b M  >=  0        (optional LMI constraints)
//               X_b >= 0 (PSD), x_s >= lower bound when given
//
// <A, X> is the real trace inner product tr(A X) for Hermitian A, X.

enum class Sense { LessEqual, GreaterEqual, Equal };

struct BlockVariable {
    std::string name;
    int dimension = 0;
};

struct ScalarVariable {
    std::string name;
    std::optional<double> lower_bound; // nullopt = free
};

// One A_{i,b}: the Hermitian coefficient of block b in constraint i.
struct BlockCoefficient {
    int block = -1;
    Eigen::MatrixXcd matrix;
};

struct ScalarCoefficient {
    int scalar = -1;
    double value = 0.0;
};

struct LinearConstraint {
    std::vector<BlockCoefficient> block_terms;
    std::vector<ScalarCoefficient> scalar_terms;
    Sense sense = Sense::Equal;
    double rhs = 0.0;
};

// x_s * I_m - M^H X_b M >= 0 with M a tall n x m panel (m = M.cols()).
struct LmiConstraint {
    int scalar = -1;
    int block = -1;
    Eigen::MatrixXcd panel;
};

struct ConicProblem {
    std::vector<BlockVariable> blocks;
    std::vector<ScalarVariable> scalars;
    std::vector<Eigen::MatrixXcd> objective_blocks; // C_b, aligned with blocks
    std::vector<double> objective_scalars;          // c_s, aligned with scalars
    std::vector<LinearConstraint> constraints;
    std::vector<LmiConstraint> lmis;

    int add_block(const std::string& name, int dimension);
    int add_scalar(const std::string& name, std::optional<double> lower_bound);

    // Checks Hermitian symmetry of every A and C (1e-12 relative), index
    // ranges, and dimension consistency. Throws std::invalid_argument.
    void validate() const;
};

struct ConicSolution {
    std::vector<Eigen::MatrixXcd> blocks;
    std::vector<double> scalars;
    double objective = 0.0;
};

// Objective of the problem evaluated at an arbitrary candidate solution.
double objective_value(const ConicProblem& problem, const ConicSolution& solution);

// Left-hand side of constraint i at a candidate solution.
double constraint_value(const ConicProblem& problem, const ConicSolution& solution,
                        int constraint_index);

// Self-describing one-entity-per-line text dump for cross-checking against
// external SDP tools; grammar documented in docs/problem-dump-format.md.
std::string dump_problem(const ConicProblem& problem);

} // namespace isacbf::conic
