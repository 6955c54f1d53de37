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
// Feasibility audit of a candidate solution, evaluated directly on the
// original complex-valued problem (before any lowering or embedding), so it
// cross-checks the whole solver pipeline rather than sharing its arithmetic.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>

#include "isacbf/conic/solve.hpp"

namespace isacbf::conic {

double KktReport::max_constraint_violation() const {
    double v = 0.0;
    for (double c : constraint_violations)
        v = std::max(v, c);
    for (double c : scalar_bound_violations)
        v = std::max(v, c);
    return v;
}

double KktReport::min_block_eigenvalue() const {
    double v = std::numeric_limits<double>::infinity();
    for (double e : block_min_eigenvalues)
        v = std::min(v, e);
    for (double e : lmi_min_eigenvalues)
        v = std::min(v, e);
    return v;
}

KktReport check_kkt(const ConicProblem& problem, const ConicSolution& solution) {
    if (solution.blocks.size() != problem.blocks.size())
        throw std::invalid_argument("solution block count does not match problem");
    if (solution.scalars.size() != problem.scalars.size())
        throw std::invalid_argument("solution scalar count does not match problem");
    for (size_t b = 0; b < problem.blocks.size(); ++b)
        if (solution.blocks[b].rows() != problem.blocks[b].dimension ||
            solution.blocks[b].cols() != problem.blocks[b].dimension)
            throw std::invalid_argument("solution block '" + problem.blocks[b].name +
                                        "' has the wrong dimension");

    KktReport report;

    for (size_t i = 0; i < problem.constraints.size(); ++i) {
        const auto& c = problem.constraints[i];
        const double lhs = constraint_value(problem, solution, static_cast<int>(i));
        double violation = 0.0;
        switch (c.sense) {
        case Sense::Equal: violation = std::abs(lhs - c.rhs); break;
        case Sense::LessEqual: violation = std::max(0.0, lhs - c.rhs); break;
        case Sense::GreaterEqual: violation = std::max(0.0, c.rhs - lhs); break;
        }
        report.constraint_violations.push_back(violation);
    }

    for (const auto& x : solution.blocks) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(x, Eigen::EigenvaluesOnly);
        report.block_min_eigenvalues.push_back(eig.eigenvalues().minCoeff());
    }

    for (const auto& lmi : problem.lmis) {
        const auto& panel = lmi.panel;
        const Eigen::MatrixXcd inner = panel.adjoint() * solution.blocks[lmi.block] * panel;
        Eigen::MatrixXcd shifted =
            solution.scalars[lmi.scalar] *
                Eigen::MatrixXcd::Identity(panel.cols(), panel.cols()) -
            inner;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(shifted, Eigen::EigenvaluesOnly);
        report.lmi_min_eigenvalues.push_back(eig.eigenvalues().minCoeff());
    }

    for (size_t s = 0; s < problem.scalars.size(); ++s)
        if (problem.scalars[s].lower_bound.has_value())
            report.scalar_bound_violations.push_back(
                std::max(0.0, *problem.scalars[s].lower_bound - solution.scalars[s]));

    return report;
}

} // namespace isacbf::conic
