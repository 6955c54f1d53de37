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

#include "isacbf/conic/problem.hpp"

#include <stdexcept>

namespace isacbf::conic {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok)
        throw std::invalid_argument(message);
}

void require_hermitian(const Eigen::MatrixXcd& m, const std::string& what) {
    require(m.rows() == m.cols(), what + " must be square");
    if ((m - m.adjoint()).norm() > 1e-12 * std::max(1.0, m.norm()))
        throw std::invalid_argument(what + " is not Hermitian within tolerance");
}

} // namespace

int ConicProblem::add_block(const std::string& name, int dimension) {
    require(dimension >= 1, "block dimension must be positive");
    blocks.push_back({name, dimension});
    objective_blocks.emplace_back(Eigen::MatrixXcd::Zero(dimension, dimension));
    return static_cast<int>(blocks.size()) - 1;
}

int ConicProblem::add_scalar(const std::string& name, std::optional<double> lower_bound) {
    scalars.push_back({name, lower_bound});
    objective_scalars.push_back(0.0);
    return static_cast<int>(scalars.size()) - 1;
}

void ConicProblem::validate() const {
    require(!blocks.empty() || !scalars.empty(), "problem has no variables");
    require(objective_blocks.size() == blocks.size(),
            "objective must carry one matrix per block");
    require(objective_scalars.size() == scalars.size(),
            "objective must carry one coefficient per scalar");

    for (size_t b = 0; b < blocks.size(); ++b) {
        require(blocks[b].dimension >= 1, "block '" + blocks[b].name + "' has invalid dimension");
        require(objective_blocks[b].rows() == blocks[b].dimension &&
                    objective_blocks[b].cols() == blocks[b].dimension,
                "objective matrix for block '" + blocks[b].name + "' has wrong dimensions");
        require_hermitian(objective_blocks[b], "objective matrix for block '" + blocks[b].name + "'");
    }

    for (size_t i = 0; i < constraints.size(); ++i) {
        const auto& c = constraints[i];
        const std::string where = "constraint " + std::to_string(i);
        require(!c.block_terms.empty() || !c.scalar_terms.empty(), where + " is empty");
        for (const auto& t : c.block_terms) {
            require(t.block >= 0 && t.block < static_cast<int>(blocks.size()),
                    where + " references an unknown block");
            require(t.matrix.rows() == blocks[t.block].dimension &&
                        t.matrix.cols() == blocks[t.block].dimension,
                    where + " has a coefficient of wrong dimensions");
            require_hermitian(t.matrix, where + " coefficient");
        }
        for (const auto& t : c.scalar_terms)
            require(t.scalar >= 0 && t.scalar < static_cast<int>(scalars.size()),
                    where + " references an unknown scalar");
    }

    for (size_t i = 0; i < lmis.size(); ++i) {
        const auto& l = lmis[i];
        const std::string where = "LMI constraint " + std::to_string(i);
        require(l.scalar >= 0 && l.scalar < static_cast<int>(scalars.size()),
                where + " references an unknown scalar");
        require(l.block >= 0 && l.block < static_cast<int>(blocks.size()),
                where + " references an unknown block");
        require(l.panel.rows() == blocks[l.block].dimension,
                where + " panel row count must match its block dimension");
        require(l.panel.cols() >= 1, where + " panel must have at least one column");
    }
}

double objective_value(const ConicProblem& problem, const ConicSolution& solution) {
    double value = 0.0;
    for (size_t b = 0; b < problem.blocks.size(); ++b)
        value += (problem.objective_blocks[b] * solution.blocks[b]).trace().real();
    for (size_t s = 0; s < problem.scalars.size(); ++s)
        value += problem.objective_scalars[s] * solution.scalars[s];
    return value;
}

double constraint_value(const ConicProblem& problem, const ConicSolution& solution,
                        int constraint_index) {
    const auto& c = problem.constraints.at(constraint_index);
    double value = 0.0;
    for (const auto& t : c.block_terms)
        value += (t.matrix * solution.blocks[t.block]).trace().real();
    for (const auto& t : c.scalar_terms)
        value += t.value * solution.scalars[t.scalar];
    return value;
}

} // namespace isacbf::conic
