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

#include "isacbf/conic/embedding.hpp"

#include <stdexcept>

namespace isacbf::conic {

Eigen::MatrixXd embed_hermitian(const Eigen::MatrixXcd& w) {
    if (w.rows() != w.cols())
        throw std::invalid_argument("embedding requires a square matrix");
    const Eigen::Index n = w.rows();
    Eigen::MatrixXd y(2 * n, 2 * n);
    y.topLeftCorner(n, n) = w.real();
    y.topRightCorner(n, n) = -w.imag();
    y.bottomLeftCorner(n, n) = w.imag();
    y.bottomRightCorner(n, n) = w.real();
    return y;
}

Eigen::MatrixXcd unembed_symmetric(const Eigen::MatrixXd& y) {
    if (y.rows() != y.cols() || y.rows() % 2 != 0)
        throw std::invalid_argument("unembedding requires an even-dimension square matrix");
    const Eigen::Index n = y.rows() / 2;
    const Eigen::MatrixXd re = 0.5 * (y.topLeftCorner(n, n) + y.bottomRightCorner(n, n));
    // For symmetric Y the two off-diagonal sub-blocks are transposes of each
    // other; Im W must be antisymmetric, so antisymmetrize the average.
    const Eigen::MatrixXd lower = 0.5 * (y.bottomLeftCorner(n, n) + y.topRightCorner(n, n).transpose());
    const Eigen::MatrixXd im = 0.5 * (lower - lower.transpose());
    Eigen::MatrixXcd w(n, n);
    w.real() = re;
    w.imag() = im;
    return w;
}

ConicProblem real_embedding(const ConicProblem& problem) {
    problem.validate();
    if (!problem.lmis.empty())
        throw std::invalid_argument("lower LMI constraints before the real embedding");

    ConicProblem out;
    out.scalars = problem.scalars;
    out.objective_scalars = problem.objective_scalars;
    for (size_t b = 0; b < problem.blocks.size(); ++b) {
        out.blocks.push_back({problem.blocks[b].name, 2 * problem.blocks[b].dimension});
        out.objective_blocks.push_back(0.5 * embed_hermitian(problem.objective_blocks[b]));
    }
    for (const auto& c : problem.constraints) {
        LinearConstraint ec;
        ec.sense = c.sense;
        ec.rhs = c.rhs;
        ec.scalar_terms = c.scalar_terms;
        for (const auto& t : c.block_terms)
            ec.block_terms.push_back({t.block, 0.5 * embed_hermitian(t.matrix)});
        out.constraints.push_back(std::move(ec));
    }
    return out;
}

ConicSolution unembed_solution(const ConicProblem& original, const ConicSolution& embedded) {
    if (embedded.blocks.size() != original.blocks.size())
        throw std::invalid_argument("embedded solution block count mismatch");
    ConicSolution out;
    out.scalars = embedded.scalars;
    out.blocks.reserve(original.blocks.size());
    for (size_t b = 0; b < original.blocks.size(); ++b) {
        if (embedded.blocks[b].rows() != 2 * original.blocks[b].dimension)
            throw std::invalid_argument("embedded block dimension mismatch");
        out.blocks.push_back(unembed_symmetric(embedded.blocks[b].real()));
    }
    out.objective = objective_value(original, out);
    return out;
}

ConicProblem lower_lmis(const ConicProblem& problem) {
    problem.validate();
    ConicProblem out = problem;
    out.lmis.clear();

    for (size_t l = 0; l < problem.lmis.size(); ++l) {
        const auto& lmi = problem.lmis[l];
        const Eigen::MatrixXcd& panel = lmi.panel;
        const int m = static_cast<int>(panel.cols());
        const int slack =
            out.add_block(problem.blocks[lmi.block].name + ".lmi" + std::to_string(l), m);

        // Pin S = x I - M^H X M entrywise:
        //   Re/Im (M^H X M)_{pq} = tr(X * Bre/Bim) with the Hermitian pickers
        //   built from panel columns, and likewise for S with unit vectors.
        for (int p = 0; p < m; ++p) {
            for (int q = p; q < m; ++q) {
                const Eigen::VectorXcd mp = panel.col(p);
                const Eigen::VectorXcd mq = panel.col(q);

                {
                    LinearConstraint c;
                    c.sense = Sense::Equal;
                    c.rhs = 0.0;
                    Eigen::MatrixXcd picker_x = 0.5 * (mq * mp.adjoint() + mp * mq.adjoint());
                    Eigen::MatrixXcd picker_s = Eigen::MatrixXcd::Zero(m, m);
                    picker_s(p, q) += 0.5;
                    picker_s(q, p) += 0.5;
                    c.block_terms.push_back({lmi.block, std::move(picker_x)});
                    c.block_terms.push_back({slack, std::move(picker_s)});
                    if (p == q)
                        c.scalar_terms.push_back({lmi.scalar, -1.0});
                    out.constraints.push_back(std::move(c));
                }
                if (p != q) {
                    LinearConstraint c;
                    c.sense = Sense::Equal;
                    c.rhs = 0.0;
                    const std::complex<double> half_over_i(0.0, -0.5);
                    Eigen::MatrixXcd picker_x =
                        half_over_i * (mq * mp.adjoint() - mp * mq.adjoint());
                    Eigen::MatrixXcd picker_s = Eigen::MatrixXcd::Zero(m, m);
                    picker_s(p, q) = std::complex<double>(0.0, 0.5);
                    picker_s(q, p) = std::complex<double>(0.0, -0.5);
                    c.block_terms.push_back({lmi.block, std::move(picker_x)});
                    c.block_terms.push_back({slack, std::move(picker_s)});
                    out.constraints.push_back(std::move(c));
                }
            }
        }
    }
    return out;
}

} // namespace isacbf::conic
