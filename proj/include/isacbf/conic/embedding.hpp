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

namespace isacbf::conic {

// Hermitian n x n  ->  real symmetric 2n x 2n:
//
//   iota(W) = [ Re W   -Im W ]
//             [ Im W    Re W ]
//
// W is PSD iff iota(W) is PSD, and tr(A W) = tr(iota(A) iota(W)) / 2 for
// Hermitian A, W. Coefficient matrices in an embedded problem are therefore
// scaled by 1/2 so objective and constraint values carry over unchanged.
Eigen::MatrixXd embed_hermitian(const Eigen::MatrixXcd& w);

// Inverse map for a general real symmetric 2n x 2n matrix Y: averages the two
// diagonal n x n sub-blocks into Re W and antisymmetrizes the off-diagonal
// sub-block into Im W. Exact inverse of embed_hermitian on structured input;
// for unstructured symmetric Y it projects onto the embedded subspace, which
// preserves all trace inner products against embedded coefficients.
Eigen::MatrixXcd unembed_symmetric(const Eigen::MatrixXd& y);

// Rewrites every complex Hermitian block as its real symmetric embedding
// (dimension doubled, coefficients halved). Scalars, senses, right-hand
// sides, and objective values are unchanged. The result is still a
// ConicProblem; its matrices simply have zero imaginary parts.
//
// Pre: problem has no LMI constraints (lower them first).
ConicProblem real_embedding(const ConicProblem& problem);

// Maps a solution of real_embedding(problem) back to the original problem's
// complex blocks via unembed_symmetric.
ConicSolution unembed_solution(const ConicProblem& original, const ConicSolution& embedded);

// Rewrites every LMI constraint  x * I_m - M^H X M >= 0  as a fresh Hermitian
// slack block S of dimension m plus m^2 real equality constraints pinning
// S = x * I_m - M^H X M entrywise. The returned problem has no LMI
// constraints; original blocks and scalars keep their indices, slack blocks
// are appended in LMI order.
ConicProblem lower_lmis(const ConicProblem& problem);

} // namespace isacbf::conic
