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
// Plain-text problem dump; the grammar lives in docs/problem-dump-format.md.
// Values are printed with %.17g so a round trip through text is lossless.

#include <cstdio>
#include <string>

#include "isacbf/conic/problem.hpp"

namespace isacbf::conic {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_matrix(std::string& out, const Eigen::MatrixXcd& m) {
    out += "matrix " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const std::complex<double> v = m(r, c);
            if (v != 0.0)
                out += "entry " + std::to_string(r) + " " + std::to_string(c) + " " +
                       num(v.real()) + " " + num(v.imag()) + "\n";
        }
    out += "end-matrix\n";
}

const char* sense_token(Sense s) {
    switch (s) {
    case Sense::LessEqual: return "le";
    case Sense::GreaterEqual: return "ge";
    case Sense::Equal: return "eq";
    }
    return "?";
}

} // namespace

std::string dump_problem(const ConicProblem& problem) {
    std::string out = "conic-problem v1\n";

    out += "blocks " + std::to_string(problem.blocks.size()) + "\n";
    for (size_t b = 0; b < problem.blocks.size(); ++b)
        out += "block " + std::to_string(b) + " " + problem.blocks[b].name + " " +
               std::to_string(problem.blocks[b].dimension) + "\n";

    out += "scalars " + std::to_string(problem.scalars.size()) + "\n";
    for (size_t s = 0; s < problem.scalars.size(); ++s) {
        out += "scalar " + std::to_string(s) + " " + problem.scalars[s].name;
        if (problem.scalars[s].lower_bound.has_value())
            out += " lower " + num(*problem.scalars[s].lower_bound);
        else
            out += " free";
        out += "\n";
    }

    for (size_t b = 0; b < problem.blocks.size(); ++b)
        if (!problem.objective_blocks[b].isZero(0.0)) {
            out += "objective-block " + std::to_string(b) + "\n";
            append_matrix(out, problem.objective_blocks[b]);
        }
    for (size_t s = 0; s < problem.scalars.size(); ++s)
        if (problem.objective_scalars[s] != 0.0)
            out += "objective-scalar " + std::to_string(s) + " " +
                   num(problem.objective_scalars[s]) + "\n";

    out += "constraints " + std::to_string(problem.constraints.size()) + "\n";
    for (size_t i = 0; i < problem.constraints.size(); ++i) {
        const auto& c = problem.constraints[i];
        out += "constraint " + std::to_string(i) + " " + sense_token(c.sense) + " " +
               num(c.rhs) + "\n";
        for (const auto& t : c.block_terms) {
            out += "block-term " + std::to_string(t.block) + "\n";
            append_matrix(out, t.matrix);
        }
        for (const auto& t : c.scalar_terms)
            out += "scalar-term " + std::to_string(t.scalar) + " " + num(t.value) + "\n";
        out += "end-constraint\n";
    }

    out += "lmis " + std::to_string(problem.lmis.size()) + "\n";
    for (size_t l = 0; l < problem.lmis.size(); ++l) {
        out += "lmi " + std::to_string(l) + " scalar " + std::to_string(problem.lmis[l].scalar) +
               " block " + std::to_string(problem.lmis[l].block) + "\n";
        append_matrix(out, problem.lmis[l].panel);
        out += "end-lmi\n";
    }

    out += "end-problem\n";
    return out;
}

} // namespace isacbf::conic
