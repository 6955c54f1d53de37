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
// Iterative rank minimization on top of the semidefinite relaxation. Each
// round solves the power problem with a penalty phi * r, where the LMIs
// r I - V_k^H W_k V_k >= 0 measure how much energy the W_k carry outside
// their dominant eigendirection; V_k spans the trailing eigenvectors of the
// previous iterate, and phi grows geometrically so r is squeezed to zero.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "isacbf/irm.hpp"

namespace isacbf {

void IRMParams::validate() const {
    if (!(initial_weight > 0))
        throw std::invalid_argument("initial penalty weight must be positive");
    if (!(weight_step > 1))
        throw std::invalid_argument("penalty growth factor must exceed 1");
    if (!(rank_threshold > 0))
        throw std::invalid_argument("rank threshold must be positive");
    if (max_iterations < 1)
        throw std::invalid_argument("at least one penalized iteration must be allowed");
    if (!(rank_one_tol > 0) || !(rank_one_tol < 1))
        throw std::invalid_argument("rank-one tolerance must lie in (0, 1)");
    solver.validate();
}

Eigen::MatrixXcd null_eigvecs(const HermitianMatrix& w) {
    if (w.rows() < 2 || w.rows() != w.cols())
        throw std::invalid_argument("eigenvector panel needs a square matrix of size >= 2");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(w);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed");
    return eig.eigenvectors().leftCols(w.rows() - 1);
}

double rank_one_ratio(const HermitianMatrix& w) {
    if (w.rows() < 1 || w.rows() != w.cols())
        throw std::invalid_argument("rank-one ratio needs a square matrix");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(w, Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues(); // ascending
    const double top = ev(ev.size() - 1);
    if (!(top > 0))
        throw std::invalid_argument("rank-one ratio of a non-positive matrix is undefined");
    if (ev.size() == 1)
        return 0.0;
    return std::max(ev(ev.size() - 2), 0.0) / top;
}

std::vector<ComplexVector> extract_beamformers(const std::vector<HermitianMatrix>& covariances,
                                               double rank_one_tol) {
    std::vector<ComplexVector> vectors;
    for (const auto& w : covariances) {
        const double ratio = rank_one_ratio(w);
        if (ratio > rank_one_tol)
            throw std::runtime_error(
                "covariance is not rank one within tolerance (trailing/leading eigenvalue "
                "ratio " +
                std::to_string(ratio) + "); dominant eigendirection would be ambiguous");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(w);
        const Eigen::Index last = eig.eigenvalues().size() - 1;
        ComplexVector v = std::sqrt(std::max(eig.eigenvalues()(last), 0.0)) *
                          eig.eigenvectors().col(last);

        Eigen::Index pivot = 0;
        v.cwiseAbs().maxCoeff(&pivot);
        const std::complex<double> entry = v(pivot);
        if (std::abs(entry) > 0)
            v *= std::conj(entry) / std::abs(entry);
        vectors.push_back(std::move(v));
    }
    return vectors;
}

namespace {

double max_rank_one_ratio(const std::vector<HermitianMatrix>& covariances) {
    double worst = 0.0;
    for (const auto& w : covariances)
        worst = std::max(worst, rank_one_ratio(w));
    return worst;
}

double max_top_eigenvalue(const std::vector<HermitianMatrix>& covariances) {
    double top = 0.0;
    for (const auto& w : covariances) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(w, Eigen::EigenvaluesOnly);
        top = std::max(top, eig.eigenvalues().maxCoeff());
    }
    return top;
}

} // namespace

IRMResult run_irm(const Scenario& scenario, const IRMParams& params,
                  const FormulationOptions& options) {
    params.validate();
    const DesiredBeampattern pattern = build_desired_pattern(scenario);
    const P3Spec spec = make_p3_spec(scenario, pattern, options);

    IRMResult result;

    auto [sdr_solution, sdr_report] = conic::solve(build_p3(spec), params.solver);
    result.reports.push_back(sdr_report);
    result.sdr_status = sdr_report.status;
    if (sdr_report.status != conic::SolveStatus::optimal)
        return result;

    result.sdr_set = extract_solution(spec, sdr_solution);
    result.sdr_power_mw = total_power(result.sdr_set);

    if (max_rank_one_ratio(result.sdr_set.user_covariances) <= params.rank_one_tol) {
        result.set = result.sdr_set;
        result.set.beamformers =
            extract_beamformers(result.set.user_covariances, params.rank_one_tol);
        result.converged = true;
        result.iterations = 0;
        result.final_power_mw = result.sdr_power_mw;
        return result;
    }

    BeamformerSet current = result.sdr_set;
    double weight = params.initial_weight;

    for (int iteration = 1; iteration <= params.max_iterations; ++iteration) {
        std::vector<Eigen::MatrixXcd> panels;
        for (const auto& w : current.user_covariances)
            panels.push_back(null_eigvecs(w));

        auto [solution, report] = conic::solve(build_p4(spec, panels, weight), params.solver);
        result.reports.push_back(report);
        if (report.status != conic::SolveStatus::optimal) {
            result.set = current;
            result.final_power_mw = total_power(current);
            return result;
        }

        current = extract_solution(spec, solution);
        const double relaxation = solution.scalars[0];
        const double power = total_power(current);

        result.trace.push_back({iteration, weight, relaxation, power});
        result.iterations = iteration;
        result.final_relaxation = relaxation;

        double residual = relaxation;
        if (!params.absolute_residual) {
            const double top = max_top_eigenvalue(current.user_covariances);
            residual = top > 0 ? relaxation / top : relaxation;
        }
        if (residual * residual <= params.rank_threshold &&
            max_rank_one_ratio(current.user_covariances) <= params.rank_one_tol) {
            result.converged = true;
            break;
        }
        weight *= params.weight_step;
    }

    result.set = current;
    result.final_power_mw = total_power(current);
    if (result.converged)
        result.set.beamformers =
            extract_beamformers(result.set.user_covariances, params.rank_one_tol);
    return result;
}

std::string iteration_trace_csv(const IRMResult& result) {
    auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.9g", v);
        return std::string(buf);
    };
    std::string out = "iter,phi,r,power_mW\n";
    for (const auto& row : result.trace)
        out += std::to_string(row.iteration) + "," + num(row.weight) + "," +
               num(row.relaxation) + "," + num(row.power_mw) + "\n";
    return out;
}

} // namespace isacbf
