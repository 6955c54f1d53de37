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
// Dense primal-dual interior-point solver. The public problem (Hermitian
// blocks, scalars, mixed-sense constraints, LMIs) is rewritten into the
// standard form
//
//     min sum_b <C_b, X_b>   s.t.  sum_b <A_{i,b}, X_b> = b_i,  X_b >= 0
//
// over real symmetric blocks: LMIs are lowered to slack blocks with equality
// links, Hermitian blocks pass through the real embedding, scalars become
// 1x1 blocks, and inequalities pick up 1x1 slack blocks. The iteration is an
// infeasible-start Mehrotra predictor-corrector with the HKM direction; the
// Schur complement is assembled densely per block and factored by Cholesky.

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "isacbf/conic/embedding.hpp"
#include "isacbf/conic/solve.hpp"

namespace isacbf::conic {

void SolverOptions::validate() const {
    if (!(gap_tol > 0) || !(feas_tol > 0))
        throw std::invalid_argument("solver tolerances must be positive");
    if (max_iterations < 1)
        throw std::invalid_argument("solver needs at least one iteration");
    if (backend != "dense-ipm")
        throw std::invalid_argument("unknown solver backend '" + backend + "'");
}

std::string to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::numerical_failure: return "numerical_failure";
    }
    return "unknown";
}

namespace {

// One coefficient of the standard-form constraint matrix, with an explicit
// entry list when the matrix is sparse enough to shortcut trace products.
struct StdTerm {
    int constraint = -1;
    Eigen::MatrixXd a;
    std::vector<std::tuple<int, int, double>> entries; // used when sparse
    bool sparse = false;
};

struct StandardProblem {
    std::vector<int> dims;
    std::vector<Eigen::MatrixXd> cost;            // C_b
    std::vector<std::vector<StdTerm>> block_terms; // per block, ordered by constraint
    Eigen::VectorXd rhs;
    int num_constraints() const { return static_cast<int>(rhs.size()); }
};

constexpr int kSparseEntryLimit = 12;

void finalize_term(StdTerm& term) {
    int nnz = 0;
    for (int c = 0; c < term.a.cols() && nnz <= kSparseEntryLimit; ++c)
        for (int r = 0; r < term.a.rows(); ++r)
            if (term.a(r, c) != 0.0)
                ++nnz;
    if (nnz <= kSparseEntryLimit) {
        term.sparse = true;
        for (int c = 0; c < term.a.cols(); ++c)
            for (int r = 0; r < term.a.rows(); ++r)
                if (term.a(r, c) != 0.0)
                    term.entries.emplace_back(r, c, term.a(r, c));
    }
}

// tr(A * T) for symmetric A; T need not be symmetric.
double trace_product(const StdTerm& term, const Eigen::MatrixXd& t) {
    if (term.sparse) {
        double v = 0.0;
        for (const auto& [r, c, val] : term.entries)
            v += val * t(r, c);
        return v;
    }
    return term.a.cwiseProduct(t).sum();
}

struct Iterate {
    std::vector<Eigen::MatrixXd> x, z;
    Eigen::VectorXd y;
};

double frob_total(const std::vector<Eigen::MatrixXd>& ms) {
    double sq = 0.0;
    for (const auto& m : ms)
        sq += m.squaredNorm();
    return std::sqrt(sq);
}

// Largest alpha in (0, 1] with S + alpha * dS staying PSD, damped by tau.
double psd_step_length(const Eigen::MatrixXd& s, const Eigen::MatrixXd& ds, double tau) {
    Eigen::LLT<Eigen::MatrixXd> llt(s);
    if (llt.info() != Eigen::Success) {
        Eigen::MatrixXd jittered = s;
        jittered.diagonal().array() += 1e-12 * std::max(1.0, s.trace() / s.rows());
        llt.compute(jittered);
        if (llt.info() != Eigen::Success)
            return 0.0;
    }
    Eigen::MatrixXd w = llt.matrixL().solve(ds);
    w = llt.matrixL().solve(w.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (w + w.transpose()),
                                                       Eigen::EigenvaluesOnly);
    const double lambda_min = eig.eigenvalues().minCoeff();
    if (lambda_min >= 0)
        return 1.0;
    return std::min(1.0, -tau / lambda_min);
}

class StandardIpm {
  public:
    StandardIpm(const StandardProblem& p, const SolverOptions& opt) : p_(p), opt_(opt) {
        total_dim_ = 0;
        for (int d : p_.dims)
            total_dim_ += d;
        norm_rhs_ = p_.rhs.norm();
        norm_cost_ = frob_total(p_.cost);
    }

    SolverReport run(Iterate& it) {
        const auto t0 = std::chrono::steady_clock::now();
        SolverReport report;
        initialize(it);

        const int m = p_.num_constraints();
        Eigen::VectorXd rp(m);
        std::vector<Eigen::MatrixXd> rd(p_.dims.size());

        for (int iter = 0; iter <= opt_.max_iterations; ++iter) {
            const double mu = complementarity(it);
            residuals(it, rp, rd);
            const double primal_res = rp.norm() / (1.0 + norm_rhs_);
            const double dual_res = frob_total(rd) / (1.0 + norm_cost_);
            const double pobj = dot_cost(it.x);
            const double dobj = p_.rhs.dot(it.y);
            const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));

            report.iterations = iter;
            report.duality_gap = gap;
            report.primal_residual = primal_res;
            report.dual_residual = dual_res;

            if (opt_.verbose)
                std::fprintf(stderr, "ipm %3d mu=%.3e pres=%.3e dres=%.3e gap=%.3e pobj=%+.9e\n",
                             iter, mu, primal_res, dual_res, gap, pobj);

            if (primal_res <= opt_.feas_tol && dual_res <= opt_.feas_tol && gap <= opt_.gap_tol) {
                report.status = SolveStatus::optimal;
                break;
            }
            if (iter >= 3 && primal_res > 10 * opt_.feas_tol && primal_infeasible(it)) {
                report.status = SolveStatus::infeasible;
                break;
            }
            if (iter >= 3 && dual_res > 10 * opt_.feas_tol && dual_infeasible(it, rp)) {
                report.status = SolveStatus::unbounded;
                break;
            }
            if (iter == opt_.max_iterations) {
                report.status = SolveStatus::max_iterations;
                break;
            }
            if (!step(it, rp, rd, mu)) {
                report.status = SolveStatus::numerical_failure;
                break;
            }
            if (!finite(it)) {
                report.status = SolveStatus::numerical_failure;
                break;
            }
        }
        report.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return report;
    }

  private:
    void initialize(Iterate& it) const {
        double b_over_a = 1.0;
        for (int i = 0; i < p_.num_constraints(); ++i)
            b_over_a = std::max(b_over_a, std::abs(p_.rhs(i)));
        const double max_dim = static_cast<double>(total_dim_);
        const double xi_p = std::max({10.0, std::sqrt(max_dim), 10.0 * b_over_a});
        const double xi_d = std::max({10.0, std::sqrt(max_dim), 10.0 * norm_cost_});

        it.x.clear();
        it.z.clear();
        for (int d : p_.dims) {
            it.x.push_back(xi_p * Eigen::MatrixXd::Identity(d, d));
            it.z.push_back(xi_d * Eigen::MatrixXd::Identity(d, d));
        }
        it.y = Eigen::VectorXd::Zero(p_.num_constraints());
    }

    double complementarity(const Iterate& it) const {
        double sum = 0.0;
        for (size_t b = 0; b < p_.dims.size(); ++b)
            sum += it.x[b].cwiseProduct(it.z[b]).sum();
        return sum / total_dim_;
    }

    double dot_cost(const std::vector<Eigen::MatrixXd>& x) const {
        double v = 0.0;
        for (size_t b = 0; b < p_.dims.size(); ++b)
            v += p_.cost[b].cwiseProduct(x[b]).sum();
        return v;
    }

    void residuals(const Iterate& it, Eigen::VectorXd& rp,
                   std::vector<Eigen::MatrixXd>& rd) const {
        rp = p_.rhs;
        for (size_t b = 0; b < p_.dims.size(); ++b)
            for (const auto& term : p_.block_terms[b])
                rp(term.constraint) -= trace_product(term, it.x[b]);
        for (size_t b = 0; b < p_.dims.size(); ++b) {
            rd[b] = p_.cost[b] - it.z[b];
            for (const auto& term : p_.block_terms[b])
                rd[b].noalias() -= it.y(term.constraint) * term.a;
        }
    }

    bool finite(const Iterate& it) const {
        if (!it.y.allFinite())
            return false;
        for (size_t b = 0; b < p_.dims.size(); ++b)
            if (!it.x[b].allFinite() || !it.z[b].allFinite())
                return false;
        return true;
    }

    // Farkas certificate: a dual direction y with A^T(y) numerically NSD and
    // b^T y decisively positive proves primal infeasibility, since a feasible
    // X would give 0 <= <-A^T(y), X> = -b^T y < 0. The strength floor on
    // b^T y / ||y||_inf guards against false certificates from merely large
    // dual iterates: a feasible problem can only break it when its smallest
    // feasible trace exceeds strength / feas_tol (1e4 in rescaled units).
    bool primal_infeasible(const Iterate& it) const {
        const double ynorm = it.y.lpNorm<Eigen::Infinity>();
        if (!(ynorm > 0))
            return false;
        const Eigen::VectorXd yhat = it.y / ynorm;
        if (p_.rhs.dot(yhat) < 1e-4)
            return false;
        for (size_t b = 0; b < p_.dims.size(); ++b) {
            Eigen::MatrixXd zhat = Eigen::MatrixXd::Zero(p_.dims[b], p_.dims[b]);
            for (const auto& term : p_.block_terms[b])
                zhat.noalias() -= yhat(term.constraint) * term.a;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(zhat, Eigen::EigenvaluesOnly);
            if (eig.eigenvalues().minCoeff() < -opt_.feas_tol)
                return false;
        }
        return true;
    }

    // Improving-ray certificate: X / ||X|| with A(X) numerically zero and a
    // strictly negative objective rate proves dual infeasibility (objective
    // unbounded below). A false positive would need a dual solution of norm
    // >= 1e-2 / feas_tol, far beyond this solver's operating range, and the
    // caller additionally gates this on the dual residual being stuck.
    bool dual_infeasible(const Iterate& it, const Eigen::VectorXd& rp) const {
        const double neg_obj = -dot_cost(it.x);
        if (neg_obj <= 0)
            return false;
        const double xnorm = frob_total(it.x);
        if (xnorm <= 0)
            return false;
        Eigen::VectorXd ax = p_.rhs - rp; // A(X)
        return ax.norm() <= opt_.feas_tol * xnorm &&
               neg_obj >= 1e-2 * std::max(1.0, norm_cost_) * xnorm;
    }

    struct Direction {
        std::vector<Eigen::MatrixXd> dx, dz;
        Eigen::VectorXd dy;
    };

    // Cholesky of the Schur complement with Jacobi equilibration and
    // escalating diagonal jitter; solves are iteratively refined against the
    // original matrix to recover digits lost to the extreme conditioning
    // near convergence (the matrix grows as 1 / mu^2).
    class SchurSolver {
      public:
        bool factor(Eigen::MatrixXd m) {
            m_ = std::move(m);
            scale_ = m_.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
            Eigen::MatrixXd eq = scale_.asDiagonal() * m_ * scale_.asDiagonal();
            llt_.compute(eq);
            double delta = 1e-14; // relative: the equilibrated diagonal is 1
            for (int tries = 0; tries < 8 && llt_.info() != Eigen::Success; ++tries) {
                eq.diagonal().array() += delta;
                llt_.compute(eq);
                delta *= 100;
            }
            return llt_.info() == Eigen::Success;
        }

        Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
            Eigen::VectorXd x = scale_.asDiagonal() * llt_.solve(scale_.asDiagonal() * rhs);
            for (int round = 0; round < 3; ++round) {
                Eigen::VectorXd residual = rhs - m_ * x;
                x += scale_.asDiagonal() * llt_.solve(scale_.asDiagonal() * residual);
            }
            return x;
        }

      private:
        Eigen::MatrixXd m_;
        Eigen::VectorXd scale_;
        Eigen::LLT<Eigen::MatrixXd> llt_;
    };

    // One predictor-corrector step; returns false on factorization breakdown.
    bool step(Iterate& it, const Eigen::VectorXd& rp, const std::vector<Eigen::MatrixXd>& rd,
              double mu) {
        const size_t nb = p_.dims.size();

        std::vector<Eigen::LLT<Eigen::MatrixXd>> zfac(nb);
        std::vector<Eigen::MatrixXd> zinv(nb);
        for (size_t b = 0; b < nb; ++b) {
            zfac[b].compute(it.z[b]);
            if (zfac[b].info() != Eigen::Success) {
                Eigen::MatrixXd jittered = it.z[b];
                jittered.diagonal().array() += 1e-12 * std::max(1.0, it.z[b].trace() / p_.dims[b]);
                zfac[b].compute(jittered);
                if (zfac[b].info() != Eigen::Success)
                    return false;
            }
            zinv[b] = zfac[b].solve(Eigen::MatrixXd::Identity(p_.dims[b], p_.dims[b]));
        }

        SchurSolver schur_llt;
        if (!schur_llt.factor(assemble_schur(it, zinv)))
            return false;

        // Predictor: pure Newton step toward mu = 0.
        Direction aff;
        solve_newton(it, zinv, schur_llt, rp, rd, /*sigma_mu=*/0.0, nullptr, aff);
        const double ap_aff = block_step_length(it.x, aff.dx, 1.0);
        const double ad_aff = block_step_length(it.z, aff.dz, 1.0);

        double mu_aff = 0.0;
        for (size_t b = 0; b < nb; ++b)
            mu_aff += (it.x[b] + ap_aff * aff.dx[b]).cwiseProduct(it.z[b] + ad_aff * aff.dz[b]).sum();
        mu_aff = std::max(mu_aff / total_dim_, 0.0);
        const double ratio = mu > 0 ? mu_aff / mu : 0.0;
        const double sigma = std::clamp(ratio * ratio * ratio, 0.0, 1.0);

        // Corrector: recentered step with the Mehrotra second-order term.
        Direction dir;
        solve_newton(it, zinv, schur_llt, rp, rd, sigma * mu, &aff, dir);

        const double tau = 0.98;
        double ap = block_step_length(it.x, dir.dx, tau);
        double ad = block_step_length(it.z, dir.dz, tau);
        if (ap <= 1e-10 && ad <= 1e-10)
            return false;

        // Apply, backing off if rounding pushed an iterate off the cone.
        for (int attempt = 0; attempt < 6; ++attempt) {
            Iterate trial = it;
            for (size_t b = 0; b < nb; ++b) {
                trial.x[b] += ap * dir.dx[b];
                trial.z[b] += ad * dir.dz[b];
            }
            trial.y += ad * dir.dy;
            bool cone_ok = true;
            for (size_t b = 0; b < nb && cone_ok; ++b)
                cone_ok = Eigen::LLT<Eigen::MatrixXd>(trial.x[b]).info() == Eigen::Success &&
                          Eigen::LLT<Eigen::MatrixXd>(trial.z[b]).info() == Eigen::Success;
            if (cone_ok) {
                it = std::move(trial);
                return true;
            }
            ap *= 0.5;
            ad *= 0.5;
        }
        return false;
    }

    double block_step_length(const std::vector<Eigen::MatrixXd>& s,
                             const std::vector<Eigen::MatrixXd>& ds, double tau) const {
        double alpha = 1.0;
        for (size_t b = 0; b < s.size(); ++b)
            alpha = std::min(alpha, psd_step_length(s[b], ds[b], tau));
        return alpha;
    }

    // M_ij = sum_b tr(A_i Zinv A_j X); symmetric positive definite.
    Eigen::MatrixXd assemble_schur(const Iterate& it, const std::vector<Eigen::MatrixXd>& zinv) {
        const int m = p_.num_constraints();
        Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(m, m);
        Eigen::MatrixXd t, za;
        for (size_t b = 0; b < p_.dims.size(); ++b) {
            const auto& terms = p_.block_terms[b];
            for (size_t j = 0; j < terms.size(); ++j) {
                // T_j = Zinv A_j X; for sparse A_j assembled column-by-column.
                if (terms[j].sparse) {
                    t.setZero(p_.dims[b], p_.dims[b]);
                    for (const auto& [r, c, val] : terms[j].entries)
                        t.noalias() += val * (zinv[b].col(r) * it.x[b].row(c));
                } else {
                    za.noalias() = zinv[b] * terms[j].a;
                    t.noalias() = za * it.x[b];
                }
                for (size_t i = 0; i <= j; ++i) {
                    const double v = trace_product(terms[i], t);
                    schur(terms[i].constraint, terms[j].constraint) += v;
                    if (terms[i].constraint != terms[j].constraint)
                        schur(terms[j].constraint, terms[i].constraint) += v;
                }
            }
        }
        return schur;
    }

    void solve_newton(const Iterate& it, const std::vector<Eigen::MatrixXd>& zinv,
                      const SchurSolver& schur_llt, const Eigen::VectorXd& rp,
                      const std::vector<Eigen::MatrixXd>& rd, double sigma_mu,
                      const Direction* corrector_from, Direction& out) const {
        const size_t nb = p_.dims.size();

        // G_b collects every Delta-y-independent part of DeltaX.
        std::vector<Eigen::MatrixXd> g(nb);
        for (size_t b = 0; b < nb; ++b) {
            Eigen::MatrixXd raw = sigma_mu * zinv[b] - it.x[b];
            raw.noalias() -= it.x[b] * rd[b] * zinv[b];
            if (corrector_from != nullptr)
                raw.noalias() -= corrector_from->dx[b] * corrector_from->dz[b] * zinv[b];
            g[b] = 0.5 * (raw + raw.transpose());
        }

        Eigen::VectorXd rhs = rp;
        for (size_t b = 0; b < nb; ++b)
            for (const auto& term : p_.block_terms[b])
                rhs(term.constraint) -= trace_product(term, g[b]);

        out.dy = schur_llt.solve(rhs);

        out.dz.resize(nb);
        out.dx.resize(nb);
        for (size_t b = 0; b < nb; ++b) {
            out.dz[b] = rd[b];
            for (const auto& term : p_.block_terms[b])
                out.dz[b].noalias() -= out.dy(term.constraint) * term.a;

            // DeltaX = G + X (R_d - DeltaZ) Zinv, but R_d - DeltaZ = A^T(dy).
            Eigen::MatrixXd aty = Eigen::MatrixXd::Zero(p_.dims[b], p_.dims[b]);
            for (const auto& term : p_.block_terms[b])
                aty.noalias() += out.dy(term.constraint) * term.a;
            Eigen::MatrixXd raw = it.x[b] * aty * zinv[b];
            out.dx[b] = g[b] + 0.5 * (raw + raw.transpose());
        }
    }

    const StandardProblem& p_;
    const SolverOptions& opt_;
    int total_dim_ = 0;
    double norm_rhs_ = 0.0;
    double norm_cost_ = 0.0;
};

// ---------------------------------------------------------------------------
// Lowering from the public problem form to the standard form and back.

struct LoweringMap {
    // Per original scalar: index of its slack block (x = lb + s), or indices
    // of the positive/negative parts for free scalars.
    struct ScalarSlot {
        int pos_block = -1;
        int neg_block = -1; // -1 when bounded below
        double offset = 0.0;
    };
    std::vector<ScalarSlot> scalars;
    int num_value_blocks = 0; // embedded blocks carrying matrix variables
    std::vector<double> constraint_scale; // Frobenius normalization factors
    double variable_scale = 1.0;
};

StandardProblem to_standard_form(const ConicProblem& embedded, LoweringMap& map) {
    StandardProblem std_p;
    map.num_value_blocks = static_cast<int>(embedded.blocks.size());

    for (size_t b = 0; b < embedded.blocks.size(); ++b) {
        std_p.dims.push_back(embedded.blocks[b].dimension);
        std_p.cost.push_back(embedded.objective_blocks[b].real());
    }

    // Scalars become 1x1 blocks: bounded x = lb + s with s >= 0, free
    // x = s_pos - s_neg.
    map.scalars.resize(embedded.scalars.size());
    for (size_t s = 0; s < embedded.scalars.size(); ++s) {
        auto& slot = map.scalars[s];
        slot.offset = embedded.scalars[s].lower_bound.value_or(0.0);
        slot.pos_block = static_cast<int>(std_p.dims.size());
        std_p.dims.push_back(1);
        std_p.cost.push_back(Eigen::MatrixXd::Constant(1, 1, embedded.objective_scalars[s]));
        if (!embedded.scalars[s].lower_bound.has_value()) {
            slot.neg_block = static_cast<int>(std_p.dims.size());
            std_p.dims.push_back(1);
            std_p.cost.push_back(Eigen::MatrixXd::Constant(1, 1, -embedded.objective_scalars[s]));
        }
    }

    std_p.block_terms.resize(std_p.dims.size());
    std::vector<double> rhs;

    auto add_term = [&](int block, Eigen::MatrixXd a, int constraint) {
        StdTerm term;
        term.constraint = constraint;
        term.a = std::move(a);
        finalize_term(term);
        std_p.block_terms[block].push_back(std::move(term));
    };

    for (size_t i = 0; i < embedded.constraints.size(); ++i) {
        const auto& c = embedded.constraints[i];
        const int row = static_cast<int>(rhs.size());
        double b_i = c.rhs;

        // Merge repeated references so each (constraint, block) pair carries
        // exactly one coefficient; the Schur assembly relies on that.
        std::map<int, Eigen::MatrixXd> merged_blocks;
        for (const auto& t : c.block_terms) {
            auto [pos, fresh] = merged_blocks.try_emplace(t.block, t.matrix.real());
            if (!fresh)
                pos->second += t.matrix.real();
        }
        std::map<int, double> merged_scalars;
        for (const auto& t : c.scalar_terms)
            merged_scalars[t.scalar] += t.value;

        double frob_sq = 0.0;
        for (const auto& [block, a] : merged_blocks)
            frob_sq += a.squaredNorm();
        for (const auto& [s, v] : merged_scalars)
            frob_sq += v * v;
        if (c.sense != Sense::Equal)
            frob_sq += 1.0; // the slack coefficient
        const double scale = frob_sq > 0 ? std::sqrt(frob_sq) : 1.0;
        map.constraint_scale.push_back(scale);

        for (const auto& [block, a] : merged_blocks)
            add_term(block, a / scale, row);
        for (const auto& [s, v] : merged_scalars) {
            const auto& slot = map.scalars[s];
            add_term(slot.pos_block, Eigen::MatrixXd::Constant(1, 1, v / scale), row);
            if (slot.neg_block >= 0)
                add_term(slot.neg_block, Eigen::MatrixXd::Constant(1, 1, -v / scale), row);
            b_i -= v * slot.offset;
        }
        if (c.sense != Sense::Equal) {
            const int slack = static_cast<int>(std_p.dims.size());
            std_p.dims.push_back(1);
            std_p.cost.push_back(Eigen::MatrixXd::Zero(1, 1));
            std_p.block_terms.emplace_back();
            const double sign = c.sense == Sense::LessEqual ? 1.0 : -1.0;
            add_term(slack, Eigen::MatrixXd::Constant(1, 1, sign / scale), row);
        }
        rhs.push_back(b_i / scale);
    }

    std_p.rhs = Eigen::Map<Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));

    // Pull the solution magnitude toward O(1): X = variable_scale * X'.
    double bmax = std_p.rhs.lpNorm<Eigen::Infinity>();
    map.variable_scale = bmax > 0 ? bmax : 1.0;
    std_p.rhs /= map.variable_scale;
    return std_p;
}

} // namespace

std::pair<ConicSolution, SolverReport> solve(const ConicProblem& problem,
                                             const SolverOptions& options) {
    options.validate();
    problem.validate();

    const ConicProblem lowered = problem.lmis.empty() ? problem : lower_lmis(problem);
    const ConicProblem embedded = real_embedding(lowered);

    LoweringMap map;
    StandardProblem std_p = to_standard_form(embedded, map);

    Iterate it;
    StandardIpm ipm(std_p, options);
    SolverReport report = ipm.run(it);

    ConicSolution solution;
    if (report.status == SolveStatus::optimal || report.status == SolveStatus::max_iterations) {
        // Undo the variable scaling, then strip slacks and unembed.
        ConicSolution embedded_solution;
        for (int b = 0; b < map.num_value_blocks; ++b)
            embedded_solution.blocks.push_back(
                (map.variable_scale * it.x[b]).cast<std::complex<double>>());
        for (const auto& slot : map.scalars) {
            double v = slot.offset + map.variable_scale * it.x[slot.pos_block](0, 0);
            if (slot.neg_block >= 0)
                v -= map.variable_scale * it.x[slot.neg_block](0, 0);
            embedded_solution.scalars.push_back(v);
        }
        ConicSolution lowered_solution = unembed_solution(lowered, embedded_solution);

        solution.scalars = lowered_solution.scalars;
        solution.blocks.assign(lowered_solution.blocks.begin(),
                               lowered_solution.blocks.begin() +
                                   static_cast<long>(problem.blocks.size()));
        solution.objective = objective_value(problem, solution);
    }
    return {std::move(solution), report};
}

} // namespace isacbf::conic
