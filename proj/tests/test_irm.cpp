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

#include <catch2/catch_amalgamated.hpp>

#include "isacbf/irm.hpp"
#include "isacbf/units.hpp"

using namespace isacbf;

namespace {

// User and target share one angle and the beam width is zero, so the optimum
// is the analytic single-beam solution 0.9 * rho / N.
Scenario shared_angle_scenario() {
    Scenario s;
    s.array = ArrayGeometry::half_wavelength(6, 0.95e9);
    UserSpec u;
    u.angle_deg = -30.0;
    u.distance_m = 20.0;
    u.noise_power_mw = dbm_to_mw(-75.0);
    s.users.push_back(u);
    TargetSpec t;
    t.angle_deg = -30.0;
    t.distance_m = 20.0;
    s.targets.push_back(t);
    s.rate_floor_bps_hz = 1.0;
    s.beam_width_deg = 0.0;
    s.target_receive_level_dbm = -13.0;
    return s;
}

} // namespace

TEST_CASE("rank-one ratio is the second-to-first eigenvalue quotient") {
    ComplexVector w(3);
    w << std::complex<double>(1, 0), std::complex<double>(0, 2), std::complex<double>(-1, 0);
    REQUIRE(rank_one_ratio(w * w.adjoint()) < 1e-12);

    HermitianMatrix two = HermitianMatrix::Zero(2, 2);
    two.diagonal() << 2.0, 1.0;
    REQUIRE(rank_one_ratio(two) == Catch::Approx(0.5).epsilon(1e-14));
    REQUIRE(rank_one_ratio(HermitianMatrix::Identity(2, 2)) ==
            Catch::Approx(1.0).epsilon(1e-14));
    REQUIRE_THROWS_AS(rank_one_ratio(HermitianMatrix::Zero(2, 2)), std::invalid_argument);
}

TEST_CASE("trailing eigenvector panel spans everything but the dominant direction") {
    HermitianMatrix w = HermitianMatrix::Zero(3, 3);
    w.diagonal() << 3.0, 2.0, 1.0;
    const Eigen::MatrixXcd panel = null_eigvecs(w);
    REQUIRE(panel.rows() == 3);
    REQUIRE(panel.cols() == 2);
    REQUIRE((panel.adjoint() * panel - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);
    // e_0 is the dominant eigenvector; the panel must be orthogonal to it.
    REQUIRE(panel.row(0).norm() < 1e-12);
    // Projecting w onto the panel keeps exactly the two trailing eigenvalues.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(panel.adjoint() * w * panel);
    REQUIRE(eig.eigenvalues()(0) == Catch::Approx(1.0).epsilon(1e-12));
    REQUIRE(eig.eigenvalues()(1) == Catch::Approx(2.0).epsilon(1e-12));

    REQUIRE_THROWS_AS(null_eigvecs(HermitianMatrix::Identity(1, 1)), std::invalid_argument);
}

TEST_CASE("beamformer extraction recovers the vector up to the fixed phase gauge") {
    ComplexVector w(2);
    w << std::complex<double>(1, 0), std::complex<double>(0, 2);
    HermitianMatrix single = 4.0 * ComplexVector::Unit(2, 0) *
                             ComplexVector::Unit(2, 0).adjoint();
    const auto vectors = extract_beamformers({w * w.adjoint(), single});
    REQUIRE(vectors.size() == 2);

    // sqrt(5) * (1, 2i)/sqrt(5) = (1, 2i); the pivot (largest-magnitude entry,
    // index 1) is rotated onto the positive real axis: (1, 2i) -> (-i, 2).
    REQUIRE(vectors[0](0).real() == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(vectors[0](0).imag() == Catch::Approx(-1.0).epsilon(1e-12));
    REQUIRE(vectors[0](1).real() == Catch::Approx(2.0).epsilon(1e-12));
    REQUIRE(vectors[0](1).imag() == Catch::Approx(0.0).margin(1e-12));
    REQUIRE((vectors[0] * vectors[0].adjoint() - w * w.adjoint()).norm() < 1e-12);

    REQUIRE(vectors[1](0) == std::complex<double>(2.0, 0.0));
    REQUIRE(vectors[1](1) == std::complex<double>(0.0, 0.0));

    // An eigenvalue tie has no meaningful dominant direction.
    REQUIRE_THROWS_AS(extract_beamformers({HermitianMatrix::Identity(2, 2)}),
                      std::runtime_error);
}

TEST_CASE("a rank-one relaxation solution returns without penalized iterations") {
    const Scenario s = shared_angle_scenario();
    const IRMResult r = run_irm(s);

    REQUIRE(r.sdr_status == conic::SolveStatus::optimal);
    REQUIRE(r.converged);
    REQUIRE(r.iterations == 0);
    REQUIRE(r.final_relaxation == 0.0);
    REQUIRE(r.trace.empty());
    REQUIRE(r.reports.size() == 1);
    REQUIRE(r.final_power_mw == r.sdr_power_mw);
    // Analytic optimum 0.9 * 31789.633726531731 / 6.
    REQUIRE(r.final_power_mw == Catch::Approx(4768.4450589797598).epsilon(1e-6));

    REQUIRE(r.set.beamformers.size() == 1);
    REQUIRE(rank_one_ratio(r.set.user_covariances[0]) <= 1e-6);
    REQUIRE(rate(sinr(r.set, 0, s)) >= s.rate_floor_bps_hz - 1e-6);
    const double level = transmit_beampattern(r.set, s.array, -30.0);
    REQUIRE(level >= 0.9 * 31789.633726531731 * (1 - 1e-6));
    REQUIRE(level <= 1.1 * 31789.633726531731 * (1 + 1e-6));

    // Empty trace still yields a well-formed CSV.
    REQUIRE(iteration_trace_csv(r) == "iter,phi,r,power_mW\n");
}

TEST_CASE("a rank-deficient relaxation triggers penalized re-solves that converge") {
    // Mixed distances and a demanding rate floor leave the relaxed optimum
    // rank-deficient, so at least one penalized pass is needed.
    Scenario s;
    s.array = ArrayGeometry::half_wavelength(10, 0.95e9);
    UserSpec u;
    u.angle_deg = 20.0;
    u.distance_m = 20.0;
    u.noise_power_mw = dbm_to_mw(-75.0);
    s.users.push_back(u);
    TargetSpec t;
    t.angle_deg = -30.0;
    t.distance_m = 10.0;
    s.targets.push_back(t);
    s.rate_floor_bps_hz = 19.0;
    s.beam_width_deg = 5.0;
    s.target_receive_level_dbm = -13.0;

    const IRMResult r = run_irm(s);
    REQUIRE(r.converged);
    REQUIRE(r.iterations >= 1);
    REQUIRE(r.trace.size() == static_cast<size_t>(r.iterations));
    REQUIRE(r.reports.size() == static_cast<size_t>(r.iterations) + 1);
    REQUIRE(r.trace[0].weight == 1.0);

    // The relaxation is a lower bound on any rank-one design (up to solver
    // tolerance), and this instance pays a real rank-one premium.
    REQUIRE(r.sdr_power_mw <= r.final_power_mw * (1 + 1e-6));
    REQUIRE(r.final_power_mw == Catch::Approx(1455.2521).epsilon(1e-5));

    REQUIRE(r.set.beamformers.size() == 1);
    REQUIRE(rank_one_ratio(r.set.user_covariances[0]) <= 1e-6);
    REQUIRE(rate(sinr(r.set, 0, s)) >= s.rate_floor_bps_hz - 1e-6);

    const std::string csv = iteration_trace_csv(r);
    REQUIRE(csv.rfind("iter,phi,r,power_mW\n1,1,", 0) == 0);
    REQUIRE(static_cast<int>(std::count(csv.begin(), csv.end(), '\n')) == r.iterations + 1);
}

TEST_CASE("an infeasible scenario is reported, not mangled into a design") {
    // Two elements cannot hold a -13 dBm mainlobe at 0 degrees while staying
    // under ~1 mW one degree away; the pattern is too smooth.
    Scenario s;
    s.array = ArrayGeometry::half_wavelength(2, 0.95e9);
    UserSpec u;
    u.angle_deg = 40.0;
    u.distance_m = 10.0;
    u.noise_power_mw = dbm_to_mw(-75.0);
    s.users.push_back(u);
    TargetSpec t;
    t.angle_deg = 0.0;
    t.distance_m = 10.0;
    s.targets.push_back(t);
    s.rate_floor_bps_hz = 1.0;
    s.beam_width_deg = 0.0;
    s.target_receive_level_dbm = -13.0;
    s.sidelobe_region_enabled = true;
    s.sidelobe_level_mw = 1.0;
    s.sidelobe_tolerance_mw = 0.1;

    const IRMResult r = run_irm(s);
    REQUIRE(r.sdr_status == conic::SolveStatus::infeasible);
    REQUIRE_FALSE(r.converged);
    REQUIRE(r.set.user_covariances.empty());
    REQUIRE(r.reports.size() == 1);
}

TEST_CASE("exhausting the iteration budget reports non-convergence with diagnostics") {
    IRMParams params;
    params.rank_one_tol = 1e-16;   // stricter than the solver can deliver
    params.rank_threshold = 1e-30; // unreachable residual target
    params.max_iterations = 2;

    const IRMResult r = run_irm(shared_angle_scenario(), params);
    REQUIRE(r.sdr_status == conic::SolveStatus::optimal);
    REQUIRE_FALSE(r.converged);
    REQUIRE(r.iterations == 2);
    REQUIRE(r.trace.size() == 2);
    REQUIRE(r.trace[0].weight == 1.0);
    REQUIRE(r.trace[1].weight == 1.5);
    REQUIRE(r.set.beamformers.empty()); // no extraction without convergence
    REQUIRE(r.final_power_mw > 0.0);
}

TEST_CASE("repeated runs are bitwise identical") {
    const Scenario s = shared_angle_scenario();
    const IRMResult a = run_irm(s);
    const IRMResult b = run_irm(s);
    REQUIRE(a.final_power_mw == b.final_power_mw);
    REQUIRE(a.sdr_power_mw == b.sdr_power_mw);
    REQUIRE(a.iterations == b.iterations);
    REQUIRE((a.set.user_covariances[0] - b.set.user_covariances[0]).norm() == 0.0);
    REQUIRE((a.set.radar_covariance - b.set.radar_covariance).norm() == 0.0);
}

TEST_CASE("iteration parameters are validated") {
    IRMParams p;
    REQUIRE_NOTHROW(p.validate());
    SECTION("non-growing weight") {
        p.weight_step = 1.0;
        REQUIRE_THROWS_AS(p.validate(), std::invalid_argument);
    }
    SECTION("zero initial weight") {
        p.initial_weight = 0.0;
        REQUIRE_THROWS_AS(p.validate(), std::invalid_argument);
    }
    SECTION("zero rank threshold") {
        p.rank_threshold = 0.0;
        REQUIRE_THROWS_AS(p.validate(), std::invalid_argument);
    }
    SECTION("no iteration budget") {
        p.max_iterations = 0;
        REQUIRE_THROWS_AS(p.validate(), std::invalid_argument);
    }
    SECTION("rank-one tolerance out of range") {
        p.rank_one_tol = 1.0;
        REQUIRE_THROWS_AS(p.validate(), std::invalid_argument);
    }
    SECTION("bad solver options propagate") {
        p.solver.gap_tol = 0.0;
        REQUIRE_THROWS_AS(p.validate(), std::invalid_argument);
    }
}
