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

#include "isacbf/conic/solve.hpp"
#include "isacbf/formulation.hpp"
#include "isacbf/scene.hpp"
#include "isacbf/units.hpp"

using namespace isacbf;

namespace {

Scenario small_scenario() {
    Scenario s;
    s.array = ArrayGeometry::half_wavelength(4, 0.95e9);
    UserSpec u;
    u.angle_deg = 20.0;
    u.distance_m = 20.0;
    u.noise_power_mw = dbm_to_mw(-75.0);
    s.users.push_back(u);
    TargetSpec t;
    t.angle_deg = -30.0;
    t.distance_m = 20.0;
    s.targets.push_back(t);
    s.rate_floor_bps_hz = 1.0;
    s.beam_width_deg = 2.0;
    s.target_receive_level_dbm = -13.0;
    return s;
}

} // namespace

TEST_CASE("SDP data carries channel Grams, level windows and the SINR floor") {
    const Scenario s = small_scenario();
    const DesiredBeampattern pattern = build_desired_pattern(s);
    const P3Spec spec = make_p3_spec(s, pattern);

    REQUIRE(spec.num_antennas == 4);
    REQUIRE(spec.num_users() == 1);
    REQUIRE(spec.num_samples() == 3); // -31, -30, -29 at 1-degree resolution
    REQUIRE(spec.with_radar_covariance);

    // 2^1 - 1 = 1.
    REQUIRE(spec.sinr_floor == Catch::Approx(1.0).epsilon(1e-15));

    // H = h h^H with h = sqrt(beta) a; element 0 of the steering vector is 1,
    // so H(0,0) = beta = 1.5765744202613436e-06 at 20 m / 0.95 GHz, and
    // tr(H) = N beta.
    const double beta = 1.5765744202613436e-06;
    REQUIRE(spec.user_gram[0](0, 0).real() == Catch::Approx(beta).epsilon(1e-12));
    REQUIRE(spec.user_gram[0](0, 0).imag() == 0.0);
    REQUIRE(spec.user_gram[0].trace().real() == Catch::Approx(4 * beta).epsilon(1e-12));
    REQUIRE((spec.user_gram[0] - spec.user_gram[0].adjoint()).norm() < 1e-18);

    // Pattern Grams are plain steering outer products: tr = ||a||^2 = N, and
    // the first column is the steering vector itself. At -30 degrees,
    // a_1 = exp(i pi cos(-30)).
    REQUIRE(pattern.samples[1].angle_deg == -30.0);
    REQUIRE(spec.sample_gram[1].trace().real() == Catch::Approx(4.0).epsilon(1e-14));
    REQUIRE(spec.sample_gram[1](1, 0).real() ==
            Catch::Approx(-0.91272419810217809).epsilon(1e-14));
    REQUIRE(spec.sample_gram[1](1, 0).imag() ==
            Catch::Approx(0.40857623303214285).epsilon(1e-14));

    // Desired level at 20 m: rho = Gamma / beta = 31789.633726531731 mW, with
    // a +-10% window.
    const double rho = 31789.633726531731;
    for (int m = 0; m < spec.num_samples(); ++m) {
        REQUIRE(spec.level_lower_mw[m] == Catch::Approx(0.9 * rho).epsilon(1e-12));
        REQUIRE(spec.level_upper_mw[m] == Catch::Approx(1.1 * rho).epsilon(1e-12));
    }
}

TEST_CASE("channel-referenced pattern variant rescales Grams and levels together") {
    const Scenario s = small_scenario();
    const DesiredBeampattern pattern = build_desired_pattern(s);
    const P3Spec transmit = make_p3_spec(s, pattern);
    FormulationOptions options;
    options.channel_inclusive_pattern = true;
    const P3Spec channel = make_p3_spec(s, pattern, options);

    const double beta = pattern.samples[0].pathloss;
    REQUIRE(beta == Catch::Approx(1.5765744202613436e-06).epsilon(1e-12));
    for (int m = 0; m < transmit.num_samples(); ++m) {
        REQUIRE((channel.sample_gram[m] - beta * transmit.sample_gram[m]).norm() <
                1e-12 * transmit.sample_gram[m].norm());
        REQUIRE(channel.level_lower_mw[m] ==
                Catch::Approx(beta * transmit.level_lower_mw[m]).epsilon(1e-12));
        REQUIRE(channel.level_upper_mw[m] ==
                Catch::Approx(beta * transmit.level_upper_mw[m]).epsilon(1e-12));
    }

    // Same physical requirement: both problems reach the same minimum power.
    const auto [sol_t, rep_t] = conic::solve(build_p3(transmit));
    const auto [sol_c, rep_c] = conic::solve(build_p3(channel));
    REQUIRE(rep_t.status == conic::SolveStatus::optimal);
    REQUIRE(rep_c.status == conic::SolveStatus::optimal);
    REQUIRE(sol_c.objective == Catch::Approx(sol_t.objective).epsilon(1e-6));
}

TEST_CASE("relaxed problem has one block per covariance and K + 2M constraints") {
    const Scenario s = small_scenario();
    const P3Spec spec = make_p3_spec(s, build_desired_pattern(s));
    const conic::ConicProblem p3 = build_p3(spec);

    const int k_users = 1, m_samples = 3, n = 4;
    REQUIRE(p3.blocks.size() == static_cast<size_t>(k_users + 1));
    REQUIRE(p3.blocks[0].name == "W0");
    REQUIRE(p3.blocks[1].name == "Rd");
    for (const auto& b : p3.blocks) REQUIRE(b.dimension == n);
    REQUIRE(p3.scalars.empty());
    REQUIRE(p3.lmis.empty());

    // Power objective: identity weight on every covariance block.
    for (const auto& c : p3.objective_blocks)
        REQUIRE((c - Eigen::MatrixXcd::Identity(n, n)).norm() == 0.0);

    REQUIRE(p3.constraints.size() == static_cast<size_t>(k_users + 2 * m_samples));

    // SINR row: own Gram with weight +1, radar leak with weight -floor,
    // right-hand side floor * sigma^2, sense >=.
    const auto& sinr_row = p3.constraints[0];
    REQUIRE(sinr_row.sense == conic::Sense::GreaterEqual);
    REQUIRE(sinr_row.rhs == Catch::Approx(spec.sinr_floor * spec.noise_mw[0]).epsilon(1e-15));
    REQUIRE(sinr_row.block_terms.size() == 2);
    REQUIRE((sinr_row.block_terms[0].matrix - spec.user_gram[0]).norm() == 0.0);
    REQUIRE((sinr_row.block_terms[1].matrix + spec.sinr_floor * spec.user_gram[0]).norm() <
            1e-18);

    // Pattern rows alternate lower (>=) and upper (<=) per sample, and touch
    // every covariance block with the same Gram.
    for (int m = 0; m < m_samples; ++m) {
        const auto& lower = p3.constraints[k_users + 2 * m];
        const auto& upper = p3.constraints[k_users + 2 * m + 1];
        REQUIRE(lower.sense == conic::Sense::GreaterEqual);
        REQUIRE(upper.sense == conic::Sense::LessEqual);
        REQUIRE(lower.rhs == Catch::Approx(spec.level_lower_mw[m]).epsilon(1e-15));
        REQUIRE(upper.rhs == Catch::Approx(spec.level_upper_mw[m]).epsilon(1e-15));
        REQUIRE(lower.block_terms.size() == 2);
        for (const auto& term : lower.block_terms)
            REQUIRE((term.matrix - spec.sample_gram[m]).norm() == 0.0);
    }
}

TEST_CASE("dropping the radar covariance removes its block everywhere") {
    const Scenario s = small_scenario();
    FormulationOptions options;
    options.omit_radar_covariance = true;
    const P3Spec spec = make_p3_spec(s, build_desired_pattern(s), options);
    REQUIRE_FALSE(spec.with_radar_covariance);

    const conic::ConicProblem p3 = build_p3(spec);
    REQUIRE(p3.blocks.size() == 1);
    REQUIRE(p3.constraints[0].block_terms.size() == 1); // no radar leak term

    conic::ConicSolution solution;
    solution.blocks = {Eigen::MatrixXcd::Identity(4, 4)};
    const BeamformerSet set = extract_solution(spec, solution);
    REQUIRE(set.radar_covariance.rows() == 4);
    REQUIRE(set.radar_covariance.norm() == 0.0);
}

TEST_CASE("penalized problem adds the relaxation scalar and one LMI per user") {
    const Scenario s = small_scenario();
    const P3Spec spec = make_p3_spec(s, build_desired_pattern(s));
    const Eigen::MatrixXcd panel = Eigen::MatrixXcd::Identity(4, 3);
    const conic::ConicProblem p4 = build_p4(spec, {panel}, 1.5);

    REQUIRE(p4.scalars.size() == 1);
    REQUIRE(p4.scalars[0].name == "r");
    REQUIRE(p4.scalars[0].lower_bound.has_value());
    REQUIRE(*p4.scalars[0].lower_bound == 0.0);
    REQUIRE(p4.objective_scalars == std::vector<double>{1.5});

    REQUIRE(p4.lmis.size() == 1);
    REQUIRE(p4.lmis[0].scalar == 0);
    REQUIRE(p4.lmis[0].block == 0);
    REQUIRE((p4.lmis[0].panel - panel).norm() == 0.0);

    // Linear part is identical to the relaxed problem.
    REQUIRE(p4.constraints.size() == build_p3(spec).constraints.size());

    REQUIRE_THROWS_AS(build_p4(spec, {}, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(build_p4(spec, {panel}, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(build_p4(spec, {Eigen::MatrixXcd::Identity(3, 2)}, 1.0),
                      std::invalid_argument);
}

TEST_CASE("solution extraction symmetrizes blocks and rejects indefinite ones") {
    const Scenario s = small_scenario();
    const P3Spec spec = make_p3_spec(s, build_desired_pattern(s));

    conic::ConicSolution solution;
    Eigen::MatrixXcd raw = Eigen::MatrixXcd::Identity(4, 4);
    raw(0, 1) = std::complex<double>(0.0, 1e-12); // tiny non-Hermitian drift
    solution.blocks = {raw, Eigen::MatrixXcd::Zero(4, 4)};

    const BeamformerSet set = extract_solution(spec, solution);
    REQUIRE((set.user_covariances[0] - set.user_covariances[0].adjoint()).norm() == 0.0);
    REQUIRE((set.user_covariances[0] - 0.5 * (raw + raw.adjoint())).norm() < 1e-18);

    solution.blocks[0] = -Eigen::MatrixXcd::Identity(4, 4);
    REQUIRE_THROWS_AS(extract_solution(spec, solution), std::runtime_error);

    solution.blocks = {raw};
    REQUIRE_THROWS_AS(extract_solution(spec, solution), std::invalid_argument);
}

TEST_CASE("SDP data validation rejects inconsistent instances") {
    const Scenario s = small_scenario();
    P3Spec spec = make_p3_spec(s, build_desired_pattern(s));
    REQUIRE_NOTHROW(spec.validate());

    SECTION("missing noise powers") {
        spec.noise_mw.clear();
        REQUIRE_THROWS_AS(spec.validate(), std::invalid_argument);
    }
    SECTION("empty level window") {
        spec.level_lower_mw[0] = spec.level_upper_mw[0] + 1.0;
        REQUIRE_THROWS_AS(spec.validate(), std::invalid_argument);
    }
    SECTION("wrong Gram dimension") {
        spec.sample_gram[0] = HermitianMatrix::Identity(3, 3);
        REQUIRE_THROWS_AS(spec.validate(), std::invalid_argument);
    }
    SECTION("negative SINR floor") {
        spec.sinr_floor = -1.0;
        REQUIRE_THROWS_AS(spec.validate(), std::invalid_argument);
    }
}

TEST_CASE("single-sample instance reaches the analytic minimum power") {
    // User placed exactly at the target angle, zero beam width: one pattern
    // sample. The cheapest design puts a rank-one beam on the shared angle;
    // the lower window is the binding constraint, so the optimum is
    // 0.9 * rho / N = 0.9 * 31789.633726531731 / 6 = 4768.4450589797598 mW.
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

    const P3Spec spec = make_p3_spec(s, build_desired_pattern(s));
    const auto [solution, report] = conic::solve(build_p3(spec));
    REQUIRE(report.status == conic::SolveStatus::optimal);
    REQUIRE(solution.objective == Catch::Approx(4768.4450589797598).epsilon(1e-6));

    const BeamformerSet set = extract_solution(spec, solution);
    REQUIRE(total_power(set) == Catch::Approx(solution.objective).epsilon(1e-9));
    REQUIRE(transmit_beampattern(set, s.array, -30.0) >=
            0.9 * 31789.633726531731 * (1 - 1e-7));
}
