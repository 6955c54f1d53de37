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

#include "isacbf/scene.hpp"
#include "isacbf/units.hpp"

using namespace isacbf;

namespace {

Scenario reference_scenario() {
    Scenario s;
    s.array = ArrayGeometry::half_wavelength(15, 0.95e9);
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
    s.beam_width_deg = 5.0;
    s.target_receive_level_dbm = -13.0;
    return s;
}

} // namespace

TEST_CASE("half-wavelength geometry derives spacing from the carrier") {
    const ArrayGeometry a = ArrayGeometry::half_wavelength(15, 0.95e9);
    // lambda = 299792458 / 0.95e9 = 0.31557100842105262 m
    REQUIRE(a.wavelength_m() == Catch::Approx(0.31557100842105262).epsilon(1e-15));
    REQUIRE(a.element_spacing_m == Catch::Approx(0.15778550421052631).epsilon(1e-15));
    REQUIRE(a.num_antennas == 15);
}

TEST_CASE("steering vector phases follow the array manifold") {
    const ArrayGeometry a = ArrayGeometry::half_wavelength(4, 0.95e9);
    const ComplexVector v = steering_vector(a, -30.0);
    REQUIRE(v.size() == 4);

    // Element n carries phase 2*pi*(d/lambda)*n*cos(theta) = pi*n*cos(-30deg);
    // cos(-30deg) = 0.86602540378443871, so the n = 1 phase is
    // pi * 0.86602540378443871 = 2.720699046351327 rad.
    REQUIRE(v(0) == std::complex<double>(1.0, 0.0));
    REQUIRE(std::arg(v(1)) == Catch::Approx(2.720699046351327).margin(1e-12));
    REQUIRE(v(1).real() == Catch::Approx(-0.91272419810217809).epsilon(1e-12));
    REQUIRE(v(1).imag() == Catch::Approx(0.40857623303214285).epsilon(1e-12));
    REQUIRE(v(2).real() == Catch::Approx(0.66613092360252824).epsilon(1e-12));
    REQUIRE(v(3).imag() == Catch::Approx(0.95290675997562935).epsilon(1e-12));

    // Unit-modulus entries: squared norm is exactly the antenna count.
    REQUIRE(v.squaredNorm() == Catch::Approx(4.0).epsilon(1e-14));

    // Broadside (0 deg would be endfire here: cos(0) = 1); at +-90 the phase
    // progression vanishes and all entries align.
    const ComplexVector b = steering_vector(a, 89.9999999);
    REQUIRE(b(3).real() == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("free-space pathloss matches the link budget") {
    const double lambda = 0.31557100842105262;
    // beta = lambda^2 / ((4*pi)^2 * d^2) at unit gains, d = 20 m:
    // 0.31557100842105262^2 / (157.91367041742973 * 400) = 1.5765744202613436e-06.
    REQUIRE(pathloss(20.0, 1.0, 1.0, lambda) ==
            Catch::Approx(1.5765744202613436e-06).epsilon(1e-12));
    // Gains scale linearly, distance scales inverse-square.
    REQUIRE(pathloss(10.0, 1.0, 1.0, lambda) ==
            Catch::Approx(4.0 * 1.5765744202613436e-06).epsilon(1e-12));
    REQUIRE(pathloss(20.0, 2.0, 3.0, lambda) ==
            Catch::Approx(6.0 * 1.5765744202613436e-06).epsilon(1e-12));
    REQUIRE_THROWS_AS(pathloss(0.0, 1.0, 1.0, lambda), std::invalid_argument);
}

TEST_CASE("channel vector is the pathloss-scaled steering vector") {
    const Scenario s = reference_scenario();
    const ComplexVector h = channel_vector(s.array, s.users[0]);
    // h^H h = beta * N = 1.5765744202613436e-06 * 15.
    REQUIRE(h.squaredNorm() == Catch::Approx(15 * 1.5765744202613436e-06).epsilon(1e-12));
    const ComplexVector a = steering_vector(s.array, 20.0);
    const std::complex<double> ratio = h(3) / a(3);
    REQUIRE(ratio.real() == Catch::Approx(std::sqrt(1.5765744202613436e-06)).epsilon(1e-12));
    REQUIRE(ratio.imag() == Catch::Approx(0.0).margin(1e-18));
}

TEST_CASE("desired mainlobe level compensates the target pathloss") {
    const Scenario s = reference_scenario();
    // Gamma = -13 dBm => 0.05011872336272722 mW at the target; divided by
    // beta(20 m) the transmit-side level is 31789.633726531731 mW.
    REQUIRE(mainlobe_level_mw(s, s.targets[0]) ==
            Catch::Approx(31789.633726531731).epsilon(1e-12));
    TargetSpec closer;
    closer.angle_deg = -30.0;
    closer.distance_m = 10.0;
    // Half the distance: a quarter of the required level.
    REQUIRE(mainlobe_level_mw(s, closer) ==
            Catch::Approx(31789.633726531731 / 4.0).epsilon(1e-12));
}

TEST_CASE("pattern sampling covers the mainlobe grid points plus the center") {
    Scenario s = reference_scenario();

    SECTION("integer grid, center on grid") {
        // [-32.5, -27.5] contains the integer angles -32..-28; -30 is already
        // among them, so exactly five samples.
        const DesiredBeampattern p = build_desired_pattern(s);
        REQUIRE(p.size() == 5);
        REQUIRE(p.samples.front().angle_deg == -32.0);
        REQUIRE(p.samples.back().angle_deg == -28.0);
        for (int i = 1; i < p.size(); ++i)
            REQUIRE(p.samples[i].angle_deg > p.samples[i - 1].angle_deg);
        for (const auto& sample : p.samples) {
            REQUIRE(sample.level_mw == Catch::Approx(31789.633726531731).epsilon(1e-12));
            REQUIRE(sample.tolerance_mw ==
                    Catch::Approx(0.1 * 31789.633726531731).epsilon(1e-12));
        }
    }
    SECTION("half-degree grid includes the window edges") {
        s.grid_resolution_deg = 0.5;
        // Multiples of 0.5 in [-32.5, -27.5]: 11 points, endpoints included.
        REQUIRE(build_desired_pattern(s).size() == 11);
    }
    SECTION("off-grid center is appended") {
        s.targets[0].angle_deg = -30.3;
        // Integer angles in [-32.8, -27.8] are -32..-28 (5), plus -30.3.
        const DesiredBeampattern p = build_desired_pattern(s);
        REQUIRE(p.size() == 6);
        bool found = false;
        for (const auto& sample : p.samples)
            found = found || sample.angle_deg == -30.3;
        REQUIRE(found);
    }
    SECTION("zero width leaves only the center sample") {
        s.beam_width_deg = 0.0;
        const DesiredBeampattern p = build_desired_pattern(s);
        REQUIRE(p.size() == 1);
        REQUIRE(p.samples[0].angle_deg == -30.0);
    }
}

TEST_CASE("overlapping mainlobes merge when consistent and throw when not") {
    Scenario s = reference_scenario();
    TargetSpec second;
    second.angle_deg = -29.0;
    second.distance_m = 20.0;
    s.targets.push_back(second);

    SECTION("same level: shared grid points merge") {
        // Windows [-32.5, -27.5] and [-31.5, -26.5] share -31..-28; identical
        // distances mean identical levels, so the union has 6 integer points.
        const DesiredBeampattern p = build_desired_pattern(s);
        REQUIRE(p.size() == 6);
    }
    SECTION("conflicting levels throw") {
        s.targets[1].distance_m = 10.0; // 4x the level on the shared angles
        REQUIRE_THROWS_AS(build_desired_pattern(s), std::invalid_argument);
    }
}

TEST_CASE("scenario validation rejects out-of-domain fields") {
    Scenario good = reference_scenario();
    REQUIRE_NOTHROW(good.validate());

    SECTION("antenna count") {
        Scenario s = good;
        s.array.num_antennas = 1;
        REQUIRE_THROWS_AS(s.validate(), std::invalid_argument);
    }
    SECTION("user angle at the domain edge") {
        Scenario s = good;
        s.users[0].angle_deg = 90.0;
        REQUIRE_THROWS_AS(s.validate(), std::invalid_argument);
    }
    SECTION("mainlobe leaving the angular domain") {
        Scenario s = good;
        s.targets[0].angle_deg = 88.0; // [85.5, 90.5] exits (-90, 90)
        REQUIRE_THROWS_AS(s.validate(), std::invalid_argument);
    }
    SECTION("nonpositive noise power") {
        Scenario s = good;
        s.users[0].noise_power_mw = 0.0;
        REQUIRE_THROWS_AS(s.validate(), std::invalid_argument);
    }
    SECTION("no users") {
        Scenario s = good;
        s.users.clear();
        REQUIRE_THROWS_AS(s.validate(), std::invalid_argument);
    }
    SECTION("tolerance fraction out of (0, 1)") {
        Scenario s = good;
        s.mainlobe_tolerance_fraction = 1.0;
        REQUIRE_THROWS_AS(s.validate(), std::invalid_argument);
    }
}

TEST_CASE("unit conversions round-trip") {
    REQUIRE(dbm_to_mw(-75.0) == Catch::Approx(3.1622776601683792e-08).epsilon(1e-15));
    REQUIRE(dbm_to_mw(-13.0) == Catch::Approx(0.05011872336272722).epsilon(1e-15));
    REQUIRE(mw_to_dbm(1000.0) == Catch::Approx(30.0).epsilon(1e-15));
    REQUIRE(db_to_linear(0.0) == 1.0);
    REQUIRE(deg_to_rad(180.0) == Catch::Approx(3.1415926535897931).epsilon(1e-15));
}
