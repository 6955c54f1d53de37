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

#include "isacbf/metrics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace isacbf {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok)
        throw std::invalid_argument(message);
}

void check_hermitian_psd(const HermitianMatrix& m, const std::string& what) {
    require(m.rows() == m.cols(), what + " must be square");
    const double scale = m.norm();
    if ((m - m.adjoint()).norm() > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument(what + " is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<HermitianMatrix> eig(m, Eigen::EigenvaluesOnly);
    const double lambda_max = eig.eigenvalues().maxCoeff();
    const double lambda_min = eig.eigenvalues().minCoeff();
    if (lambda_min < -1e-9 * std::max(lambda_max, 0.0) && lambda_min < -1e-15)
        throw std::invalid_argument(what + " has a negative eigenvalue beyond tolerance");
}

HermitianMatrix total_covariance(const BeamformerSet& set) {
    HermitianMatrix sum = set.radar_covariance.rows() > 0
                              ? HermitianMatrix(set.radar_covariance)
                              : HermitianMatrix(HermitianMatrix::Zero(set.num_antennas(),
                                                                      set.num_antennas()));
    for (const auto& w : set.user_covariances)
        sum += w;
    return sum;
}

} // namespace

std::string dbm_string(double mw, int significant_digits) {
    if (!(mw > 0.0))
        return "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, mw_to_dbm(mw));
    return buf;
}

void BeamformerSet::validate() const {
    require(!user_covariances.empty() || radar_covariance.rows() > 0,
            "beamformer set must contain at least one matrix");
    const int n = num_antennas();
    for (size_t k = 0; k < user_covariances.size(); ++k) {
        require(user_covariances[k].rows() == n && user_covariances[k].cols() == n,
                "user covariance " + std::to_string(k) + " has inconsistent dimensions");
        check_hermitian_psd(user_covariances[k], "user covariance " + std::to_string(k));
    }
    if (radar_covariance.rows() > 0) {
        require(radar_covariance.rows() == n && radar_covariance.cols() == n,
                "radar covariance has inconsistent dimensions");
        check_hermitian_psd(radar_covariance, "radar covariance");
    }
    if (!beamformers.empty()) {
        require(beamformers.size() == user_covariances.size(),
                "need one beamforming vector per user covariance");
        for (size_t k = 0; k < beamformers.size(); ++k) {
            require(beamformers[k].size() == n, "beamforming vector dimension mismatch");
            const auto& w = user_covariances[k];
            const HermitianMatrix outer = beamformers[k] * beamformers[k].adjoint();
            if ((w - outer).norm() > 1e-6 * std::max(w.norm(), 1e-300))
                throw std::invalid_argument("beamforming vector " + std::to_string(k) +
                                            " is not rank-one consistent with its covariance");
        }
    }
}

double total_power(const BeamformerSet& set) {
    double power = 0.0;
    for (const auto& w : set.user_covariances)
        power += w.trace().real();
    if (set.radar_covariance.rows() > 0)
        power += set.radar_covariance.trace().real();
    return power;
}

double transmit_beampattern(const BeamformerSet& set, const ArrayGeometry& array,
                            double angle_deg) {
    const ComplexVector a = steering_vector(array, angle_deg);
    return (a.adjoint() * total_covariance(set) * a).value().real();
}

double channel_beam_gain(const BeamformerSet& set, const ComplexVector& channel) {
    require(channel.size() == set.num_antennas(), "channel dimension mismatch");
    return (channel.adjoint() * total_covariance(set) * channel).value().real();
}

double beam_matching_error(const BeamformerSet& set, const DesiredBeampattern& pattern,
                           const ArrayGeometry& array) {
    pattern.validate();
    double error = 0.0;
    for (const auto& s : pattern.samples) {
        const double deviation = s.level_mw - transmit_beampattern(set, array, s.angle_deg);
        error += deviation * deviation;
    }
    return error;
}

double sinr(const BeamformerSet& set, int user_index, const Scenario& scenario) {
    require(user_index >= 0 && user_index < scenario.num_users(), "user index out of range");
    require(set.num_users() == scenario.num_users(),
            "beamformer set does not match scenario user count");
    const ComplexVector h = channel_vector(scenario.array, scenario.users[user_index]);
    auto quad = [&](const HermitianMatrix& m) { return (h.adjoint() * m * h).value().real(); };

    const double signal = quad(set.user_covariances[user_index]);
    double interference = 0.0;
    for (int i = 0; i < set.num_users(); ++i)
        if (i != user_index)
            interference += quad(set.user_covariances[i]);
    if (set.radar_covariance.rows() > 0)
        interference += quad(set.radar_covariance);
    return signal / (interference + scenario.users[user_index].noise_power_mw);
}

double rate(double sinr_value) {
    require(sinr_value >= 0, "SINR must be nonnegative");
    return std::log2(1.0 + sinr_value);
}

BeampatternDecomposition component_decomposition(const BeamformerSet& set,
                                                 const ArrayGeometry& array,
                                                 const std::vector<double>& grid_deg) {
    HermitianMatrix comm = HermitianMatrix::Zero(set.num_antennas(), set.num_antennas());
    for (const auto& w : set.user_covariances)
        comm += w;

    BeampatternDecomposition out;
    out.angles_deg = grid_deg;
    out.communication_mw.reserve(grid_deg.size());
    out.radar_mw.reserve(grid_deg.size());
    out.total_mw.reserve(grid_deg.size());
    for (double angle : grid_deg) {
        const ComplexVector a = steering_vector(array, angle);
        const double c = (a.adjoint() * comm * a).value().real();
        const double r = set.radar_covariance.rows() > 0
                             ? (a.adjoint() * set.radar_covariance * a).value().real()
                             : 0.0;
        out.communication_mw.push_back(c);
        out.radar_mw.push_back(r);
        out.total_mw.push_back(c + r);
    }
    return out;
}

std::vector<double> default_angle_grid() {
    std::vector<double> grid;
    grid.reserve(181);
    for (int deg = -90; deg <= 90; ++deg)
        grid.push_back(static_cast<double>(deg));
    return grid;
}

std::string beampattern_csv(const BeamformerSet& set, const ArrayGeometry& array,
                            const std::vector<double>& grid_deg) {
    // The +/-90 degree endpoints are outside the steering domain proper; the
    // export grid clamps them inward by a hair so the curve still spans the
    // plotted range.
    auto clamped = grid_deg;
    for (double& a : clamped)
        a = std::clamp(a, -90.0 + 1e-9, 90.0 - 1e-9);
    const BeampatternDecomposition d = component_decomposition(set, array, clamped);

    std::ostringstream os;
    os << "angle_deg,total_dBm,comm_dBm,radar_dBm\n";
    for (size_t i = 0; i < grid_deg.size(); ++i) {
        char angle[32];
        std::snprintf(angle, sizeof(angle), "%.9g", grid_deg[i]);
        os << angle << ',' << dbm_string(d.total_mw[i]) << ',' << dbm_string(d.communication_mw[i])
           << ',' << dbm_string(d.radar_mw[i]) << '\n';
    }
    return os.str();
}

} // namespace isacbf
