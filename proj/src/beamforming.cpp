// SPDX-License-Identifier: Apache-2.0
//
// fas-mimo: fluid-antenna-system MIMO link simulation library
// Copyright (C) 2026 fas-mimo contributors
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

#include "fas/beamforming.hpp"

#include <cmath>
#include <stdexcept>

namespace fas {

BeamformingSolution svd_beamform(const Eigen::MatrixXcd& h_bar)
{
    if (h_bar.size() == 0)
        throw std::invalid_argument("svd_beamform: empty matrix");

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h_bar, Eigen::ComputeFullU | Eigen::ComputeFullV);
    BeamformingSolution out;
    out.rx_combiner = svd.matrixU().adjoint();
    out.tx_precoder = svd.matrixV();
    out.singular_values = svd.singularValues();
    return out;
}

PowerAllocation waterfill(const Eigen::VectorXd& sigma_sq, double snr, double eps0,
                          double mu_max)
{
    if (snr <= 0.0)
        throw std::invalid_argument("waterfill: snr must be positive");
    if ((sigma_sq.array() > 0.0).count() == 0)
        throw std::invalid_argument("waterfill: need at least one positive gain");

    auto budget = [&](double mu) {
        double sum = 0.0;
        for (int i = 0; i < sigma_sq.size(); ++i)
            if (sigma_sq(i) > 0.0)
                sum += std::max(mu - 1.0 / sigma_sq(i), 0.0);
        return sum;
    };
    if (budget(mu_max) < snr - eps0)
        throw std::invalid_argument("waterfill: mu_max too small to reach the power budget");

    double lo = 0.0, hi = mu_max, mu = mu_max;
    for (int it = 0; it < 200; ++it)
    {
        mu = 0.5 * (lo + hi);
        double s = budget(mu);
        if (std::abs(s - snr) <= eps0)
            break;
        (s < snr ? lo : hi) = mu;
    }

    PowerAllocation out;
    out.water_level = mu;
    out.powers = Eigen::VectorXd::Zero(sigma_sq.size());
    for (int i = 0; i < sigma_sq.size(); ++i)
        if (sigma_sq(i) > 0.0)
            out.powers(i) = std::max(mu - 1.0 / sigma_sq(i), 0.0);
    return out;
}

PowerAllocation waterfill(const Eigen::VectorXd& sigma_sq, double snr)
{
    double min_pos = 0.0;
    for (int i = 0; i < sigma_sq.size(); ++i)
        if (sigma_sq(i) > 0.0 && (min_pos == 0.0 || sigma_sq(i) < min_pos))
            min_pos = sigma_sq(i);
    if (min_pos == 0.0)
        throw std::invalid_argument("waterfill: need at least one positive gain");
    return waterfill(sigma_sq, snr, 1e-9 * snr, snr + 1.0 / min_pos);
}

double rate(const Eigen::MatrixXcd& h_bar, double snr)
{
    if (snr <= 0.0)
        throw std::invalid_argument("rate: snr must be positive");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h_bar);
    Eigen::VectorXd s2 = svd.singularValues().array().square();
    if ((s2.array() > 0.0).count() == 0)
        return 0.0;
    PowerAllocation p = waterfill(s2, snr);
    double r = 0.0;
    for (int i = 0; i < s2.size(); ++i)
        r += std::log2(1.0 + p.powers(i) * s2(i));
    return r;
}

double rate_equal_power(const Eigen::MatrixXcd& h_bar, double snr, int n)
{
    if (n < 1)
        throw std::invalid_argument("rate_equal_power: stream count must be >= 1");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h_bar);
    const Eigen::VectorXd& s = svd.singularValues();
    double r = 0.0;
    for (int i = 0; i < s.size(); ++i)
        r += std::log2(1.0 + (snr / double(n)) * s(i) * s(i));
    return r;
}

double rate_general(const Eigen::MatrixXcd& h_bar, const Eigen::MatrixXcd& k)
{
    if (k.rows() != k.cols() || k.rows() != h_bar.cols())
        throw std::invalid_argument("rate_general: covariance dimension mismatch");
    double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
    if ((k - k.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("rate_general: covariance must be Hermitian");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ksolver(k);
    if (ksolver.eigenvalues().minCoeff() < -1e-10 * scale)
        throw std::invalid_argument("rate_general: covariance must be PSD");

    Eigen::MatrixXcd m = h_bar * k * h_bar.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    double r = 0.0;
    for (int i = 0; i < solver.eigenvalues().size(); ++i)
        r += std::log2(1.0 + std::max(solver.eigenvalues()(i), 0.0));
    return r;
}

} // namespace fas
