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

#ifndef FAS_BEAMFORMING_HPP
#define FAS_BEAMFORMING_HPP

#include <Eigen/Dense>

namespace fas {

/// SVD transmit/receive beamformers for a selected subchannel: with
/// Hbar = M S N^H, the receive combiner is M^H and the transmit precoder N.
struct BeamformingSolution
{
    Eigen::MatrixXcd rx_combiner;
    Eigen::MatrixXcd tx_precoder;
    Eigen::VectorXd singular_values; ///< descending, length min(rows, cols)
};

BeamformingSolution svd_beamform(const Eigen::MatrixXcd& h_bar);

struct PowerAllocation
{
    Eigen::VectorXd powers;  ///< per-stream, aligned with the input gains
    double water_level = 0.0;
};

/// Waterfilling by bisection on the water level: p_l = max(mu - 1/s2_l, 0)
/// with sum(p) = snr within eps0. Entries with nonpositive gain get zero
/// power. Throws std::invalid_argument when mu_max cannot reach the budget.
PowerAllocation waterfill(const Eigen::VectorXd& sigma_sq, double snr, double eps0,
                          double mu_max);

/// Waterfilling with the default bisection bounds: eps0 = 1e-9 * snr and
/// mu_max = snr + 1/min positive gain.
PowerAllocation waterfill(const Eigen::VectorXd& sigma_sq, double snr);

/// Waterfilled rate sum_l log2(1 + p_l s_l^2) of the subchannel, bits/s/Hz.
double rate(const Eigen::MatrixXcd& h_bar, double snr);

/// Equal-power rate sum_{l<=n_min} log2(1 + (snr/n) s_l^2); the stream-count
/// divisor n is explicit so both paper variants are expressible.
double rate_equal_power(const Eigen::MatrixXcd& h_bar, double snr, int n);

/// log2 det(I + Hbar K Hbar^H) for an arbitrary PSD input covariance.
/// Throws std::invalid_argument when K is not PSD (or not square/matching).
double rate_general(const Eigen::MatrixXcd& h_bar, const Eigen::MatrixXcd& k);

} // namespace fas

#endif
