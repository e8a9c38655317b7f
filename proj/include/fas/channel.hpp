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

#ifndef FAS_CHANNEL_HPP
#define FAS_CHANNEL_HPP

#include <Eigen/Dense>

#include "fas/correlation.hpp"
#include "fas/rng.hpp"

namespace fas {

/// Kronecker-correlated Rayleigh channel: H = delta * Urx sqrt(Lrx) G
/// sqrt(Ltx) Utx^H with G i.i.d. CN(0,1). The square-root factors are cached
/// at construction; tiny negative eigenvalues are clamped to zero first.
struct ChannelModel
{
    EigenDecomposition rx_eig;
    EigenDecomposition tx_eig;
    double path_loss_amplitude = 1.0;

    Eigen::MatrixXd rx_factor; ///< Urx * diag(sqrt(max(lambda, 0)))
    Eigen::MatrixXd tx_factor; ///< Utx * diag(sqrt(max(lambda, 0)))

    int n_rx() const { return int(rx_factor.rows()); }
    int n_tx() const { return int(tx_factor.rows()); }
};

ChannelModel make_channel_model(EigenDecomposition rx_eig, EigenDecomposition tx_eig,
                                double path_loss_amplitude = 1.0);

/// Convenience: correlation matrices from geometries, then the model.
ChannelModel make_channel_model(const SurfaceGeometry& geom_rx, const SurfaceGeometry& geom_tx,
                                const CorrelationKernel& kernel,
                                double path_loss_amplitude = 1.0);

struct ChannelRealization
{
    Eigen::MatrixXcd h;
    TrialSeed seed;
};

/// i.i.d. CN(0,1) matrix: entries x + jy, x,y ~ N(0, 1/2), filled row-major
/// from the trial stream; bit-deterministic in the seed.
Eigen::MatrixXcd draw_gaussian_matrix(TrialSeed seed, int rows, int cols);

/// H = delta * Urx sqrt(Lrx) G sqrt(Ltx)^T Utx^H.
/// Throws std::invalid_argument when G does not match the model dimensions.
Eigen::MatrixXcd synthesize_channel(const ChannelModel& model, const Eigen::MatrixXcd& g);

/// Draw + synthesize in one step.
ChannelRealization realize_channel(const ChannelModel& model, TrialSeed seed);

/// Sample covariance of vec(H) over seeded trials; converges to
/// delta^2 (Jtx^T kron Jrx). Accumulation is blocked in fixed trial order,
/// so the result does not depend on scheduling.
Eigen::MatrixXcd empirical_vec_covariance(const ChannelModel& model, long trials,
                                          std::uint64_t campaign_seed);

} // namespace fas

#endif
