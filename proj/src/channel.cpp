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

#include "fas/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace fas {

ChannelModel make_channel_model(EigenDecomposition rx_eig, EigenDecomposition tx_eig,
                                double path_loss_amplitude)
{
    if (path_loss_amplitude <= 0.0)
        throw std::invalid_argument("channel model: path loss amplitude must be positive");

    ChannelModel model;
    model.path_loss_amplitude = path_loss_amplitude;
    auto factor = [](const EigenDecomposition& eig) {
        Eigen::VectorXd s = eig.values.cwiseMax(0.0).cwiseSqrt();
        return Eigen::MatrixXd(eig.vectors * s.asDiagonal());
    };
    model.rx_factor = factor(rx_eig);
    model.tx_factor = factor(tx_eig);
    model.rx_eig = std::move(rx_eig);
    model.tx_eig = std::move(tx_eig);
    return model;
}

ChannelModel make_channel_model(const SurfaceGeometry& geom_rx, const SurfaceGeometry& geom_tx,
                                const CorrelationKernel& kernel, double path_loss_amplitude)
{
    return make_channel_model(eigendecompose(build_correlation_matrix(geom_rx, kernel)),
                              eigendecompose(build_correlation_matrix(geom_tx, kernel)),
                              path_loss_amplitude);
}

Eigen::MatrixXcd draw_gaussian_matrix(TrialSeed seed, int rows, int cols)
{
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("draw_gaussian_matrix: dimensions must be >= 1");
    TrialRng rng(seed);
    Eigen::MatrixXcd g(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            g(r, c) = rng.next_complex_gaussian();
    return g;
}

Eigen::MatrixXcd synthesize_channel(const ChannelModel& model, const Eigen::MatrixXcd& g)
{
    if (g.rows() != model.n_rx() || g.cols() != model.n_tx())
        throw std::invalid_argument("synthesize_channel: gaussian matrix dimension mismatch");
    return model.path_loss_amplitude *
           (model.rx_factor * (g * model.tx_factor.transpose()));
}

ChannelRealization realize_channel(const ChannelModel& model, TrialSeed seed)
{
    return {synthesize_channel(model, draw_gaussian_matrix(seed, model.n_rx(), model.n_tx())),
            seed};
}

Eigen::MatrixXcd empirical_vec_covariance(const ChannelModel& model, long trials,
                                          std::uint64_t campaign_seed)
{
    if (trials < 1)
        throw std::invalid_argument("empirical_vec_covariance: trials must be >= 1");

    const int n = model.n_rx() * model.n_tx();
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    for (long t = 0; t < trials; ++t)
    {
        Eigen::MatrixXcd h = realize_channel(model, TrialSeed{campaign_seed, std::uint64_t(t)}).h;
        Eigen::Map<Eigen::VectorXcd> v(h.data(), n); // column-major vec()
        acc.noalias() += v * v.adjoint();
    }
    return acc / double(trials);
}

} // namespace fas
