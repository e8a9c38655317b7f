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

#ifndef FAS_COUPLING_HPP
#define FAS_COUPLING_HPP

#include <complex>

#include <Eigen/Dense>

#include "fas/geometry.hpp"
#include "fas/port_selection.hpp"

namespace fas {

/// Half-wave dipole element at each active port. The mutual-impedance
/// closed form below assumes the default half-wave geometry; length and
/// width are recorded for reference.
struct DipoleSpec
{
    double length = 0.5;  ///< wavelengths
    double width = 0.001; ///< wavelengths
    std::complex<double> antenna_impedance{73.08, 42.21};
    std::complex<double> load_impedance{73.08, -42.21}; ///< conjugate match
};

/// Induced-EMF mutual impedance of side-by-side parallel half-wave dipoles
/// at center spacing d (wavelengths):
///   R =  eta/(4 pi) [2 Ci(u0) - Ci(u1) - Ci(u2)]
///   X = -eta/(4 pi) [2 Si(u0) - Si(u1) - Si(u2)]
/// with u0 = 2 pi d, u1 = pi (sqrt(4 d^2 + 1) + 1), u2 = pi (sqrt(4 d^2 + 1) - 1)
/// and eta = 376.73 ohm. d = 0 returns the antenna self impedance.
/// Throws std::invalid_argument for d < 0.
std::complex<double> dipole_mutual_impedance(double d, const DipoleSpec& spec = {});

struct CouplingMatrices
{
    Eigen::MatrixXcd rx;
    Eigen::MatrixXcd tx;
};

/// Liquid-element model: coupling only between the active ports.
/// Per side, Z has the self impedance on the diagonal and the dipole mutual
/// impedance of the active-port spacings off it; the coupling matrix is
/// (Z_A + Z_L)(Z + Z_L I)^-1, one per side (n_rx x n_rx and n_tx x n_tx).
CouplingMatrices liquid_coupling(const SelectionResult& selection,
                                 const SurfaceGeometry& geom_rx,
                                 const SurfaceGeometry& geom_tx, const DipoleSpec& spec = {});

/// RF-pixel S-matrix model parameters: the diagonal of the baseline
/// S-matrix is capped at return_loss_scale in magnitude and the
/// off-diagonals at isolation_scale (defaults: -15 dB return loss, -30 dB
/// isolation).
struct SMatrixModel
{
    double return_loss_scale = 0.17782794100389226;  ///< 10^(-15/20)
    double isolation_scale = 0.03162277660168379;    ///< 10^(-30/20)
    double reference_impedance = 50.0;               ///< ohm
};

/// S-matrix over all ports of the surface: the baseline comes from the
/// dipole impedance matrix via the Z -> S map, then the diagonal and
/// off-diagonal magnitudes are scaled down to the model's caps.
Eigen::MatrixXcd pixel_s_matrix(const SurfaceGeometry& geom, const SMatrixModel& model = {},
                                const DipoleSpec& spec = {});

/// Z = z0 (I + S)(I - S)^-1. Throws std::invalid_argument when (I - S) is
/// singular.
Eigen::MatrixXcd s_to_z(const Eigen::MatrixXcd& s, double z0);

/// S = (Z - z0 I)(Z + z0 I)^-1, the inverse of s_to_z.
Eigen::MatrixXcd z_to_s(const Eigen::MatrixXcd& z, double z0);

/// Coupling matrices of the pixel model over all ports of each surface;
/// independent of which ports end up selected.
CouplingMatrices pixel_coupling(const SurfaceGeometry& geom_rx, const SurfaceGeometry& geom_tx,
                                const SMatrixModel& model = {}, const DipoleSpec& spec = {});

/// Hbar_mc = Zrx * Hbar * Ztx on the selected subchannel (liquid model).
Eigen::MatrixXcd apply_coupling_liquid(const Eigen::MatrixXcd& h_bar,
                                       const CouplingMatrices& matrices);

/// H_mc = Zrx * H * Ztx on the full channel, before selection (pixel model).
Eigen::MatrixXcd apply_coupling_pixel(const Eigen::MatrixXcd& h,
                                      const CouplingMatrices& matrices);

} // namespace fas

#endif
