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

#include "fas/coupling.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fas/special_functions.hpp"

namespace fas {

namespace {

constexpr double kFreeSpaceImpedance = 376.73; // ohm

Eigen::MatrixXcd impedance_matrix(const std::vector<Eigen::Vector3d>& positions,
                                  const DipoleSpec& spec)
{
    const int n = int(positions.size());
    Eigen::MatrixXcd z(n, n);
    for (int a = 0; a < n; ++a)
    {
        z(a, a) = spec.antenna_impedance;
        for (int b = a + 1; b < n; ++b)
        {
            std::complex<double> m =
                dipole_mutual_impedance((positions[a] - positions[b]).norm(), spec);
            z(a, b) = m;
            z(b, a) = m;
        }
    }
    return z;
}

Eigen::MatrixXcd coupling_from_impedance(const Eigen::MatrixXcd& z, const DipoleSpec& spec)
{
    const int n = int(z.rows());
    Eigen::MatrixXcd shifted = z + spec.load_impedance * Eigen::MatrixXcd::Identity(n, n);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
    if (lu.rcond() < 1e-14)
        throw std::runtime_error("coupling: loaded impedance matrix is singular");
    return (spec.antenna_impedance + spec.load_impedance) *
           lu.solve(Eigen::MatrixXcd::Identity(n, n));
}

std::vector<Eigen::Vector3d> selected_positions(const SurfaceGeometry& geom,
                                                const std::vector<int>& ports)
{
    std::vector<Eigen::Vector3d> pos;
    pos.reserve(ports.size());
    for (int p : ports)
        pos.push_back(port_position(geom, p));
    return pos;
}

std::vector<Eigen::Vector3d> all_positions(const SurfaceGeometry& geom)
{
    std::vector<Eigen::Vector3d> pos;
    pos.reserve(geom.total_ports());
    for (int p = 1; p <= geom.total_ports(); ++p)
        pos.push_back(port_position(geom, p));
    return pos;
}

} // namespace

std::complex<double> dipole_mutual_impedance(double d, const DipoleSpec& spec)
{
    if (d < 0.0)
        throw std::invalid_argument("dipole_mutual_impedance: spacing must be >= 0");
    if (d == 0.0)
        return spec.antenna_impedance;

    double u0 = 2.0 * M_PI * d;
    double root = std::sqrt(4.0 * d * d + 1.0);
    double u1 = M_PI * (root + 1.0);
    double u2 = M_PI * (root - 1.0);

    double scale = kFreeSpaceImpedance / (4.0 * M_PI);
    double r = scale * (2.0 * cosine_integral(u0) - cosine_integral(u1) - cosine_integral(u2));
    double x = -scale * (2.0 * sine_integral(u0) - sine_integral(u1) - sine_integral(u2));
    return {r, x};
}

CouplingMatrices liquid_coupling(const SelectionResult& selection,
                                 const SurfaceGeometry& geom_rx,
                                 const SurfaceGeometry& geom_tx, const DipoleSpec& spec)
{
    CouplingMatrices out;
    out.rx = coupling_from_impedance(
        impedance_matrix(selected_positions(geom_rx, selection.rx_ports), spec), spec);
    out.tx = coupling_from_impedance(
        impedance_matrix(selected_positions(geom_tx, selection.tx_ports), spec), spec);
    return out;
}

Eigen::MatrixXcd s_to_z(const Eigen::MatrixXcd& s, double z0)
{
    const int n = int(s.rows());
    if (s.cols() != n)
        throw std::invalid_argument("s_to_z: matrix must be square");
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(eye - s);
    if (lu.rcond() < 1e-14)
        throw std::invalid_argument("s_to_z: (I - S) is singular");
    return z0 * (eye + s) * lu.solve(eye);
}

Eigen::MatrixXcd z_to_s(const Eigen::MatrixXcd& z, double z0)
{
    const int n = int(z.rows());
    if (z.cols() != n)
        throw std::invalid_argument("z_to_s: matrix must be square");
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(z + z0 * eye);
    if (lu.rcond() < 1e-14)
        throw std::invalid_argument("z_to_s: (Z + z0 I) is singular");
    return (z - z0 * eye) * lu.solve(eye);
}

Eigen::MatrixXcd pixel_s_matrix(const SurfaceGeometry& geom, const SMatrixModel& model,
                                const DipoleSpec& spec)
{
    validate_geometry(geom);
    Eigen::MatrixXcd s =
        z_to_s(impedance_matrix(all_positions(geom), spec), model.reference_impedance);

    const int n = int(s.rows());
    double max_diag = 0.0, max_off = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
        {
            double mag = std::abs(s(a, b));
            if (a == b)
                max_diag = std::max(max_diag, mag);
            else
                max_off = std::max(max_off, mag);
        }

    double alpha_rl = max_diag > model.return_loss_scale ? model.return_loss_scale / max_diag : 1.0;
    double alpha_iso = max_off > model.isolation_scale ? model.isolation_scale / max_off : 1.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            s(a, b) *= (a == b ? alpha_rl : alpha_iso);
    return s;
}

CouplingMatrices pixel_coupling(const SurfaceGeometry& geom_rx, const SurfaceGeometry& geom_tx,
                                const SMatrixModel& model, const DipoleSpec& spec)
{
    auto one_side = [&](const SurfaceGeometry& geom) {
        Eigen::MatrixXcd z =
            s_to_z(pixel_s_matrix(geom, model, spec), model.reference_impedance);
        return coupling_from_impedance(z, spec);
    };
    return CouplingMatrices{one_side(geom_rx), one_side(geom_tx)};
}

Eigen::MatrixXcd apply_coupling_liquid(const Eigen::MatrixXcd& h_bar,
                                       const CouplingMatrices& matrices)
{
    if (matrices.rx.cols() != h_bar.rows() || matrices.tx.rows() != h_bar.cols())
        throw std::invalid_argument("apply_coupling_liquid: dimension mismatch");
    return matrices.rx * h_bar * matrices.tx;
}

Eigen::MatrixXcd apply_coupling_pixel(const Eigen::MatrixXcd& h,
                                      const CouplingMatrices& matrices)
{
    if (matrices.rx.cols() != h.rows() || matrices.tx.rows() != h.cols())
        throw std::invalid_argument("apply_coupling_pixel: dimension mismatch");
    return matrices.rx * h * matrices.tx;
}

} // namespace fas
