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

#ifndef FAS_CORRELATION_HPP
#define FAS_CORRELATION_HPP

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fas/geometry.hpp"

namespace fas {

/// Spatial-correlation kernel evaluated on a pair of port positions
/// (wavelength units). Implementations must be symmetric in their arguments
/// and return 1 at zero distance.
class CorrelationKernel
{
  public:
    virtual ~CorrelationKernel() = default;
    virtual double operator()(const Eigen::Vector3d& a, const Eigen::Vector3d& b) const = 0;
    virtual std::string name() const = 0;
};

/// j0(2*pi*d): isotropic 3D scattering (the default).
class SphericalJ0Kernel final : public CorrelationKernel
{
  public:
    double operator()(const Eigen::Vector3d& a, const Eigen::Vector3d& b) const override;
    std::string name() const override { return "j0-3d"; }
};

/// J0(2*pi*d): 2D scattering around a 1D surface.
class BesselJ0Kernel final : public CorrelationKernel
{
  public:
    double operator()(const Eigen::Vector3d& a, const Eigen::Vector3d& b) const override;
    std::string name() const override { return "J0-2d"; }
};

/// Kernel registry. "j0-3d" and "J0-2d" are pre-registered; callers may add
/// custom kernels under new names.
void register_kernel(const std::string& name, std::shared_ptr<const CorrelationKernel> kernel);
std::shared_ptr<const CorrelationKernel> kernel_by_name(const std::string& name);
std::vector<std::string> registered_kernel_names();

double correlation_entry(const SurfaceGeometry& geom, int portA, int portB,
                         const CorrelationKernel& kernel);

/// N x N symmetric correlation matrix over the map_index port order; unit
/// diagonal, entries in [-1, 1], PSD up to eigenvalue tolerance -1e-10.
Eigen::MatrixXd build_correlation_matrix(const SurfaceGeometry& geom,
                                         const CorrelationKernel& kernel);
Eigen::MatrixXd build_correlation_matrix(const SurfaceGeometry& geom); // j0-3d kernel

struct EigenDecomposition
{
    Eigen::MatrixXd vectors; ///< orthonormal columns
    Eigen::VectorXd values;  ///< descending
};

/// Symmetric eigendecomposition with eigenvalues sorted descending.
/// Throws std::invalid_argument when the input is not symmetric.
EigenDecomposition eigendecompose(const Eigen::MatrixXd& J);

struct RankEstimate
{
    int rank = 1;
    double truncation_error = 0.0; ///< sum of the dropped eigenvalues, >= 0
};

/// Effective rank: number of eigenvalues >= xi (at least 1); the truncation
/// error is bounded by (N - rank) * xi.
RankEstimate estimate_rank(const EigenDecomposition& eig, double xi);

/// Default eigenvalue threshold for rank estimation.
inline constexpr double kDefaultRankThreshold = 1e-3;

/// One removed row/column of a reduction: at removal time the column sat at
/// position `level` of the then-retained matrix and equalled the preceding
/// retained columns weighted by `coeffs` (length level-1) up to the accept
/// tolerance.
struct ReductionCertificate
{
    int level = 0;
    Eigen::VectorXd coeffs;
};

struct ReducedCorrelation
{
    Eigen::MatrixXd reduced;                      ///< principal submatrix on the kept ports
    std::vector<ReductionCertificate> certificates; ///< in removal order
    std::vector<int> removed;                     ///< 1-based original indices, removal order
};

/// Default linear-dependence tolerance for reduce_correlation.
inline constexpr double kDefaultReduceTol = 1e-8;

/// Drops rows/columns that are least-squares combinations of the retained
/// preceding columns (residual <= tol * ||column||), scanning from the last
/// index downward. Certificates are restricted to well-conditioned
/// coefficient vectors supported on never-removed columns, so that the
/// replay in reconstruct_correlation stays within the documented round-trip
/// bound instead of compounding across removals.
ReducedCorrelation reduce_correlation(const Eigen::MatrixXd& J, double tol = kDefaultReduceTol);

/// Replays the certificates in reverse removal order: each removed column is
/// reinserted as j_l = J_sub * v_l with diagonal j_l^T * v_l.
/// Throws std::invalid_argument on size mismatches.
Eigen::MatrixXd reconstruct_correlation(const Eigen::MatrixXd& reduced,
                                        const std::vector<ReductionCertificate>& certificates,
                                        const std::vector<int>& removed);

} // namespace fas

#endif
