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

#include "fas/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "fas/special_functions.hpp"

namespace fas {

double SphericalJ0Kernel::operator()(const Eigen::Vector3d& a, const Eigen::Vector3d& b) const
{
    return spherical_j0(2.0 * M_PI * (a - b).norm());
}

double BesselJ0Kernel::operator()(const Eigen::Vector3d& a, const Eigen::Vector3d& b) const
{
    return bessel_j0(2.0 * M_PI * (a - b).norm());
}

namespace {

std::mutex g_kernel_mutex;

std::map<std::string, std::shared_ptr<const CorrelationKernel>>& kernel_registry()
{
    static std::map<std::string, std::shared_ptr<const CorrelationKernel>> reg = {
        {"j0-3d", std::make_shared<SphericalJ0Kernel>()},
        {"J0-2d", std::make_shared<BesselJ0Kernel>()},
    };
    return reg;
}

} // namespace

void register_kernel(const std::string& name, std::shared_ptr<const CorrelationKernel> kernel)
{
    if (!kernel)
        throw std::invalid_argument("register_kernel: null kernel");
    std::lock_guard<std::mutex> lock(g_kernel_mutex);
    kernel_registry()[name] = std::move(kernel);
}

std::shared_ptr<const CorrelationKernel> kernel_by_name(const std::string& name)
{
    std::lock_guard<std::mutex> lock(g_kernel_mutex);
    auto& reg = kernel_registry();
    auto it = reg.find(name);
    if (it == reg.end())
        throw std::invalid_argument("unknown correlation kernel '" + name + "'");
    return it->second;
}

std::vector<std::string> registered_kernel_names()
{
    std::lock_guard<std::mutex> lock(g_kernel_mutex);
    std::vector<std::string> names;
    for (const auto& [k, v] : kernel_registry())
        names.push_back(k);
    return names;
}

double correlation_entry(const SurfaceGeometry& geom, int portA, int portB,
                         const CorrelationKernel& kernel)
{
    return kernel(port_position(geom, portA), port_position(geom, portB));
}

Eigen::MatrixXd build_correlation_matrix(const SurfaceGeometry& geom,
                                         const CorrelationKernel& kernel)
{
    validate_geometry(geom);
    const int N = geom.total_ports();
    std::vector<Eigen::Vector3d> pos(N);
    for (int l = 1; l <= N; ++l)
        pos[l - 1] = port_position(geom, l);

    Eigen::MatrixXd J(N, N);
    for (int k = 0; k < N; ++k)
    {
        J(k, k) = 1.0;
        for (int l = k + 1; l < N; ++l)
        {
            double v = kernel(pos[k], pos[l]);
            J(k, l) = v;
            J(l, k) = v;
        }
    }
    return J;
}

Eigen::MatrixXd build_correlation_matrix(const SurfaceGeometry& geom)
{
    return build_correlation_matrix(geom, SphericalJ0Kernel{});
}

EigenDecomposition eigendecompose(const Eigen::MatrixXd& J)
{
    if (J.rows() != J.cols())
        throw std::invalid_argument("eigendecompose: matrix must be square");
    double scale = std::max(1.0, J.cwiseAbs().maxCoeff());
    if ((J - J.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("eigendecompose: matrix must be symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(J);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: solver failed");

    const int N = J.rows();
    EigenDecomposition out;
    out.values = solver.eigenvalues().reverse();
    out.vectors.resize(N, N);
    for (int i = 0; i < N; ++i)
        out.vectors.col(i) = solver.eigenvectors().col(N - 1 - i);
    return out;
}

RankEstimate estimate_rank(const EigenDecomposition& eig, double xi)
{
    if (xi <= 0.0)
        throw std::invalid_argument("estimate_rank: threshold must be positive");
    const int N = int(eig.values.size());
    int rank = 0;
    for (int i = 0; i < N; ++i)
        if (eig.values(i) >= xi)
            ++rank;
    rank = std::max(rank, 1);
    double tail = 0.0;
    for (int i = rank; i < N; ++i)
        tail += eig.values(i);
    return RankEstimate{rank, std::max(tail, 0.0)};
}

namespace {

// Certificate coefficients above this norm make the reconstruction replay
// lose the round-trip bound; such columns are treated as independent.
constexpr double kCoeffNormLimit = 100.0;

// Fewest-directions truncated-SVD least-squares fit of b by the columns of
// A, accepted when the residual is within tol*||b|| and the coefficient
// vector stays below the conditioning limit. The cheap spectral residual
// estimate suffers cancellation near zero, so candidates close to the
// threshold are verified with the exact residual.
std::optional<Eigen::VectorXd> tsvd_fit(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                        double tol)
{
    if (A.cols() == 0)
        return std::nullopt;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd c = svd.matrixU().transpose() * b;
    const Eigen::VectorXd& s = svd.singularValues();
    const double bn = b.norm();
    const int r = int(s.size());

    double res2_out = std::max(bn * bn - c.squaredNorm(), 0.0);
    std::vector<double> suffix(r + 1, 0.0);
    for (int i = r - 1; i >= 0; --i)
        suffix[i] = suffix[i + 1] + c(i) * c(i);

    const double attempt = (16.0 * tol + 1e-7) * bn;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(A.cols());
    for (int k = 0; k <= r; ++k)
    {
        if (k > 0)
        {
            if (s(k - 1) <= 0.0)
                break;
            v += (c(k - 1) / s(k - 1)) * svd.matrixV().col(k - 1);
        }
        if (std::sqrt(res2_out + suffix[k]) > attempt)
            continue;
        if ((A * v - b).norm() <= tol * bn)
        {
            if (v.norm() <= kCoeffNormLimit)
                return v;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

// Fit of column c against the kept columns with smaller index, over all
// original rows.
std::optional<Eigen::VectorXd> fit_against_kept(const Eigen::MatrixXd& J,
                                                const std::vector<int>& kept_pre, int c,
                                                double tol)
{
    if (kept_pre.empty())
        return std::nullopt;
    Eigen::MatrixXd A(J.rows(), kept_pre.size());
    for (size_t i = 0; i < kept_pre.size(); ++i)
        A.col(i) = J.col(kept_pre[i]);
    return tsvd_fit(A, J.col(c), tol);
}

std::vector<int> kept_before(const std::vector<int>& kept, int c)
{
    std::vector<int> pre;
    for (int k : kept)
    {
        if (k >= c)
            break;
        pre.push_back(k);
    }
    return pre;
}

} // namespace

ReducedCorrelation reduce_correlation(const Eigen::MatrixXd& J, double tol)
{
    if (J.rows() != J.cols())
        throw std::invalid_argument("reduce_correlation: matrix must be square");
    if (tol <= 0.0)
        throw std::invalid_argument("reduce_correlation: tolerance must be positive");

    const int N = int(J.rows());
    std::vector<int> kept(N);
    std::iota(kept.begin(), kept.end(), 0);
    std::vector<int> removed; // 0-based, unordered during the fixpoint
    std::vector<char> pinned(N, 0);

    bool changed = N > 1;
    while (changed)
    {
        changed = false;

        // Scan from the last retained index downward; remove dependent columns.
        for (int pos = int(kept.size()) - 1; pos >= 1; --pos)
        {
            int c = kept[pos];
            if (pinned[c])
                continue;
            std::vector<int> pre(kept.begin(), kept.begin() + pos);
            if (fit_against_kept(J, pre, c, tol))
            {
                removed.push_back(c);
                kept.erase(kept.begin() + pos);
                changed = true;
            }
        }

        // Re-verify every removal against the final kept predecessors only;
        // certificates must not rest on other removed columns, or replay
        // errors compound. Failures are promoted back and pinned.
        bool stable = false;
        while (!stable)
        {
            stable = true;
            for (size_t i = 0; i < removed.size(); ++i)
            {
                int c = removed[i];
                if (fit_against_kept(J, kept_before(kept, c), c, tol))
                    continue;
                kept.insert(std::upper_bound(kept.begin(), kept.end(), c), c);
                pinned[c] = 1;
                removed.erase(removed.begin() + i);
                stable = false;
                changed = true;
                break;
            }
        }
    }

    // Emit in the deterministic removal order: scan from the last index
    // downward, so removals happen in descending original index.
    std::sort(removed.begin(), removed.end(), std::greater<int>());

    ReducedCorrelation out;
    for (int c : removed)
    {
        std::vector<int> pre_kept = kept_before(kept, c);
        auto v = fit_against_kept(J, pre_kept, c, tol);
        if (!v)
            throw std::runtime_error("reduce_correlation: fixpoint certificate vanished");

        // retained set just before this removal: kept plus the not-yet-removed
        // (i.e. smaller) removable indices
        std::vector<int> retained = kept;
        for (int r : removed)
            if (r < c)
                retained.insert(std::upper_bound(retained.begin(), retained.end(), r), r);
        int level = int(std::upper_bound(retained.begin(), retained.end(), c) - retained.begin()) + 1;

        Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(level - 1);
        for (size_t i = 0; i < pre_kept.size(); ++i)
        {
            int p = int(std::lower_bound(retained.begin(), retained.end(), pre_kept[i]) -
                        retained.begin());
            coeffs(p) = (*v)(i);
        }
        out.certificates.push_back(ReductionCertificate{level, std::move(coeffs)});
        out.removed.push_back(c + 1);
    }

    out.reduced.resize(kept.size(), kept.size());
    for (size_t a = 0; a < kept.size(); ++a)
        for (size_t b = 0; b < kept.size(); ++b)
            out.reduced(a, b) = J(kept[a], kept[b]);
    return out;
}

Eigen::MatrixXd reconstruct_correlation(const Eigen::MatrixXd& reduced,
                                        const std::vector<ReductionCertificate>& certificates,
                                        const std::vector<int>& removed)
{
    if (reduced.rows() != reduced.cols())
        throw std::invalid_argument("reconstruct_correlation: reduced matrix must be square");
    if (certificates.size() != removed.size())
        throw std::invalid_argument("reconstruct_correlation: certificate/removed size mismatch");

    const int N = int(reduced.rows()) + int(removed.size());
    std::vector<char> is_removed(N + 1, 0);
    for (int r : removed)
    {
        if (r < 1 || r > N || is_removed[r])
            throw std::invalid_argument("reconstruct_correlation: bad removed index list");
        is_removed[r] = 1;
    }

    std::vector<int> current; // 1-based original indices now present
    for (int i = 1; i <= N; ++i)
        if (!is_removed[i])
            current.push_back(i);

    Eigen::MatrixXd M = reduced;
    for (int i = int(certificates.size()) - 1; i >= 0; --i)
    {
        const ReductionCertificate& cert = certificates[i];
        const int orig = removed[i];
        const int m = int(M.rows());
        const int l = cert.level;
        int expected =
            int(std::upper_bound(current.begin(), current.end(), orig) - current.begin()) + 1;
        if (l < 1 || l > m + 1 || cert.coeffs.size() != l - 1 || l != expected)
            throw std::invalid_argument("reconstruct_correlation: certificate level mismatch");

        Eigen::VectorXd col = M.leftCols(l - 1) * cert.coeffs;
        double diag = cert.coeffs.dot(M.topLeftCorner(l - 1, l - 1) * cert.coeffs);

        Eigen::MatrixXd next(m + 1, m + 1);
        int ip = l - 1;
        for (int a = 0; a < m + 1; ++a)
        {
            int sa = a < ip ? a : a - 1;
            for (int b = 0; b < m + 1; ++b)
            {
                int sb = b < ip ? b : b - 1;
                if (a == ip && b == ip)
                    next(a, b) = diag;
                else if (a == ip)
                    next(a, b) = col(sb);
                else if (b == ip)
                    next(a, b) = col(sa);
                else
                    next(a, b) = M(sa, sb);
            }
        }
        M.swap(next);
        current.insert(std::upper_bound(current.begin(), current.end(), orig), orig);
    }
    return M;
}

} // namespace fas
