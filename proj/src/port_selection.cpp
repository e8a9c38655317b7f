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

#include "fas/port_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fas/beamforming.hpp"

namespace fas {

RrqrState pivoted_qr(const Eigen::MatrixXcd& m)
{
    if (m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0)
        throw std::invalid_argument("pivoted_qr: matrix must be nonzero");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
    RrqrState state;
    state.q = qr.householderQ() * Eigen::MatrixXcd::Identity(m.rows(), m.rows());
    state.r = qr.matrixR().template triangularView<Eigen::Upper>();
    const auto& idx = qr.colsPermutation().indices();
    state.permutation.assign(idx.data(), idx.data() + idx.size());
    return state;
}

RrqrState qr_with_permutation(const Eigen::MatrixXcd& m, std::vector<int> permutation)
{
    if (int(permutation.size()) != m.cols())
        throw std::invalid_argument("qr_with_permutation: permutation size mismatch");

    Eigen::MatrixXcd mp(m.rows(), m.cols());
    for (int c = 0; c < m.cols(); ++c)
        mp.col(c) = m.col(permutation[c]);

    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(mp);
    RrqrState state;
    state.q = qr.householderQ() * Eigen::MatrixXcd::Identity(m.rows(), m.rows());
    state.r = state.q.adjoint() * mp;
    state.permutation = std::move(permutation);
    return state;
}

Eigen::MatrixXd omega_matrix(const RrqrState& state, SwapCriterion criterion)
{
    const int n = state.active_count;
    const int total = int(state.permutation.size());
    if (n < 1 || n >= total)
        throw std::invalid_argument("omega_matrix: active block must split the columns");

    const Eigen::MatrixXcd s1 = state.r.topLeftCorner(n, n);
    const Eigen::MatrixXcd s2 = state.r.topRightCorner(n, total - n);
    const int s3_rows = int(state.r.rows()) - n;
    const Eigen::MatrixXcd s3 =
        s3_rows > 0 ? Eigen::MatrixXcd(state.r.bottomRightCorner(s3_rows, total - n))
                    : Eigen::MatrixXcd::Zero(1, total - n);

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s1, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-12 * sv(0))
        throw numerical_rank_error("omega_matrix: leading triangular block is singular");

    Eigen::MatrixXcd s1_pinv = svd.matrixV() * sv.cwiseInverse().asDiagonal().toDenseMatrix() *
                               svd.matrixU().adjoint();

    Eigen::MatrixXd cross = (s1_pinv * s2).cwiseAbs();
    Eigen::VectorXd s3_col_norm = s3.colwise().norm();
    Eigen::VectorXd s1_row_norm = s1_pinv.rowwise().norm();

    Eigen::MatrixXd omega(n, total - n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < total - n; ++l)
        {
            double a2 = cross(k, l) * cross(k, l);
            double b2 = s3_col_norm(l) * s3_col_norm(l);
            double c2 = s1_row_norm(k) * s1_row_norm(k);
            omega(k, l) = criterion == SwapCriterion::AdditiveSum ? std::sqrt(a2 + b2 + c2)
                                                               : std::sqrt(a2 + b2 * c2);
        }
    return omega;
}

long default_max_swaps(int n, int total_columns)
{
    return 10L * n * std::max(total_columns - n, 1);
}

ColumnSelection rrqr_select_columns(const Eigen::MatrixXcd& m, int n, SwapCriterion criterion,
                                    long max_swaps)
{
    const int total = int(m.cols());
    if (n < 1 || n > total)
        throw std::invalid_argument("rrqr_select_columns: invalid column count");
    if (max_swaps < 0)
        max_swaps = default_max_swaps(n, total);

    ColumnSelection out;
    if (n == total)
    {
        out.columns.resize(n);
        std::iota(out.columns.begin(), out.columns.end(), 0);
        return out;
    }

    RrqrState state = pivoted_qr(m);
    state.active_count = n;

    // With fewer rows than requested columns every n-subset has a zero
    // sigma-product; keep the pivot order.
    if (n <= m.rows())
    {
        while (true)
        {
            Eigen::MatrixXd omega = omega_matrix(state, criterion);
            int bk = -1, bl = -1;
            double best = 1.0;
            for (int k = 0; k < omega.rows(); ++k)
                for (int l = 0; l < omega.cols(); ++l)
                    if (omega(k, l) > best)
                    {
                        best = omega(k, l);
                        bk = k;
                        bl = l;
                    }
            if (bk < 0)
                break;
            if (out.swaps >= max_swaps)
            {
                out.truncated = true;
                break;
            }
            std::vector<int> perm = state.permutation;
            std::swap(perm[bk], perm[n + bl]);
            state = qr_with_permutation(m, std::move(perm));
            state.active_count = n;
            ++out.swaps;
        }
    }

    out.columns.assign(state.permutation.begin(), state.permutation.begin() + n);
    std::sort(out.columns.begin(), out.columns.end());
    return out;
}

SelectionResult qr_mimo_fas_select(const Eigen::MatrixXcd& h, int n_tx, int n_rx,
                                   SwapCriterion criterion, long max_swaps)
{
    if (n_rx < 1 || n_rx > h.rows() || n_tx < 1 || n_tx > h.cols())
        throw std::invalid_argument("qr_mimo_fas_select: active counts out of range");

    ColumnSelection rx = rrqr_select_columns(h.adjoint(), n_rx, criterion, max_swaps);

    Eigen::MatrixXcd h_rx(n_rx, h.cols());
    for (int i = 0; i < n_rx; ++i)
        h_rx.row(i) = h.row(rx.columns[i]);
    ColumnSelection tx = rrqr_select_columns(h_rx, n_tx, criterion, max_swaps);

    SelectionResult sel;
    for (int c : rx.columns)
        sel.rx_ports.push_back(c + 1);
    for (int c : tx.columns)
        sel.tx_ports.push_back(c + 1);
    return sel;
}

std::uint64_t selection_combination_count(int n_ports_tx, int n_tx, int n_ports_rx, int n_rx)
{
    auto choose = [](int n, int k) -> std::uint64_t {
        if (k < 0 || k > n)
            return 0;
        k = std::min(k, n - k);
        std::uint64_t r = 1;
        for (int i = 1; i <= k; ++i)
        {
            // r *= (n - k + i) / i, guarding overflow
            std::uint64_t num = std::uint64_t(n - k + i);
            if (r > std::numeric_limits<std::uint64_t>::max() / num)
                return std::numeric_limits<std::uint64_t>::max();
            r = r * num / std::uint64_t(i);
        }
        return r;
    };
    std::uint64_t a = choose(n_ports_tx, n_tx);
    std::uint64_t b = choose(n_ports_rx, n_rx);
    if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
        return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

namespace {

// Lexicographic combination enumeration of k out of n (0-based).
bool next_combination(std::vector<int>& c, int n)
{
    int k = int(c.size());
    for (int i = k - 1; i >= 0; --i)
    {
        if (c[i] < n - k + i)
        {
            ++c[i];
            for (int j = i + 1; j < k; ++j)
                c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

SelectionResult exhaustive_select(const Eigen::MatrixXcd& h, int n_tx, int n_rx, double snr,
                                  std::uint64_t combo_limit)
{
    const int n_ports_rx = int(h.rows());
    const int n_ports_tx = int(h.cols());
    if (n_rx < 1 || n_rx > n_ports_rx || n_tx < 1 || n_tx > n_ports_tx)
        throw std::invalid_argument("exhaustive_select: active counts out of range");

    std::uint64_t combos = selection_combination_count(n_ports_tx, n_tx, n_ports_rx, n_rx);
    if (combos > combo_limit)
        throw std::runtime_error("exhaustive_select: " + std::to_string(combos) +
                                 " combinations exceed the limit of " +
                                 std::to_string(combo_limit));

    SelectionResult best;
    double best_rate = -1.0;

    std::vector<int> rx(n_rx);
    std::iota(rx.begin(), rx.end(), 0);
    do
    {
        Eigen::MatrixXcd h_rows(n_rx, n_ports_tx);
        for (int i = 0; i < n_rx; ++i)
            h_rows.row(i) = h.row(rx[i]);

        std::vector<int> tx(n_tx);
        std::iota(tx.begin(), tx.end(), 0);
        do
        {
            Eigen::MatrixXcd sub(n_rx, n_tx);
            for (int j = 0; j < n_tx; ++j)
                sub.col(j) = h_rows.col(tx[j]);
            double r = rate(sub, snr);
            if (r > best_rate)
            {
                best_rate = r;
                best.rx_ports.clear();
                best.tx_ports.clear();
                for (int i : rx)
                    best.rx_ports.push_back(i + 1);
                for (int j : tx)
                    best.tx_ports.push_back(j + 1);
            }
        } while (next_combination(tx, n_ports_tx));
    } while (next_combination(rx, n_ports_rx));

    return best;
}

namespace {

std::vector<int> greedy_pick(const Eigen::VectorXd& norms,
                             const std::vector<Eigen::Vector3d>& positions, int want,
                             double min_separation, const char* side)
{
    const int n = int(norms.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return norms(a) > norms(b); });

    std::vector<int> picked;
    for (int i : order)
    {
        bool clear = true;
        for (int j : picked)
            if ((positions[i] - positions[j]).norm() < min_separation)
            {
                clear = false;
                break;
            }
        if (clear)
        {
            picked.push_back(i);
            if (int(picked.size()) == want)
                return picked;
        }
    }
    throw std::runtime_error(std::string("greedy_select: separation constraint leaves fewer "
                                         "than the requested ports on the ") +
                             side + " side");
}

} // namespace

SelectionResult greedy_select(const Eigen::MatrixXcd& h, const SurfaceGeometry& geom_tx,
                              const SurfaceGeometry& geom_rx, int n_tx, int n_rx,
                              double min_separation)
{
    if (h.rows() != geom_rx.total_ports() || h.cols() != geom_tx.total_ports())
        throw std::invalid_argument("greedy_select: channel does not match the geometries");
    if (n_rx < 1 || n_rx > h.rows() || n_tx < 1 || n_tx > h.cols())
        throw std::invalid_argument("greedy_select: active counts out of range");

    std::vector<Eigen::Vector3d> rx_pos(h.rows()), tx_pos(h.cols());
    for (int i = 0; i < h.rows(); ++i)
        rx_pos[i] = port_position(geom_rx, i + 1);
    for (int j = 0; j < h.cols(); ++j)
        tx_pos[j] = port_position(geom_tx, j + 1);

    Eigen::VectorXd row_norms = h.rowwise().norm();
    Eigen::VectorXd col_norms = h.colwise().norm();

    std::vector<int> rx = greedy_pick(row_norms, rx_pos, n_rx, min_separation, "rx");
    std::vector<int> tx = greedy_pick(col_norms, tx_pos, n_tx, min_separation, "tx");
    std::sort(rx.begin(), rx.end());
    std::sort(tx.begin(), tx.end());

    SelectionResult sel;
    for (int i : rx)
        sel.rx_ports.push_back(i + 1);
    for (int j : tx)
        sel.tx_ports.push_back(j + 1);
    return sel;
}

SelectionResult random_select(TrialSeed seed, int n_ports_tx, int n_ports_rx, int n_tx,
                              int n_rx)
{
    if (n_rx < 1 || n_rx > n_ports_rx || n_tx < 1 || n_tx > n_ports_tx)
        throw std::invalid_argument("random_select: active counts out of range");

    TrialRng rng(seed);
    auto pick = [&rng](int total, int want) {
        std::vector<int> pool(total);
        std::iota(pool.begin(), pool.end(), 1);
        for (int i = 0; i < want; ++i)
        {
            int j = i + int(rng.next_below(std::uint64_t(total - i)));
            std::swap(pool[i], pool[j]);
        }
        std::vector<int> out(pool.begin(), pool.begin() + want);
        std::sort(out.begin(), out.end());
        return out;
    };
    SelectionResult sel;
    sel.tx_ports = pick(n_ports_tx, n_tx);
    sel.rx_ports = pick(n_ports_rx, n_rx);
    return sel;
}

Eigen::MatrixXcd submatrix(const Eigen::MatrixXcd& h, const SelectionResult& selection)
{
    Eigen::MatrixXcd sub(selection.rx_ports.size(), selection.tx_ports.size());
    for (size_t i = 0; i < selection.rx_ports.size(); ++i)
    {
        int r = selection.rx_ports[i];
        if (r < 1 || r > h.rows())
            throw std::invalid_argument("submatrix: rx port index out of range");
        for (size_t j = 0; j < selection.tx_ports.size(); ++j)
        {
            int c = selection.tx_ports[j];
            if (c < 1 || c > h.cols())
                throw std::invalid_argument("submatrix: tx port index out of range");
            sub(i, j) = h(r - 1, c - 1);
        }
    }
    return sub;
}

} // namespace fas
