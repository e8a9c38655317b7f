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

#ifndef FAS_PORT_SELECTION_HPP
#define FAS_PORT_SELECTION_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "fas/geometry.hpp"
#include "fas/rng.hpp"

namespace fas {

/// Active port sets, sorted ascending, 1-based (matching map_index).
struct SelectionResult
{
    std::vector<int> tx_ports;
    std::vector<int> rx_ports;
};

/// Column-swap acceptance rule of the strong-RRQR loop. AdditiveSum adds the
/// residual-column and inverse-row terms; DetRatio multiplies them, which
/// makes the entry equal the exact singular-value-product ratio of the swap
/// (so Omega > 1 iff the swap improves). DetRatio is the default.
enum class SwapCriterion
{
    AdditiveSum,
    DetRatio,
};

/// Thrown when a triangular block is singular to working tolerance.
struct numerical_rank_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Pivoted-QR factor state: M * Pi = Q * R with the permutation split into
/// an active block (first active_count columns) and the rest.
struct RrqrState
{
    std::vector<int> permutation; ///< 0-based column indices of M
    int active_count = 0;         ///< set by the selection loop
    Eigen::MatrixXcd q;
    Eigen::MatrixXcd r;
};

/// QR with column pivoting by largest remaining norm;
/// |diagonal of R| is nonincreasing and ||M Pi - Q R||_F <= 1e-10 ||M||_F.
RrqrState pivoted_qr(const Eigen::MatrixXcd& m);

/// Householder QR of M with a fixed column order (used after swaps).
RrqrState qr_with_permutation(const Eigen::MatrixXcd& m, std::vector<int> permutation);

/// Swap-gain matrix over (active k, inactive l) pairs. Requires
/// state.active_count >= 1; throws numerical_rank_error when the leading
/// triangular block is singular to tolerance (smallest singular value below
/// 1e-12 of the largest).
Eigen::MatrixXd omega_matrix(const RrqrState& state, SwapCriterion criterion);

struct ColumnSelection
{
    std::vector<int> columns; ///< 0-based, sorted ascending
    int swaps = 0;
    bool truncated = false; ///< max_swaps exhausted before Omega <= 1
};

/// Default swap budget, 10 * n * (N - n); DetRatio terminates on its own
/// (each swap strictly increases the active determinant), AdditiveSum needs
/// the bound.
long default_max_swaps(int n, int total_columns);

/// Strong-RRQR column subset selection: pivoted QR, then swap the
/// largest-Omega (k, l) pair while any Omega exceeds 1, refactoring with the
/// updated permutation. Ties break on the smallest (k, l).
ColumnSelection rrqr_select_columns(const Eigen::MatrixXcd& m, int n,
                                    SwapCriterion criterion = SwapCriterion::DetRatio,
                                    long max_swaps = -1);

/// Two-stage port selection: strong RRQR on H^H picks the receive ports,
/// then on the selected rows of H picks the transmit ports.
SelectionResult qr_mimo_fas_select(const Eigen::MatrixXcd& h, int n_tx, int n_rx,
                                   SwapCriterion criterion = SwapCriterion::DetRatio,
                                   long max_swaps = -1);

/// Exhaustive search over all port combinations, maximizing the waterfilled
/// rate; ties resolve to the lexicographically smallest index sets. Refuses
/// (std::runtime_error naming the count) when the combination count exceeds
/// combo_limit.
SelectionResult exhaustive_select(const Eigen::MatrixXcd& h, int n_tx, int n_rx, double snr,
                                  std::uint64_t combo_limit = 1000000);

/// Number of combinations C(N_tx,n_tx)*C(N_rx,n_rx), saturating at 2^64-1.
std::uint64_t selection_combination_count(int n_ports_tx, int n_tx, int n_ports_rx, int n_rx);

/// Low-SNR heuristic: rx ports by descending row norm of H, then tx ports by
/// descending column norm, skipping any port closer than min_separation
/// (wavelengths) to an already picked one. Throws std::runtime_error when
/// the separation constraint leaves fewer than the requested ports.
SelectionResult greedy_select(const Eigen::MatrixXcd& h, const SurfaceGeometry& geom_tx,
                              const SurfaceGeometry& geom_rx, int n_tx, int n_rx,
                              double min_separation = 0.5);

/// Uniform random distinct subsets, deterministic in the seed.
SelectionResult random_select(TrialSeed seed, int n_ports_tx, int n_ports_rx, int n_tx,
                              int n_rx);

/// Rows rx_ports and columns tx_ports of H, in sorted index order.
Eigen::MatrixXcd submatrix(const Eigen::MatrixXcd& h, const SelectionResult& selection);

} // namespace fas

#endif
