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

#ifndef FAS_DMT_HPP
#define FAS_DMT_HPP

#include <utility>
#include <vector>

namespace fas {

/// Piecewise-linear diversity-multiplexing tradeoff: breakpoints with r
/// strictly increasing and d strictly decreasing to 0 at the end; interior
/// collinear points are merged, so the stored curve is minimal.
struct DmtCurve
{
    std::vector<std::pair<double, double>> breakpoints; ///< (r, d)
};

/// Tradeoff of activating n_min chains out of an N_rx x N_tx i.i.d. channel:
/// breakpoints (r, (N_rx - r)(N_tx - r)) for r = 0..eta*, then a straight
/// drop to (n_min, 0), where eta* minimizes
/// (N_rx - eta)(N_tx - eta)/(n_min - eta) over 0 <= eta <= n_min - 1
/// (ties to the smallest eta).
DmtCurve dmt_subset_selection(int n_ports_rx, int n_ports_tx, int n_min);

/// Same construction on the effective correlation ranks of the two surfaces.
DmtCurve dmt_mimo_fas(int rank_rx, int rank_tx, int n_min);

/// Half-wavelength-grid antenna count supported by a w1 x w2 aperture:
/// (floor(w1/0.5)+1) * (floor(w2/0.5)+1).
int antenna_selection_grid_count(double w1, double w2);

/// Tradeoff of antenna selection on half-wavelength grids with the given
/// per-side aperture.
DmtCurve dmt_antenna_selection(double w1, double w2, int n_min);

/// Classical full-array tradeoff: (r, (n_rx - r)(n_tx - r)) for
/// r = 0..min(n_rx, n_tx).
DmtCurve dmt_traditional(int n_rx, int n_tx);

/// Linear interpolation between breakpoints; r outside the curve's range
/// throws std::invalid_argument.
double dmt_eval(const DmtCurve& curve, double r);

} // namespace fas

#endif
