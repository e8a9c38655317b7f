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

#include "fas/dmt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fas {

namespace {

DmtCurve finalize(std::vector<std::pair<double, double>> pts)
{
    std::sort(pts.begin(), pts.end());
    // drop duplicates, then merge collinear interior points
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](auto& a, auto& b) { return a.first == b.first; }),
              pts.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& p : pts)
    {
        while (merged.size() >= 2)
        {
            const auto& a = merged[merged.size() - 2];
            const auto& b = merged.back();
            double cross = (b.first - a.first) * (p.second - a.second) -
                           (p.first - a.first) * (b.second - a.second);
            if (std::abs(cross) <= 1e-12 * std::max(1.0, std::abs(p.second)))
                merged.pop_back();
            else
                break;
        }
        merged.push_back(p);
    }
    for (size_t i = 1; i < merged.size(); ++i)
        if (merged[i].second >= merged[i - 1].second)
            throw std::logic_error("dmt: breakpoints must be strictly decreasing in d");
    return DmtCurve{std::move(merged)};
}

DmtCurve selection_curve(int big_rx, int big_tx, int n_min)
{
    if (n_min < 1 || n_min > std::min(big_rx, big_tx))
        throw std::invalid_argument("dmt: n_min out of range");

    int best_eta = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int eta = 0; eta <= n_min - 1; ++eta)
    {
        double v = double(big_rx - eta) * double(big_tx - eta) / double(n_min - eta);
        if (v < best)
        {
            best = v;
            best_eta = eta;
        }
    }

    std::vector<std::pair<double, double>> pts;
    for (int r = 0; r <= best_eta; ++r)
        pts.emplace_back(double(r), double(big_rx - r) * double(big_tx - r));
    pts.emplace_back(double(n_min), 0.0);
    return finalize(std::move(pts));
}

} // namespace

DmtCurve dmt_subset_selection(int n_ports_rx, int n_ports_tx, int n_min)
{
    return selection_curve(n_ports_rx, n_ports_tx, n_min);
}

DmtCurve dmt_mimo_fas(int rank_rx, int rank_tx, int n_min)
{
    return selection_curve(rank_rx, rank_tx, n_min);
}

int antenna_selection_grid_count(double w1, double w2)
{
    if (w1 < 0.0 || w2 < 0.0)
        throw std::invalid_argument("dmt: apertures must be >= 0");
    return (int(std::floor(w1 / 0.5)) + 1) * (int(std::floor(w2 / 0.5)) + 1);
}

DmtCurve dmt_antenna_selection(double w1, double w2, int n_min)
{
    int grid = antenna_selection_grid_count(w1, w2);
    return selection_curve(grid, grid, n_min);
}

DmtCurve dmt_traditional(int n_rx, int n_tx)
{
    if (n_rx < 1 || n_tx < 1)
        throw std::invalid_argument("dmt: antenna counts must be >= 1");
    std::vector<std::pair<double, double>> pts;
    for (int r = 0; r <= std::min(n_rx, n_tx); ++r)
        pts.emplace_back(double(r), double(n_rx - r) * double(n_tx - r));
    return finalize(std::move(pts));
}

double dmt_eval(const DmtCurve& curve, double r)
{
    if (curve.breakpoints.size() < 2)
        throw std::invalid_argument("dmt_eval: curve needs at least two breakpoints");
    double r0 = curve.breakpoints.front().first;
    double r1 = curve.breakpoints.back().first;
    if (r < r0 || r > r1)
        throw std::invalid_argument("dmt_eval: multiplexing gain outside the curve range");

    for (size_t i = 1; i < curve.breakpoints.size(); ++i)
    {
        const auto& a = curve.breakpoints[i - 1];
        const auto& b = curve.breakpoints[i];
        if (r <= b.first)
        {
            double t = (r - a.first) / (b.first - a.first);
            return a.second + t * (b.second - a.second);
        }
    }
    return curve.breakpoints.back().second;
}

} // namespace fas
