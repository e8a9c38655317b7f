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

#ifndef FAS_METRICS_HPP
#define FAS_METRICS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fas/channel.hpp"
#include "fas/coupling.hpp"
#include "fas/port_selection.hpp"

namespace fas {

enum class SelectionStrategy
{
    Qr,
    Exhaustive,
    Greedy,
    Random,
    AllPorts, ///< no selection: the whole grid is active (traditional MIMO)
};

enum class CouplingMode
{
    None,
    Liquid,
    Pixel,
};

SelectionStrategy strategy_from_name(const std::string& name);
std::string strategy_name(SelectionStrategy strategy);
CouplingMode coupling_from_name(const std::string& name);
std::string coupling_name(CouplingMode mode);

/// One simulated link: geometry and correlation on both sides, active port
/// counts, selection strategy and its knobs, transmit SNR (linear).
struct LinkScenario
{
    SurfaceGeometry geom_tx;
    SurfaceGeometry geom_rx;
    int n_tx = 1;
    int n_rx = 1;
    double delta = 1.0; ///< path loss amplitude
    SelectionStrategy strategy = SelectionStrategy::Qr;
    double snr = 1000.0; ///< linear
    std::string kernel = "j0-3d";

    SwapCriterion swap_criterion = SwapCriterion::DetRatio;
    double greedy_separation = 0.5;       ///< wavelengths
    std::uint64_t combo_limit = 1000000;  ///< exhaustive-search refusal bound
    CouplingMode coupling = CouplingMode::None;
    DipoleSpec dipole;
    SMatrixModel s_model;
};

void validate_scenario(const LinkScenario& scenario);

/// Precomputed per-scenario state; trial_rate is pure in the trial seed, so
/// trials may be evaluated concurrently in any order.
class ScenarioEngine
{
  public:
    explicit ScenarioEngine(const LinkScenario& scenario);

    /// Waterfilled rate of one seeded realization: synthesize, apply pixel
    /// coupling (before selection), select ports, apply liquid coupling
    /// (after selection), beamform and waterfill.
    double trial_rate(TrialSeed seed) const;

    const LinkScenario& scenario() const { return scenario_; }
    const ChannelModel& model() const { return model_; }

  private:
    LinkScenario scenario_;
    ChannelModel model_;
    std::optional<CouplingMatrices> pixel_matrices_;
};

/// Per-trial waterfilled rates for trial indices 0..trials-1. Results are
/// identical for every thread count (each slot is written exactly once).
std::vector<double> collect_rates(const LinkScenario& scenario, long trials,
                                  std::uint64_t campaign_seed, int threads = 1);

struct OutageEstimate
{
    double probability = 0.0;
    long trials = 0;
    double half_width95 = 0.0; ///< normal-approximation binomial CI
};

/// P{rate < q} over seeded trials.
OutageEstimate outage_fixed_rate(const LinkScenario& scenario, double q, long trials,
                                 std::uint64_t campaign_seed, int threads = 1);

/// P{rate < r log2(snr)}.
OutageEstimate outage_multiplexing(const LinkScenario& scenario, double r, long trials,
                                   std::uint64_t campaign_seed, int threads = 1);

/// q-outage capacity q (1 - P{rate < q}).
double q_outage_capacity(const LinkScenario& scenario, double q, long trials,
                         std::uint64_t campaign_seed, int threads = 1);

/// q-outage capacity gain of A over B with common random numbers:
/// q (P_B{rate < q} - P_A{rate < q}).
double q_outage_gain(const LinkScenario& scenario_a, const LinkScenario& scenario_b, double q,
                     long trials, std::uint64_t campaign_seed, int threads = 1);

} // namespace fas

#endif
