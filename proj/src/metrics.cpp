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

#include "fas/metrics.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "fas/beamforming.hpp"

namespace fas {

SelectionStrategy strategy_from_name(const std::string& name)
{
    if (name == "qr")
        return SelectionStrategy::Qr;
    if (name == "exhaustive")
        return SelectionStrategy::Exhaustive;
    if (name == "greedy")
        return SelectionStrategy::Greedy;
    if (name == "random")
        return SelectionStrategy::Random;
    if (name == "all-ports")
        return SelectionStrategy::AllPorts;
    throw std::invalid_argument("unknown selection strategy '" + name + "'");
}

std::string strategy_name(SelectionStrategy strategy)
{
    switch (strategy)
    {
        case SelectionStrategy::Qr: return "qr";
        case SelectionStrategy::Exhaustive: return "exhaustive";
        case SelectionStrategy::Greedy: return "greedy";
        case SelectionStrategy::Random: return "random";
        case SelectionStrategy::AllPorts: return "all-ports";
    }
    return "?";
}

CouplingMode coupling_from_name(const std::string& name)
{
    if (name == "none")
        return CouplingMode::None;
    if (name == "liquid")
        return CouplingMode::Liquid;
    if (name == "pixel")
        return CouplingMode::Pixel;
    throw std::invalid_argument("unknown coupling mode '" + name + "'");
}

std::string coupling_name(CouplingMode mode)
{
    switch (mode)
    {
        case CouplingMode::None: return "none";
        case CouplingMode::Liquid: return "liquid";
        case CouplingMode::Pixel: return "pixel";
    }
    return "?";
}

void validate_scenario(const LinkScenario& scenario)
{
    validate_geometry(scenario.geom_tx);
    validate_geometry(scenario.geom_rx);
    if (scenario.n_tx < 1 || scenario.n_tx > scenario.geom_tx.total_ports())
        throw std::invalid_argument("scenario: n_tx out of range");
    if (scenario.n_rx < 1 || scenario.n_rx > scenario.geom_rx.total_ports())
        throw std::invalid_argument("scenario: n_rx out of range");
    if (scenario.snr <= 0.0)
        throw std::invalid_argument("scenario: snr must be positive");
    if (scenario.delta <= 0.0)
        throw std::invalid_argument("scenario: delta must be positive");
    if (scenario.strategy == SelectionStrategy::AllPorts &&
        (scenario.n_tx != scenario.geom_tx.total_ports() ||
         scenario.n_rx != scenario.geom_rx.total_ports()))
        throw std::invalid_argument("scenario: all-ports strategy activates the whole grid, "
                                    "so n must equal the port count");
    kernel_by_name(scenario.kernel);
}

namespace {

// Salt decoupling the random-selection stream from the fading stream of the
// same trial.
constexpr std::uint64_t kSelectionSalt = 0xA5EC7104C0FFEE17ULL;

// Fixed-size blocks claimed through an atomic cursor; each worker writes
// disjoint trial slots, so results are independent of the thread count.
// The first worker exception is rethrown on the calling thread.
template <typename Fn>
void for_each_trial(long trials, int threads, Fn&& fn)
{
    threads = std::max(1, threads);
    if (threads == 1 || trials < 128)
    {
        for (long t = 0; t < trials; ++t)
            fn(t);
        return;
    }

    constexpr long kBlock = 64;
    std::atomic<long> cursor{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&]() {
        try
        {
            while (!failed.load(std::memory_order_relaxed))
            {
                long begin = cursor.fetch_add(kBlock);
                if (begin >= trials)
                    return;
                long end = std::min(begin + kBlock, trials);
                for (long t = begin; t < end; ++t)
                    fn(t);
            }
        }
        catch (...)
        {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!failed.exchange(true))
                error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

OutageEstimate outage_from_rates(const std::vector<double>& rates, double threshold)
{
    long below = 0;
    for (double r : rates)
        if (r < threshold)
            ++below;
    const long trials = long(rates.size());
    double p = double(below) / double(trials);
    double hw = 1.96 * std::sqrt(p * (1.0 - p) / double(trials));
    return OutageEstimate{p, trials, hw};
}

} // namespace

ScenarioEngine::ScenarioEngine(const LinkScenario& scenario) : scenario_(scenario)
{
    validate_scenario(scenario_);
    auto kernel = kernel_by_name(scenario_.kernel);
    model_ = make_channel_model(scenario_.geom_rx, scenario_.geom_tx, *kernel, scenario_.delta);
    if (scenario_.coupling == CouplingMode::Pixel)
        pixel_matrices_ =
            pixel_coupling(scenario_.geom_rx, scenario_.geom_tx, scenario_.s_model,
                           scenario_.dipole);
}

double ScenarioEngine::trial_rate(TrialSeed seed) const
{
    Eigen::MatrixXcd h = realize_channel(model_, seed).h;
    if (pixel_matrices_)
        h = apply_coupling_pixel(h, *pixel_matrices_);

    SelectionResult sel;
    switch (scenario_.strategy)
    {
        case SelectionStrategy::Qr:
            sel = qr_mimo_fas_select(h, scenario_.n_tx, scenario_.n_rx,
                                     scenario_.swap_criterion);
            break;
        case SelectionStrategy::Exhaustive:
            sel = exhaustive_select(h, scenario_.n_tx, scenario_.n_rx, scenario_.snr,
                                    scenario_.combo_limit);
            break;
        case SelectionStrategy::Greedy:
            sel = greedy_select(h, scenario_.geom_tx, scenario_.geom_rx, scenario_.n_tx,
                                scenario_.n_rx, scenario_.greedy_separation);
            break;
        case SelectionStrategy::Random:
            sel = random_select(TrialSeed{seed.campaign ^ kSelectionSalt, seed.trial},
                                scenario_.geom_tx.total_ports(),
                                scenario_.geom_rx.total_ports(), scenario_.n_tx,
                                scenario_.n_rx);
            break;
        case SelectionStrategy::AllPorts:
            for (int i = 1; i <= scenario_.geom_tx.total_ports(); ++i)
                sel.tx_ports.push_back(i);
            for (int i = 1; i <= scenario_.geom_rx.total_ports(); ++i)
                sel.rx_ports.push_back(i);
            break;
    }

    Eigen::MatrixXcd h_bar = submatrix(h, sel);
    if (scenario_.coupling == CouplingMode::Liquid)
        h_bar = apply_coupling_liquid(
            h_bar, liquid_coupling(sel, scenario_.geom_rx, scenario_.geom_tx,
                                   scenario_.dipole));
    return rate(h_bar, scenario_.snr);
}

std::vector<double> collect_rates(const LinkScenario& scenario, long trials,
                                  std::uint64_t campaign_seed, int threads)
{
    if (trials < 1)
        throw std::invalid_argument("collect_rates: trials must be >= 1");
    ScenarioEngine engine(scenario);
    std::vector<double> rates(trials);
    for_each_trial(trials, threads, [&](long t) {
        rates[t] = engine.trial_rate(TrialSeed{campaign_seed, std::uint64_t(t)});
    });
    return rates;
}

OutageEstimate outage_fixed_rate(const LinkScenario& scenario, double q, long trials,
                                 std::uint64_t campaign_seed, int threads)
{
    return outage_from_rates(collect_rates(scenario, trials, campaign_seed, threads), q);
}

OutageEstimate outage_multiplexing(const LinkScenario& scenario, double r, long trials,
                                   std::uint64_t campaign_seed, int threads)
{
    if (r < 0.0)
        throw std::invalid_argument("outage_multiplexing: multiplexing gain must be >= 0");
    double threshold = r * std::log2(scenario.snr);
    return outage_from_rates(collect_rates(scenario, trials, campaign_seed, threads),
                             threshold);
}

double q_outage_capacity(const LinkScenario& scenario, double q, long trials,
                         std::uint64_t campaign_seed, int threads)
{
    if (q < 0.0)
        throw std::invalid_argument("q_outage_capacity: q must be >= 0");
    return q * (1.0 - outage_fixed_rate(scenario, q, trials, campaign_seed, threads).probability);
}

double q_outage_gain(const LinkScenario& scenario_a, const LinkScenario& scenario_b, double q,
                     long trials, std::uint64_t campaign_seed, int threads)
{
    if (q < 0.0)
        throw std::invalid_argument("q_outage_gain: q must be >= 0");
    double pa = outage_fixed_rate(scenario_a, q, trials, campaign_seed, threads).probability;
    double pb = outage_fixed_rate(scenario_b, q, trials, campaign_seed, threads).probability;
    return q * (pb - pa);
}

} // namespace fas
