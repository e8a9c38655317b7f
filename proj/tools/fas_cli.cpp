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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fas/campaign.hpp"
#include "fas/dmt.hpp"

namespace {

void write_or_print(const std::string& text, const std::string& out_path)
{
    if (out_path.empty())
    {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
}

int cmd_run(const std::string& config_path, std::int64_t seed, long trials, int threads,
            const std::string& out)
{
    fas::CampaignConfig config = fas::load_config(config_path);
    if (seed >= 0)
        config.seed = std::uint64_t(seed);
    if (trials > 0)
        config.trials = trials;
    if (threads > 0)
        config.threads = threads;
    if (!out.empty())
        config.output = out;

    fas::CampaignResult result = fas::run_campaign(config);
    std::cout << "wrote " << result.rows.size() << " rows to " << result.csv_path << "\n"
              << "summary: " << result.summary_path << "\n";
    return 0;
}

int cmd_validate(const std::string& config_path)
{
    fas::CampaignConfig config = fas::load_config(config_path);
    auto diags = fas::validate_config(config);
    if (diags.empty())
    {
        std::cout << "config ok\n";
        return 0;
    }
    for (const auto& d : diags)
        std::cerr << "invalid: " << d << "\n";
    return 1;
}

int cmd_dmt(int rank_rx, int rank_tx, int n_min, double aperture, const std::string& out)
{
    std::vector<fas::ResultRow> rows;
    auto emit = [&rows](const fas::DmtCurve& curve, const std::string& metric) {
        for (const auto& [r, d] : curve.breakpoints)
            rows.push_back(fas::ResultRow{r, metric, d, 0, 0.0, 0});
    };
    emit(fas::dmt_mimo_fas(rank_rx, rank_tx, n_min), "d_mimo_fas");
    int grid = fas::antenna_selection_grid_count(aperture, aperture);
    if (n_min <= grid)
        emit(fas::dmt_antenna_selection(aperture, aperture, n_min), "d_antenna_selection");
    emit(fas::dmt_traditional(n_min, n_min), "d_traditional");
    write_or_print(fas::rows_to_csv(rows), out);
    return 0;
}

int cmd_table1(int n1, int n2, double xi, const std::vector<double>& apertures,
               const std::string& kernel, const std::string& out)
{
    std::vector<fas::ResultRow> rows;
    auto k = fas::kernel_by_name(kernel);
    for (double w : apertures)
    {
        fas::SurfaceGeometry g{n1, n2, w, w};
        auto eig = fas::eigendecompose(fas::build_correlation_matrix(g, *k));
        fas::RankEstimate est = fas::estimate_rank(eig, xi);
        rows.push_back(fas::ResultRow{w, "rank", double(est.rank), 0, 0.0, 0});
        rows.push_back(fas::ResultRow{w, "truncation_error", est.truncation_error, 0, 0.0, 0});
    }
    write_or_print(fas::rows_to_csv(rows), out);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"MIMO fluid-antenna-system link simulator"};
    app.require_subcommand(1);

    // run
    std::string run_config, run_out;
    std::int64_t run_seed = -1;
    long run_trials = 0;
    int run_threads = 0;
    CLI::App* run = app.add_subcommand("run", "execute a campaign config");
    run->add_option("config", run_config, "campaign config JSON")->required();
    run->add_option("--seed", run_seed, "override the campaign seed");
    run->add_option("--trials", run_trials, "override the trial count");
    run->add_option("--threads", run_threads, "worker threads (default: all cores)");
    run->add_option("--out", run_out, "override the output CSV path");

    // validate
    std::string val_config;
    CLI::App* validate = app.add_subcommand("validate", "check a campaign config");
    validate->add_option("config", val_config, "campaign config JSON")->required();

    // dmt
    int dmt_rank_rx = 23, dmt_rank_tx = 23, dmt_n_min = 4;
    double dmt_aperture = 1.0;
    std::string dmt_out;
    CLI::App* dmt = app.add_subcommand("dmt", "closed-form tradeoff curves");
    dmt->add_option("--rank-rx", dmt_rank_rx, "effective rank of the rx surface");
    dmt->add_option("--rank-tx", dmt_rank_tx, "effective rank of the tx surface");
    dmt->add_option("--n-min", dmt_n_min, "active chains");
    dmt->add_option("--aperture", dmt_aperture, "per-side aperture (wavelengths) for the "
                                                "antenna-selection baseline");
    dmt->add_option("--out", dmt_out, "output CSV path (default: stdout)");

    // table1
    int t1_n1 = 10, t1_n2 = 10;
    double t1_xi = 1e-3;
    std::vector<double> t1_apertures{0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    std::string t1_kernel = "j0-3d", t1_out;
    CLI::App* table1 = app.add_subcommand("table1", "effective ranks over an aperture sweep");
    table1->add_option("--n1", t1_n1, "ports along dimension 1");
    table1->add_option("--n2", t1_n2, "ports along dimension 2");
    table1->add_option("--xi", t1_xi, "eigenvalue threshold");
    table1->add_option("--apertures", t1_apertures, "square apertures in wavelengths")
        ->delimiter(',');
    table1->add_option("--kernel", t1_kernel, "correlation kernel id");
    table1->add_option("--out", t1_out, "output CSV path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (run->parsed())
            return cmd_run(run_config, run_seed, run_trials, run_threads, run_out);
        if (validate->parsed())
            return cmd_validate(val_config);
        if (dmt->parsed())
            return cmd_dmt(dmt_rank_rx, dmt_rank_tx, dmt_n_min, dmt_aperture, dmt_out);
        if (table1->parsed())
            return cmd_table1(t1_n1, t1_n2, t1_xi, t1_apertures, t1_kernel, t1_out);
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
