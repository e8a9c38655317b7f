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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "fas/campaign.hpp"

namespace {

fas::CampaignConfig base_config()
{
    fas::CampaignConfig c;
    c.experiment = "outage-vs-q";
    c.scenario.geom_tx = fas::SurfaceGeometry{2, 2, 0.5, 0.5};
    c.scenario.geom_rx = fas::SurfaceGeometry{2, 2, 0.5, 0.5};
    c.scenario.n_tx = 2;
    c.scenario.n_rx = 2;
    c.scenario.snr = 1000.0;
    c.trials = 400;
    c.seed = 99;
    c.sweep = {4.0, 8.0, 12.0};
    c.threads = 2;
    return c;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("config json round trip")
{
    fas::CampaignConfig c = base_config();
    c.scenario.strategy = fas::SelectionStrategy::Greedy;
    c.scenario.greedy_separation = 0.25;
    c.scenario.coupling = fas::CouplingMode::None;
    c.q = 7.0;

    fas::CampaignConfig back = fas::config_from_json_text(fas::config_to_json_text(c));
    CHECK(back.experiment == c.experiment);
    CHECK(back.trials == c.trials);
    CHECK(back.seed == c.seed);
    CHECK(back.sweep == c.sweep);
    CHECK(back.scenario.strategy == c.scenario.strategy);
    CHECK(back.scenario.greedy_separation == c.scenario.greedy_separation);
    CHECK(back.scenario.geom_tx.n1 == c.scenario.geom_tx.n1);
    CHECK(back.scenario.snr == doctest::Approx(c.scenario.snr).epsilon(1e-12));
}

TEST_CASE("config validation diagnostics")
{
    fas::CampaignConfig ok = base_config();
    CHECK(fas::validate_config(ok).empty());

    fas::CampaignConfig bad = base_config();
    bad.scenario.n_tx = 9; // above the 4-port grid
    auto diags = fas::validate_config(bad);
    REQUIRE(!diags.empty());
    CHECK(diags[0].find("n_tx") != std::string::npos);

    fas::CampaignConfig unknown = base_config();
    unknown.experiment = "frobnicate";
    CHECK(!fas::validate_config(unknown).empty());

    // exhaustive refusal names the combination count
    fas::CampaignConfig huge = base_config();
    huge.scenario.geom_tx = fas::SurfaceGeometry{10, 10, 1, 1};
    huge.scenario.geom_rx = fas::SurfaceGeometry{10, 10, 1, 1};
    huge.scenario.n_tx = 4;
    huge.scenario.n_rx = 4;
    huge.scenario.strategy = fas::SelectionStrategy::Exhaustive;
    huge.scenario.combo_limit = 1000;
    auto refusal = fas::validate_config(huge);
    REQUIRE(!refusal.empty());
    CHECK(refusal[0].find("combinations") != std::string::npos);

    // the dipole grid constraint when coupling is on
    fas::CampaignConfig coupled = base_config();
    coupled.scenario.coupling = fas::CouplingMode::Liquid;
    auto cdiags = fas::validate_config(coupled); // 2 ports over 0.5 wl: needs n1 = 2? no: floor(0.5/0.5)+1 = 2 -> ok
    coupled.scenario.geom_tx.w1 = 1.0;           // now requires n1 = 3
    cdiags = fas::validate_config(coupled);
    REQUIRE(!cdiags.empty());
    CHECK(cdiags[0].find("dipole") != std::string::npos);
}

TEST_CASE("reference-table experiment")
{
    fas::CampaignConfig c;
    c.experiment = "table1";
    c.scenario.geom_rx = fas::SurfaceGeometry{10, 10, 1, 1};
    c.scenario.geom_tx = fas::SurfaceGeometry{10, 10, 1, 1};
    c.scenario.n_tx = 4;
    c.scenario.n_rx = 4;
    c.xi = 1e-3;
    c.sweep = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};

    auto rows = fas::run_campaign_rows(c);
    REQUIRE(rows.size() == 12);
    const int expected[] = {13, 23, 34, 48, 60, 73};
    for (int i = 0; i < 6; ++i)
    {
        CHECK(rows[2 * i].metric == "rank");
        CHECK(rows[2 * i].value == expected[i]);
        CHECK(rows[2 * i + 1].metric == "truncation_error");
        CHECK(rows[2 * i + 1].value <= 0.006);
    }
}

TEST_CASE("tradeoff-curve experiment")
{
    fas::CampaignConfig c;
    c.experiment = "dmt";
    c.scenario.geom_rx = fas::SurfaceGeometry{10, 10, 1, 1};
    c.scenario.geom_tx = fas::SurfaceGeometry{10, 10, 1, 1};
    c.scenario.n_tx = 4;
    c.scenario.n_rx = 4;
    c.xi = 1e-3;

    auto rows = fas::run_campaign_rows(c);
    REQUIRE(!rows.empty());
    CHECK(rows[0].metric == "d_mimo_fas");
    CHECK(rows[0].sweep_value == 0.0);
    CHECK(rows[0].value == 529.0); // rank 23 per side at xi = 1e-3
}

TEST_CASE("campaign csv is byte-identical across reruns and thread counts")
{
    auto tmp = std::filesystem::temp_directory_path() / "fas_campaign_test";
    std::filesystem::create_directories(tmp);

    fas::CampaignConfig c = base_config();
    c.output = (tmp / "run_a.csv").string();
    c.threads = 1;
    auto res_a = fas::run_campaign(c);

    c.output = (tmp / "run_b.csv").string();
    c.threads = 4;
    auto res_b = fas::run_campaign(c);

    std::string a = slurp(res_a.csv_path);
    std::string b = slurp(res_b.csv_path);
    CHECK(!a.empty());
    CHECK(a == b);

    // header and row shape
    CHECK(a.rfind("sweep,metric,value,trials,ci95,seed\n", 0) == 0);
    CHECK(std::filesystem::exists(res_a.summary_path));

    std::filesystem::remove_all(tmp);
}

TEST_CASE("covariance-check experiment")
{
    fas::CampaignConfig c;
    c.experiment = "covariance-check";
    c.scenario.geom_tx = fas::SurfaceGeometry{2, 1, 0.3, 0.0};
    c.scenario.geom_rx = fas::SurfaceGeometry{2, 1, 0.3, 0.0};
    c.scenario.n_tx = 2;
    c.scenario.n_rx = 2;
    c.trials = 30000;
    c.seed = 7;

    auto rows = fas::run_campaign_rows(c);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].metric == "cov_rel_error");
    CHECK(rows[0].value < 0.05);
}

TEST_CASE("run_campaign rejects invalid configs")
{
    fas::CampaignConfig c = base_config();
    c.trials = 0;
    CHECK_THROWS_AS((void)fas::run_campaign_rows(c), std::invalid_argument);
}
