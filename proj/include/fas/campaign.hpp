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

#ifndef FAS_CAMPAIGN_HPP
#define FAS_CAMPAIGN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fas/metrics.hpp"

namespace fas {

/// Batch experiment description, loadable from versioned JSON.
/// `sweep` is experiment-specific: active port counts (rate-vs-ns), ports in
/// grid dimension 2 (rate-vs-Ns), SNR in dB (outage-vs-snr), target rates q
/// (outage-vs-q, q-outage), apertures in wavelengths (table1), multiplexing
/// gains r (dmt evaluation grid; empty = breakpoints only).
struct CampaignConfig
{
    int version = 1;
    std::string experiment;
    LinkScenario scenario;
    long trials = 10000;
    std::uint64_t seed = 1;
    std::vector<double> sweep;
    double q = 0.0;        ///< fixed target rate where the experiment needs one
    double xi = 1e-3;      ///< eigenvalue threshold for rank estimation
    int rank_rx = 0;       ///< dmt: 0 derives the rank from the rx geometry
    int rank_tx = 0;       ///< dmt: 0 derives the rank from the tx geometry
    int threads = 0;       ///< 0 = all hardware threads
    std::string output;    ///< CSV path; summary lands next to it
};

extern const std::vector<std::string> kExperimentNames;

CampaignConfig config_from_json_text(const std::string& text);
CampaignConfig load_config(const std::string& path);
std::string config_to_json_text(const CampaignConfig& config);

/// Empty iff run_campaign would accept the config; each entry names the
/// offending field and the violated constraint.
std::vector<std::string> validate_config(const CampaignConfig& config);

struct ResultRow
{
    double sweep_value = 0.0;
    std::string metric;
    double value = 0.0;
    long trials = 0;
    double ci95 = 0.0;
    std::uint64_t seed = 0;
};

struct CampaignResult
{
    std::vector<ResultRow> rows;
    std::string csv_path;
    std::string summary_path;
};

/// Renders rows as the fixed-header CSV (LF line endings, %.17g values).
std::string rows_to_csv(const std::vector<ResultRow>& rows);

/// Executes the configured experiment over the sweep and writes the CSV and
/// JSON summary. Relative output paths resolve under $FAS_OUT_DIR when set.
/// Throws std::invalid_argument listing the diagnostics when validation
/// fails.
CampaignResult run_campaign(const CampaignConfig& config);

/// Same, without touching the filesystem (rows only).
std::vector<ResultRow> run_campaign_rows(const CampaignConfig& config);

} // namespace fas

#endif
