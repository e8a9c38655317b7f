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

#include "fas/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "fas/dmt.hpp"

namespace fas {

using nlohmann::json;

const std::vector<std::string> kExperimentNames = {
    "rate-vs-ns", "rate-vs-Ns", "outage-vs-snr", "outage-vs-q",
    "dmt",        "q-outage",   "table1",        "covariance-check",
};

namespace {

SurfaceGeometry geometry_from_json(const json& j)
{
    SurfaceGeometry g;
    g.n1 = j.at("n1").get<int>();
    g.n2 = j.at("n2").get<int>();
    g.w1 = j.at("w1").get<double>();
    g.w2 = j.at("w2").get<double>();
    return g;
}

json geometry_to_json(const SurfaceGeometry& g)
{
    return json{{"n1", g.n1}, {"n2", g.n2}, {"w1", g.w1}, {"w2", g.w2}};
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

} // namespace

CampaignConfig config_from_json_text(const std::string& text)
{
    json j = json::parse(text);
    CampaignConfig c;
    c.version = j.value("version", 1);
    c.experiment = j.at("experiment").get<std::string>();
    c.trials = j.value("trials", 10000L);
    c.seed = j.value("seed", std::uint64_t(1));
    if (j.contains("sweep"))
        c.sweep = j.at("sweep").get<std::vector<double>>();
    c.q = j.value("q", 0.0);
    c.xi = j.value("xi", 1e-3);
    c.rank_rx = j.value("rank_rx", 0);
    c.rank_tx = j.value("rank_tx", 0);
    c.threads = j.value("threads", 0);
    c.output = j.value("output", std::string{});

    const json& s = j.at("scenario");
    c.scenario.geom_tx = geometry_from_json(s.at("geom_tx"));
    c.scenario.geom_rx = geometry_from_json(s.at("geom_rx"));
    c.scenario.n_tx = s.value("n_tx", 1);
    c.scenario.n_rx = s.value("n_rx", 1);
    c.scenario.delta = s.value("delta", 1.0);
    c.scenario.strategy = strategy_from_name(s.value("strategy", std::string("qr")));
    c.scenario.snr = db_to_linear(s.value("snr_db", 30.0));
    c.scenario.kernel = s.value("kernel", std::string("j0-3d"));
    c.scenario.greedy_separation = s.value("greedy_separation", 0.5);
    c.scenario.combo_limit = s.value("combo_limit", std::uint64_t(1000000));
    c.scenario.swap_criterion = s.value("swap_criterion", std::string("det-ratio")) ==
                                        std::string("additive-sum")
                                    ? SwapCriterion::AdditiveSum
                                    : SwapCriterion::DetRatio;
    c.scenario.coupling = coupling_from_name(j.value("coupling", std::string("none")));
    return c;
}

CampaignConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return config_from_json_text(text);
}

std::string config_to_json_text(const CampaignConfig& c)
{
    json s{
        {"geom_tx", geometry_to_json(c.scenario.geom_tx)},
        {"geom_rx", geometry_to_json(c.scenario.geom_rx)},
        {"n_tx", c.scenario.n_tx},
        {"n_rx", c.scenario.n_rx},
        {"delta", c.scenario.delta},
        {"strategy", strategy_name(c.scenario.strategy)},
        {"snr_db", linear_to_db(c.scenario.snr)},
        {"kernel", c.scenario.kernel},
        {"greedy_separation", c.scenario.greedy_separation},
        {"combo_limit", c.scenario.combo_limit},
        {"swap_criterion",
         c.scenario.swap_criterion == SwapCriterion::AdditiveSum ? "additive-sum" : "det-ratio"},
    };
    json j{
        {"version", c.version},
        {"experiment", c.experiment},
        {"scenario", s},
        {"trials", c.trials},
        {"seed", c.seed},
        {"sweep", c.sweep},
        {"q", c.q},
        {"xi", c.xi},
        {"rank_rx", c.rank_rx},
        {"rank_tx", c.rank_tx},
        {"threads", c.threads},
        {"coupling", coupling_name(c.scenario.coupling)},
        {"output", c.output},
    };
    return j.dump(2) + "\n";
}

namespace {

bool near_integer(double v) { return std::abs(v - std::round(v)) < 1e-9; }

int dipole_grid_count(double w) { return int(std::floor(w / 0.5)) + 1; }

} // namespace

std::vector<std::string> validate_config(const CampaignConfig& c)
{
    std::vector<std::string> diags;
    auto bad = [&diags](const std::string& field, const std::string& what) {
        diags.push_back(field + ": " + what);
    };

    if (std::find(kExperimentNames.begin(), kExperimentNames.end(), c.experiment) ==
        kExperimentNames.end())
        bad("experiment", "unknown experiment '" + c.experiment + "'");
    if (c.trials < 1)
        bad("trials", "must be >= 1");
    if (c.xi <= 0.0)
        bad("xi", "must be positive");
    if (c.threads < 0)
        bad("threads", "must be >= 0");

    const LinkScenario& sc = c.scenario;
    if (sc.geom_tx.n1 < 1 || sc.geom_tx.n2 < 1)
        bad("scenario.geom_tx", "port counts must be >= 1");
    if (sc.geom_rx.n1 < 1 || sc.geom_rx.n2 < 1)
        bad("scenario.geom_rx", "port counts must be >= 1");
    if (sc.geom_tx.w1 < 0 || sc.geom_tx.w2 < 0 || sc.geom_rx.w1 < 0 || sc.geom_rx.w2 < 0)
        bad("scenario.geom", "apertures must be >= 0");
    if (sc.n_tx < 1 || sc.n_tx > sc.geom_tx.total_ports())
        bad("scenario.n_tx", "must be in [1, N_tx]");
    if (sc.n_rx < 1 || sc.n_rx > sc.geom_rx.total_ports())
        bad("scenario.n_rx", "must be in [1, N_rx]");
    if (sc.snr <= 0.0)
        bad("scenario.snr_db", "snr must be positive");
    if (sc.delta <= 0.0)
        bad("scenario.delta", "must be positive");
    try
    {
        kernel_by_name(sc.kernel);
    }
    catch (const std::exception&)
    {
        bad("scenario.kernel", "unknown kernel '" + sc.kernel + "'");
    }

    if (sc.strategy == SelectionStrategy::Exhaustive)
    {
        std::uint64_t combos =
            selection_combination_count(sc.geom_tx.total_ports(), sc.n_tx,
                                        sc.geom_rx.total_ports(), sc.n_rx);
        if (combos > sc.combo_limit)
            bad("scenario.strategy",
                "exhaustive search needs " + std::to_string(combos) +
                    " combinations, above the limit of " + std::to_string(sc.combo_limit));
    }

    if (sc.coupling != CouplingMode::None)
    {
        // Dipole elements pin the grid pitch in dimension 1 to half a
        // wavelength on each side.
        if (sc.geom_tx.n1 != dipole_grid_count(sc.geom_tx.w1))
            bad("scenario.geom_tx.n1",
                "coupling needs the dipole grid constraint n1 = floor(w1/0.5)+1 = " +
                    std::to_string(dipole_grid_count(sc.geom_tx.w1)));
        if (sc.geom_rx.n1 != dipole_grid_count(sc.geom_rx.w1))
            bad("scenario.geom_rx.n1",
                "coupling needs the dipole grid constraint n1 = floor(w1/0.5)+1 = " +
                    std::to_string(dipole_grid_count(sc.geom_rx.w1)));
    }

    bool needs_sweep = c.experiment != "covariance-check" && c.experiment != "dmt";
    if (needs_sweep && c.sweep.empty())
        bad("sweep", "must not be empty for experiment '" + c.experiment + "'");

    if (c.experiment == "rate-vs-ns")
        for (double v : c.sweep)
        {
            if (!near_integer(v) || v < 1 ||
                v > std::min(sc.geom_tx.total_ports(), sc.geom_rx.total_ports()))
            {
                bad("sweep", "active port counts must be integers in [1, N]");
                continue;
            }
            if (sc.strategy == SelectionStrategy::Exhaustive)
            {
                int n = int(std::lround(v));
                std::uint64_t combos =
                    selection_combination_count(sc.geom_tx.total_ports(), n,
                                                sc.geom_rx.total_ports(), n);
                if (combos > sc.combo_limit)
                    bad("sweep", "exhaustive search at n=" + std::to_string(n) + " needs " +
                                     std::to_string(combos) +
                                     " combinations, above the limit of " +
                                     std::to_string(sc.combo_limit));
            }
        }
    if (c.experiment == "rate-vs-Ns")
        for (double v : c.sweep)
        {
            if (!near_integer(v) || v < 1)
            {
                bad("sweep", "grid dimension-2 counts must be positive integers");
                continue;
            }
            int n2 = int(std::lround(v));
            if (n2 * sc.geom_tx.n1 < sc.n_tx || n2 * sc.geom_rx.n1 < sc.n_rx)
                bad("sweep", "a grid of " + std::to_string(n2) +
                                 " dimension-2 ports leaves fewer ports than the active "
                                 "count");
        }
    if (c.experiment == "outage-vs-snr" && c.q <= 0.0)
        bad("q", "outage-vs-snr needs a positive target rate q");
    if (c.experiment == "outage-vs-q" || c.experiment == "q-outage")
        for (double v : c.sweep)
            if (v < 0.0)
                bad("sweep", "target rates must be >= 0");
    if (c.experiment == "dmt")
    {
        if (c.rank_rx < 0 || c.rank_tx < 0)
            bad("rank_rx/rank_tx", "must be >= 0 (0 derives the rank from the geometry)");
        int nmin = std::min(sc.n_tx, sc.n_rx);
        if (c.rank_rx > 0 && c.rank_tx > 0 && nmin > std::min(c.rank_rx, c.rank_tx))
            bad("scenario.n_tx/n_rx", "n_min exceeds the given ranks");
    }
    return diags;
}

namespace {

double mean_of(const std::vector<double>& v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

double mean_ci95(const std::vector<double>& v)
{
    double m = mean_of(v);
    double ss = 0.0;
    for (double x : v)
        ss += (x - m) * (x - m);
    double sd = std::sqrt(ss / std::max<size_t>(v.size() - 1, 1));
    return 1.96 * sd / std::sqrt(double(v.size()));
}

int effective_threads(int requested)
{
    if (requested > 0)
        return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

int derived_rank(const SurfaceGeometry& geom, const std::string& kernel_id, double xi)
{
    auto kernel = kernel_by_name(kernel_id);
    auto eig = eigendecompose(build_correlation_matrix(geom, *kernel));
    return estimate_rank(eig, xi).rank;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b)
{
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

void append_curve(std::vector<ResultRow>& rows, const DmtCurve& curve,
                  const std::vector<double>& grid, const std::string& metric,
                  std::uint64_t seed)
{
    if (grid.empty())
    {
        for (const auto& [r, d] : curve.breakpoints)
            rows.push_back(ResultRow{r, metric, d, 0, 0.0, seed});
        return;
    }
    for (double r : grid)
        rows.push_back(ResultRow{r, metric, dmt_eval(curve, r), 0, 0.0, seed});
}

} // namespace

std::vector<ResultRow> run_campaign_rows(const CampaignConfig& config)
{
    auto diags = validate_config(config);
    if (!diags.empty())
    {
        std::string msg = "invalid config:";
        for (const auto& d : diags)
            msg += "\n  - " + d;
        throw std::invalid_argument(msg);
    }

    const int threads = effective_threads(config.threads);
    std::vector<ResultRow> rows;

    if (config.experiment == "table1")
    {
        auto kernel = kernel_by_name(config.scenario.kernel);
        for (double w : config.sweep)
        {
            SurfaceGeometry g = config.scenario.geom_rx;
            g.w1 = w;
            g.w2 = w;
            auto eig = eigendecompose(build_correlation_matrix(g, *kernel));
            RankEstimate est = estimate_rank(eig, config.xi);
            rows.push_back(ResultRow{w, "rank", double(est.rank), 0, 0.0, config.seed});
            rows.push_back(
                ResultRow{w, "truncation_error", est.truncation_error, 0, 0.0, config.seed});
        }
    }
    else if (config.experiment == "dmt")
    {
        int rank_rx = config.rank_rx > 0
                          ? config.rank_rx
                          : derived_rank(config.scenario.geom_rx, config.scenario.kernel,
                                         config.xi);
        int rank_tx = config.rank_tx > 0
                          ? config.rank_tx
                          : derived_rank(config.scenario.geom_tx, config.scenario.kernel,
                                         config.xi);
        int n_min = std::min(config.scenario.n_tx, config.scenario.n_rx);

        append_curve(rows, dmt_mimo_fas(rank_rx, rank_tx, n_min), config.sweep, "d_mimo_fas",
                     config.seed);
        int grid = antenna_selection_grid_count(config.scenario.geom_rx.w1,
                                                config.scenario.geom_rx.w2);
        if (n_min <= grid)
            append_curve(rows,
                         dmt_antenna_selection(config.scenario.geom_rx.w1,
                                               config.scenario.geom_rx.w2, n_min),
                         config.sweep, "d_antenna_selection", config.seed);
        append_curve(rows, dmt_traditional(n_min, n_min), config.sweep, "d_traditional",
                     config.seed);
    }
    else if (config.experiment == "covariance-check")
    {
        ScenarioEngine engine(config.scenario);
        Eigen::MatrixXcd cov =
            empirical_vec_covariance(engine.model(), config.trials, config.seed);
        Eigen::MatrixXd j_rx =
            build_correlation_matrix(config.scenario.geom_rx,
                                     *kernel_by_name(config.scenario.kernel));
        Eigen::MatrixXd j_tx =
            build_correlation_matrix(config.scenario.geom_tx,
                                     *kernel_by_name(config.scenario.kernel));
        double d2 = config.scenario.delta * config.scenario.delta;
        Eigen::MatrixXd analytic = d2 * kron(j_tx.transpose(), j_rx);
        double err = (cov - analytic.cast<std::complex<double>>()).norm() / analytic.norm();
        rows.push_back(ResultRow{0.0, "cov_rel_error", err, config.trials, 0.0, config.seed});
    }
    else if (config.experiment == "rate-vs-ns")
    {
        for (double v : config.sweep)
        {
            LinkScenario sc = config.scenario;
            sc.n_tx = int(std::lround(v));
            sc.n_rx = int(std::lround(v));
            auto rates = collect_rates(sc, config.trials, config.seed, threads);
            rows.push_back(ResultRow{v, "mean_rate", mean_of(rates), config.trials,
                                     mean_ci95(rates), config.seed});
        }
    }
    else if (config.experiment == "rate-vs-Ns")
    {
        for (double v : config.sweep)
        {
            LinkScenario sc = config.scenario;
            sc.geom_tx.n2 = int(std::lround(v));
            sc.geom_rx.n2 = int(std::lround(v));
            validate_scenario(sc);
            auto rates = collect_rates(sc, config.trials, config.seed, threads);
            rows.push_back(ResultRow{v, "mean_rate", mean_of(rates), config.trials,
                                     mean_ci95(rates), config.seed});
        }
    }
    else if (config.experiment == "outage-vs-snr")
    {
        for (double snr_db : config.sweep)
        {
            LinkScenario sc = config.scenario;
            sc.snr = db_to_linear(snr_db);
            OutageEstimate est =
                outage_fixed_rate(sc, config.q, config.trials, config.seed, threads);
            rows.push_back(ResultRow{snr_db, "outage", est.probability, est.trials,
                                     est.half_width95, config.seed});
        }
    }
    else if (config.experiment == "outage-vs-q")
    {
        for (double q : config.sweep)
        {
            OutageEstimate est =
                outage_fixed_rate(config.scenario, q, config.trials, config.seed, threads);
            rows.push_back(ResultRow{q, "outage", est.probability, est.trials,
                                     est.half_width95, config.seed});
        }
    }
    else if (config.experiment == "q-outage")
    {
        for (double q : config.sweep)
        {
            double c =
                q_outage_capacity(config.scenario, q, config.trials, config.seed, threads);
            rows.push_back(
                ResultRow{q, "q_outage_capacity", c, config.trials, 0.0, config.seed});
        }
    }
    return rows;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows)
{
    std::string out = "sweep,metric,value,trials,ci95,seed\n";
    char buf[160];
    for (const ResultRow& r : rows)
    {
        std::snprintf(buf, sizeof(buf), "%.17g,%s,%.17g,%ld,%.17g,%llu\n", r.sweep_value,
                      r.metric.c_str(), r.value, r.trials, r.ci95,
                      (unsigned long long)r.seed);
        out += buf;
    }
    return out;
}

namespace {

std::filesystem::path resolve_output(const std::string& configured)
{
    std::filesystem::path p = configured.empty() ? "campaign.csv" : configured;
    if (p.is_relative())
    {
        const char* base = std::getenv("FAS_OUT_DIR");
        if (base && *base)
            p = std::filesystem::path(base) / p;
    }
    return p;
}

} // namespace

CampaignResult run_campaign(const CampaignConfig& config)
{
    CampaignResult result;
    result.rows = run_campaign_rows(config);

    std::filesystem::path csv_path = resolve_output(config.output);
    if (csv_path.has_parent_path())
        std::filesystem::create_directories(csv_path.parent_path());

    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv)
        throw std::runtime_error("cannot write output file '" + csv_path.string() + "'");
    csv << rows_to_csv(result.rows);
    csv.close();

    std::filesystem::path summary_path = csv_path;
    summary_path.replace_extension(".summary.json");
    json summary{
        {"config", json::parse(config_to_json_text(config))},
        {"rows", result.rows.size()},
        {"csv", csv_path.string()},
    };
    std::ofstream js(summary_path, std::ios::binary);
    js << summary.dump(2) << "\n";

    result.csv_path = csv_path.string();
    result.summary_path = summary_path.string();
    return result;
}

} // namespace fas
