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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/stl.h>
#include <pybind11/pybind11.h>

#include "fas/beamforming.hpp"
#include "fas/campaign.hpp"
#include "fas/channel.hpp"
#include "fas/coupling.hpp"
#include "fas/dmt.hpp"
#include "fas/metrics.hpp"
#include "fas/port_selection.hpp"
#include "fas/special_functions.hpp"

namespace py = pybind11;

namespace {

fas::LinkScenario scenario_from_kwargs(const fas::SurfaceGeometry& geom_tx,
                                       const fas::SurfaceGeometry& geom_rx, int n_tx,
                                       int n_rx, double snr_db, const std::string& strategy,
                                       const std::string& kernel, double delta,
                                       const std::string& coupling, double greedy_separation)
{
    fas::LinkScenario sc;
    sc.geom_tx = geom_tx;
    sc.geom_rx = geom_rx;
    sc.n_tx = n_tx;
    sc.n_rx = n_rx;
    sc.snr = std::pow(10.0, snr_db / 10.0);
    sc.strategy = fas::strategy_from_name(strategy);
    sc.kernel = kernel;
    sc.delta = delta;
    sc.coupling = fas::coupling_from_name(coupling);
    sc.greedy_separation = greedy_separation;
    return sc;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "MIMO fluid-antenna-system link simulation";

    py::class_<fas::SurfaceGeometry>(m, "SurfaceGeometry")
        .def(py::init<int, int, double, double>(), py::arg("n1"), py::arg("n2"),
             py::arg("w1"), py::arg("w2"))
        .def_readwrite("n1", &fas::SurfaceGeometry::n1)
        .def_readwrite("n2", &fas::SurfaceGeometry::n2)
        .def_readwrite("w1", &fas::SurfaceGeometry::w1)
        .def_readwrite("w2", &fas::SurfaceGeometry::w2)
        .def_property_readonly("total_ports", &fas::SurfaceGeometry::total_ports)
        .def("__repr__", [](const fas::SurfaceGeometry& g) {
            return "SurfaceGeometry(" + std::to_string(g.n1) + ", " + std::to_string(g.n2) +
                   ", " + std::to_string(g.w1) + ", " + std::to_string(g.w2) + ")";
        });

    m.def("spherical_j0", &fas::spherical_j0, py::arg("x"));
    m.def("bessel_j0", &fas::bessel_j0, py::arg("x"));
    m.def(
        "port_position",
        [](const fas::SurfaceGeometry& g, int linear) { return fas::port_position(g, linear); },
        py::arg("geom"), py::arg("linear"), "Port position (1-based linear index).");
    m.def(
        "map_index",
        [](const fas::SurfaceGeometry& g, int k1, int k2) {
            return fas::map_index(g, fas::PortCoords{k1, k2});
        },
        py::arg("geom"), py::arg("k1"), py::arg("k2"));
    m.def(
        "unmap_index",
        [](const fas::SurfaceGeometry& g, int linear) {
            auto c = fas::unmap_index(g, linear);
            return py::make_tuple(c.k1, c.k2);
        },
        py::arg("geom"), py::arg("linear"));

    m.def(
        "build_correlation_matrix",
        [](const fas::SurfaceGeometry& g, const std::string& kernel) {
            return fas::build_correlation_matrix(g, *fas::kernel_by_name(kernel));
        },
        py::arg("geom"), py::arg("kernel") = "j0-3d");
    m.def(
        "eigendecompose",
        [](const Eigen::MatrixXd& j) {
            auto e = fas::eigendecompose(j);
            return py::make_tuple(e.vectors, e.values);
        },
        py::arg("matrix"), "Returns (vectors, descending values).");
    m.def(
        "estimate_rank",
        [](const Eigen::MatrixXd& j, double xi) {
            auto est = fas::estimate_rank(fas::eigendecompose(j), xi);
            return py::make_tuple(est.rank, est.truncation_error);
        },
        py::arg("matrix"), py::arg("xi") = fas::kDefaultRankThreshold,
        "Returns (rank, truncation_error).");
    m.def(
        "reduce_correlation",
        [](const Eigen::MatrixXd& j, double tol) {
            auto red = fas::reduce_correlation(j, tol);
            py::list certs;
            for (const auto& c : red.certificates)
                certs.append(py::make_tuple(c.level, c.coeffs));
            return py::make_tuple(red.reduced, certs, red.removed);
        },
        py::arg("matrix"), py::arg("tol") = fas::kDefaultReduceTol,
        "Returns (reduced, [(level, coeffs)...], removed 1-based indices).");
    m.def(
        "reconstruct_correlation",
        [](const Eigen::MatrixXd& reduced, const py::list& certs,
           const std::vector<int>& removed) {
            std::vector<fas::ReductionCertificate> cc;
            for (const auto& item : certs)
            {
                auto t = item.cast<py::tuple>();
                cc.push_back(fas::ReductionCertificate{t[0].cast<int>(),
                                                       t[1].cast<Eigen::VectorXd>()});
            }
            return fas::reconstruct_correlation(reduced, cc, removed);
        },
        py::arg("reduced"), py::arg("certificates"), py::arg("removed"));

    m.def(
        "draw_gaussian_matrix",
        [](std::uint64_t campaign, std::uint64_t trial, int rows, int cols) {
            return fas::draw_gaussian_matrix(fas::TrialSeed{campaign, trial}, rows, cols);
        },
        py::arg("campaign_seed"), py::arg("trial"), py::arg("rows"), py::arg("cols"));
    m.def(
        "synthesize_channel",
        [](const fas::SurfaceGeometry& geom_rx, const fas::SurfaceGeometry& geom_tx,
           std::uint64_t campaign, std::uint64_t trial, const std::string& kernel,
           double delta) {
            auto model =
                fas::make_channel_model(geom_rx, geom_tx, *fas::kernel_by_name(kernel), delta);
            return fas::realize_channel(model, fas::TrialSeed{campaign, trial}).h;
        },
        py::arg("geom_rx"), py::arg("geom_tx"), py::arg("campaign_seed"), py::arg("trial"),
        py::arg("kernel") = "j0-3d", py::arg("delta") = 1.0);

    m.def(
        "qr_select",
        [](const Eigen::MatrixXcd& h, int n_tx, int n_rx, const std::string& criterion) {
            auto sel = fas::qr_mimo_fas_select(h, n_tx, n_rx,
                                               criterion == "additive-sum"
                                                   ? fas::SwapCriterion::AdditiveSum
                                                   : fas::SwapCriterion::DetRatio);
            return py::make_tuple(sel.rx_ports, sel.tx_ports);
        },
        py::arg("h"), py::arg("n_tx"), py::arg("n_rx"), py::arg("criterion") = "det-ratio",
        "Returns (rx_ports, tx_ports), 1-based.");
    m.def(
        "exhaustive_select",
        [](const Eigen::MatrixXcd& h, int n_tx, int n_rx, double snr_db,
           std::uint64_t combo_limit) {
            auto sel =
                fas::exhaustive_select(h, n_tx, n_rx, std::pow(10.0, snr_db / 10.0),
                                       combo_limit);
            return py::make_tuple(sel.rx_ports, sel.tx_ports);
        },
        py::arg("h"), py::arg("n_tx"), py::arg("n_rx"), py::arg("snr_db"),
        py::arg("combo_limit") = 1000000);
    m.def(
        "submatrix",
        [](const Eigen::MatrixXcd& h, const std::vector<int>& rx_ports,
           const std::vector<int>& tx_ports) {
            return fas::submatrix(h, fas::SelectionResult{tx_ports, rx_ports});
        },
        py::arg("h"), py::arg("rx_ports"), py::arg("tx_ports"));

    m.def(
        "rate",
        [](const Eigen::MatrixXcd& h, double snr_db) {
            return fas::rate(h, std::pow(10.0, snr_db / 10.0));
        },
        py::arg("h"), py::arg("snr_db"), "Waterfilled rate in bits/s/Hz.");
    m.def(
        "rate_equal_power",
        [](const Eigen::MatrixXcd& h, double snr_db, int n) {
            return fas::rate_equal_power(h, std::pow(10.0, snr_db / 10.0), n);
        },
        py::arg("h"), py::arg("snr_db"), py::arg("n"));
    m.def(
        "waterfill",
        [](const Eigen::VectorXd& gains, double snr) {
            auto p = fas::waterfill(gains, snr);
            return py::make_tuple(p.powers, p.water_level);
        },
        py::arg("gains"), py::arg("snr"), "Returns (powers, water_level); snr is linear.");

    m.def(
        "dmt_mimo_fas",
        [](int rank_rx, int rank_tx, int n_min) {
            return fas::dmt_mimo_fas(rank_rx, rank_tx, n_min).breakpoints;
        },
        py::arg("rank_rx"), py::arg("rank_tx"), py::arg("n_min"));
    m.def(
        "dmt_antenna_selection",
        [](double w1, double w2, int n_min) {
            return fas::dmt_antenna_selection(w1, w2, n_min).breakpoints;
        },
        py::arg("w1"), py::arg("w2"), py::arg("n_min"));
    m.def(
        "dmt_traditional",
        [](int n_rx, int n_tx) { return fas::dmt_traditional(n_rx, n_tx).breakpoints; },
        py::arg("n_rx"), py::arg("n_tx"));

    m.def("dipole_mutual_impedance",
          [](double d) { return fas::dipole_mutual_impedance(d); }, py::arg("d"));
    m.def(
        "pixel_s_matrix",
        [](const fas::SurfaceGeometry& g) { return fas::pixel_s_matrix(g); }, py::arg("geom"));
    m.def("s_to_z", &fas::s_to_z, py::arg("s"), py::arg("z0") = 50.0);
    m.def("z_to_s", &fas::z_to_s, py::arg("z"), py::arg("z0") = 50.0);

    m.def("collect_rates",
          [](const fas::SurfaceGeometry& geom_tx, const fas::SurfaceGeometry& geom_rx,
             int n_tx, int n_rx, double snr_db, const std::string& strategy, long trials,
             std::uint64_t seed, int threads, const std::string& kernel, double delta,
             const std::string& coupling, double greedy_separation) {
              auto sc = scenario_from_kwargs(geom_tx, geom_rx, n_tx, n_rx, snr_db, strategy,
                                             kernel, delta, coupling, greedy_separation);
              return fas::collect_rates(sc, trials, seed, threads);
          },
          py::arg("geom_tx"), py::arg("geom_rx"), py::arg("n_tx"), py::arg("n_rx"),
          py::arg("snr_db"), py::arg("strategy") = "qr", py::arg("trials") = 1000,
          py::arg("seed") = 1, py::arg("threads") = 1, py::arg("kernel") = "j0-3d",
          py::arg("delta") = 1.0, py::arg("coupling") = "none",
          py::arg("greedy_separation") = 0.5);
    m.def("outage_fixed_rate",
          [](const fas::SurfaceGeometry& geom_tx, const fas::SurfaceGeometry& geom_rx,
             int n_tx, int n_rx, double snr_db, double q, long trials, std::uint64_t seed,
             int threads, const std::string& strategy, const std::string& kernel,
             double delta, const std::string& coupling, double greedy_separation) {
              auto sc = scenario_from_kwargs(geom_tx, geom_rx, n_tx, n_rx, snr_db, strategy,
                                             kernel, delta, coupling, greedy_separation);
              auto est = fas::outage_fixed_rate(sc, q, trials, seed, threads);
              return py::make_tuple(est.probability, est.trials, est.half_width95);
          },
          py::arg("geom_tx"), py::arg("geom_rx"), py::arg("n_tx"), py::arg("n_rx"),
          py::arg("snr_db"), py::arg("q"), py::arg("trials") = 1000, py::arg("seed") = 1,
          py::arg("threads") = 1, py::arg("strategy") = "qr", py::arg("kernel") = "j0-3d",
          py::arg("delta") = 1.0, py::arg("coupling") = "none",
          py::arg("greedy_separation") = 0.5,
          "Returns (probability, trials, ci95_half_width).");

    m.def(
        "run_campaign_json",
        [](const std::string& json_text) {
            auto rows = fas::run_campaign_rows(fas::config_from_json_text(json_text));
            py::list out;
            for (const auto& r : rows)
                out.append(py::make_tuple(r.sweep_value, r.metric, r.value, r.trials, r.ci95,
                                          r.seed));
            return out;
        },
        py::arg("json_text"),
        "Runs a campaign config (JSON text), returns rows as tuples.");

    m.attr("__version__") = "0.1.0";
}
