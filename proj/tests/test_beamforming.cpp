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

#include <cmath>

#include <doctest.h>

#include "fas/beamforming.hpp"
#include "fas/channel.hpp"
#include "fas/port_selection.hpp"

namespace {

Eigen::MatrixXcd random_complex(int rows, int cols, std::uint64_t seed)
{
    return fas::draw_gaussian_matrix(fas::TrialSeed{seed, 0}, rows, cols);
}

} // namespace

TEST_CASE("svd beamforming diagonalizes the channel")
{
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(3, 3);
    auto s1 = fas::svd_beamform(eye);
    CHECK(s1.singular_values.isApproxToConstant(1.0));

    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    auto s2 = fas::svd_beamform(d);
    CHECK(s2.singular_values(0) == doctest::Approx(3.0));
    CHECK(s2.singular_values(1) == doctest::Approx(1.0));

    Eigen::MatrixXcd h = random_complex(4, 4, 11);
    auto s3 = fas::svd_beamform(h);
    Eigen::MatrixXcd eff = s3.rx_combiner * h * s3.tx_precoder;
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
        diag(i, i) = s3.singular_values(i);
    CHECK((eff - diag).norm() <= 1e-9);

    // unit spectral norms, orthonormal precoder columns
    CHECK((s3.tx_precoder.adjoint() * s3.tx_precoder - Eigen::MatrixXcd::Identity(4, 4)).norm() <
          1e-10);
    CHECK(fas::svd_beamform(s3.rx_combiner).singular_values(0) == doctest::Approx(1.0));
}

TEST_CASE("waterfilling solves the KKT system")
{
    // single stream takes the whole budget
    Eigen::VectorXd one(1);
    one << 1.0;
    auto p1 = fas::waterfill(one, 10.0);
    CHECK(p1.powers(0) == doctest::Approx(10.0).epsilon(1e-8));
    CHECK(p1.water_level == doctest::Approx(11.0).epsilon(1e-8));

    // symmetric streams split evenly
    Eigen::VectorXd two(2);
    two << 1.0, 1.0;
    auto p2 = fas::waterfill(two, 4.0);
    CHECK(p2.powers(0) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(p2.powers(1) == doctest::Approx(2.0).epsilon(1e-8));

    // weak stream shuts off: the two-stream water level would go negative
    Eigen::VectorXd skew(2);
    skew << 1.0, 0.1;
    auto p3 = fas::waterfill(skew, 1.0);
    CHECK(p3.powers(0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(p3.powers(1) == 0.0);

    CHECK_THROWS_AS((void)fas::waterfill(two, 4.0, 1e-12, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)fas::waterfill(Eigen::VectorXd::Zero(2), 1.0),
                    std::invalid_argument);
}

TEST_CASE("waterfilling KKT residuals over random instances")
{
    fas::TrialRng rng(fas::TrialSeed{88, 0});
    for (int trial = 0; trial < 1000; ++trial)
    {
        int n = 1 + int(rng.next_below(6));
        Eigen::VectorXd s2(n);
        for (int i = 0; i < n; ++i)
            s2(i) = std::pow(10.0, -2.0 + 4.0 * rng.next_double());
        std::sort(s2.data(), s2.data() + n, std::greater<double>());
        double snr = std::pow(10.0, -1.0 + 4.0 * rng.next_double());

        auto p = fas::waterfill(s2, snr);
        CHECK(std::abs(p.powers.sum() - snr) <= 1e-8 * std::max(snr, 1.0));
        for (int i = 0; i < n; ++i)
        {
            if (p.powers(i) > 0)
                CHECK(p.water_level ==
                      doctest::Approx(p.powers(i) + 1.0 / s2(i)).epsilon(1e-8));
            else
                CHECK(p.water_level <= 1.0 / s2(i) + 1e-8);
        }
    }
}

TEST_CASE("rate values")
{
    CHECK(fas::rate(Eigen::MatrixXcd::Zero(3, 3), 10.0) == 0.0);

    Eigen::MatrixXcd scalar(1, 1);
    scalar(0, 0) = 1.0;
    CHECK(fas::rate(scalar, 3.0) == doctest::Approx(2.0).epsilon(1e-9));

    // waterfilling beats equal power
    fas::TrialRng rng(fas::TrialSeed{13, 0});
    for (int i = 0; i < 20; ++i)
    {
        Eigen::MatrixXcd h = random_complex(3, 3, 100 + i);
        CHECK(fas::rate(h, 100.0) >= fas::rate_equal_power(h, 100.0, 3) - 1e-12);
    }

    // rate is nondecreasing in snr
    Eigen::MatrixXcd h = random_complex(3, 3, 500);
    double prev = 0.0;
    for (double snr : {0.1, 1.0, 10.0, 100.0, 1000.0})
    {
        double r = fas::rate(h, snr);
        CHECK(r >= prev);
        prev = r;
    }
}

TEST_CASE("equal-power rate")
{
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(2, 2);
    CHECK(fas::rate_equal_power(eye, 2.0, 2) == doctest::Approx(2.0));
    CHECK(fas::rate_equal_power(Eigen::MatrixXcd::Zero(2, 2), 5.0, 2) == 0.0);

    // constant gap to waterfilling at high snr (successive differences shrink)
    Eigen::MatrixXcd h = random_complex(3, 3, 321);
    double gap4 = fas::rate(h, 1e4) - fas::rate_equal_power(h, 1e4, 3);
    double gap5 = fas::rate(h, 1e5) - fas::rate_equal_power(h, 1e5, 3);
    double gap6 = fas::rate(h, 1e6) - fas::rate_equal_power(h, 1e6, 3);
    CHECK(std::abs(gap5 - gap4) >= std::abs(gap6 - gap5) - 1e-12);
    CHECK(std::abs(gap6 - gap5) < 1e-3);
}

TEST_CASE("selected subchannel rate is bounded by the full channel")
{
    // per realization: rate of an n x n selection <= waterfilled rate over
    // the n_min strongest streams of the full channel
    auto top_stream_rate = [](const Eigen::MatrixXcd& h, int streams, double snr) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
        Eigen::VectorXd s2 = svd.singularValues().head(streams).array().square();
        auto p = fas::waterfill(s2, snr);
        double r = 0.0;
        for (int i = 0; i < s2.size(); ++i)
            r += std::log2(1.0 + p.powers(i) * s2(i));
        return r;
    };
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        Eigen::MatrixXcd h = random_complex(5, 6, 9000 + seed);
        fas::TrialRng rng(fas::TrialSeed{9100, seed});
        int n = 1 + int(rng.next_below(4));
        auto sel = fas::random_select(fas::TrialSeed{9200, seed}, 6, 5, n, n);
        Eigen::MatrixXcd sub(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                sub(a, b) = h(sel.rx_ports[a] - 1, sel.tx_ports[b] - 1);
        double snr = 50.0;
        CHECK(fas::rate(sub, snr) <= top_stream_rate(h, n, snr) + 1e-9);
    }

    // enlarging every singular value cannot lower the rate
    Eigen::MatrixXcd h = random_complex(4, 4, 12345);
    CHECK(fas::rate(1.2 * h, 100.0) >= fas::rate(h, 100.0));
}

TEST_CASE("general-covariance rate agrees with the waterfilled rate")
{
    CHECK(fas::rate_general(Eigen::MatrixXcd::Identity(2, 2),
                            Eigen::MatrixXcd::Zero(2, 2)) == 0.0);

    Eigen::MatrixXcd h1(1, 1), k1(1, 1);
    h1(0, 0) = 1.0;
    k1(0, 0) = 3.0;
    CHECK(fas::rate_general(h1, k1) == doctest::Approx(2.0));

    Eigen::MatrixXcd h = random_complex(3, 3, 777);
    double snr = 25.0;
    auto bf = fas::svd_beamform(h);
    auto p = fas::waterfill(bf.singular_values.array().square(), snr);
    Eigen::MatrixXcd k = bf.tx_precoder * p.powers.asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
                         bf.tx_precoder.adjoint();
    CHECK(fas::rate_general(h, k) == doctest::Approx(fas::rate(h, snr)).epsilon(1e-9));

    Eigen::MatrixXcd not_psd = -Eigen::MatrixXcd::Identity(3, 3);
    CHECK_THROWS_AS((void)fas::rate_general(h, not_psd), std::invalid_argument);
}
