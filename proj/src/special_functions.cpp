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

#include "fas/special_functions.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace fas {

double spherical_j0(double x)
{
    x = std::abs(x);
    if (x < 1e-4)
    {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

double bessel_j0(double x)
{
    x = std::abs(x);
    if (x <= 12.0)
    {
        // ascending series: sum_k (-1)^k (x^2/4)^k / (k!)^2
        double q = 0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 60; ++k)
        {
            term *= -q / (double(k) * double(k));
            sum += term;
            if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-30))
                break;
        }
        return sum;
    }

    // Hankel asymptotic expansion with optimal truncation:
    //   J0(x) = sqrt(2/(pi x)) [ P(x) cos(x - pi/4) - Q(x) sin(x - pi/4) ]
    //   P(x) = 1 - 9/(128 x^2) + 11025/(98304 x^4) - ...
    //   Q(x) = -1/(8x) + 75/(1024 x^3) - ...
    // with |a_k| = prod_{j=1..k} (2j-1)^2 / (k! 8^k) and alternating signs
    // within each of the even (P) and odd (Q) subsequences.
    double P = 0.0, Q = 0.0;
    double abs_a = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 40; ++k)
    {
        double term = abs_a / std::pow(x, k);
        if (term > prev)
            break; // asymptotic series started diverging
        if (k % 2 == 0)
            P += ((k / 2) % 2 == 0 ? term : -term);
        else
            Q += (((k - 1) / 2) % 2 == 0 ? -term : term);
        prev = term;
        double odd = 2.0 * k + 1.0;
        abs_a *= (odd * odd) / (8.0 * (k + 1.0));
        if (prev < 1e-17)
            break;
    }
    double chi = x - 0.25 * M_PI;
    return std::sqrt(2.0 / (M_PI * x)) * (P * std::cos(chi) - Q * std::sin(chi));
}

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209;

// Si/Ci by power series for x <= 2 and, for larger x, the modified Lentz
// continued fraction for Ci(x) + i(Si(x) - pi/2) = -exp(ix) * CF(x).
void sici(double x, double& si, double& ci)
{
    if (x <= 0.0)
        throw std::domain_error("sici: argument must be positive");

    if (x <= 2.0)
    {
        double x2 = x * x;

        // Si: t_k = (-1)^k x^(2k+1)/(2k+1)!, Si = sum t_k / (2k+1)
        double t = x, s = x;
        for (int k = 1; k < 40; ++k)
        {
            t *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
            s += t / (2.0 * k + 1.0);
            if (std::abs(t) < 1e-20)
                break;
        }

        // Cin: u_k = (-1)^(k+1) x^(2k)/(2k)!, Cin = sum u_k / (2k)
        double u = 0.5 * x2, cin = 0.5 * x2 / 2.0;
        for (int k = 2; k < 40; ++k)
        {
            u *= -x2 / ((2.0 * k - 1.0) * (2.0 * k));
            cin += u / (2.0 * k);
            if (std::abs(u) < 1e-20)
                break;
        }

        si = s;
        ci = kEulerGamma + std::log(x) - cin;
        return;
    }

    std::complex<double> b(1.0, x);
    std::complex<double> c(1.0 / 1e-30, 0.0);
    std::complex<double> d = std::complex<double>(1.0, 0.0) / b;
    std::complex<double> h = d;
    for (int i = 1; i < 200; ++i)
    {
        double a = -double(i) * double(i);
        b += 2.0;
        d = std::complex<double>(1.0, 0.0) / (a * d + b);
        c = b + a / c;
        std::complex<double> del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16)
            break;
    }
    h *= std::complex<double>(std::cos(x), -std::sin(x));
    ci = -h.real();
    si = 0.5 * M_PI + h.imag();
}

} // namespace

double sine_integral(double x)
{
    if (x == 0.0)
        return 0.0;
    double s, c;
    sici(std::abs(x), s, c);
    return x > 0 ? s : -s;
}

double cosine_integral(double x)
{
    double s, c;
    sici(x, s, c);
    return c;
}

} // namespace fas
