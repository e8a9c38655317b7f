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

#ifndef FAS_SPECIAL_FUNCTIONS_HPP
#define FAS_SPECIAL_FUNCTIONS_HPP

namespace fas {

/// Spherical Bessel function of the first kind, order 0: sin(x)/x with the
/// removable singularity filled in (j0(0) = 1). Even in x.
double spherical_j0(double x);

/// Bessel function of the first kind, order 0. Power series for small
/// arguments, Hankel asymptotic expansion otherwise; absolute error below
/// 1e-8 for |x| <= 100.
double bessel_j0(double x);

/// Sine integral Si(x) = int_0^x sin(t)/t dt.
double sine_integral(double x);

/// Cosine integral Ci(x) = gamma + ln(x) + int_0^x (cos(t)-1)/t dt, x > 0.
double cosine_integral(double x);

} // namespace fas

#endif
