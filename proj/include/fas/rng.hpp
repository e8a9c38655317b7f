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

#ifndef FAS_RNG_HPP
#define FAS_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace fas {

/// Key of one Monte Carlo trial. The per-trial stream is a pure function of
/// (campaign, trial), so trials can run in any order on any number of
/// threads and still reproduce bit-identically.
struct TrialSeed
{
    std::uint64_t campaign = 0;
    std::uint64_t trial = 0;
};

/// Counter-derived splitmix64 stream; Box-Muller gaussians come from the
/// same stream.
class TrialRng
{
  public:
    explicit TrialRng(TrialSeed seed) { state_ = mix(seed.campaign + kGolden * (seed.trial + 1)); }

    std::uint64_t next_u64()
    {
        state_ += kGolden;
        return mix(state_);
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; one fresh pair of uniforms per call
    /// (no caching, so the stream layout stays position-independent).
    double next_gaussian()
    {
        double u1 = 1.0 - next_double(); // (0, 1]
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Circularly symmetric complex gaussian: x + jy with x,y ~ N(0, 1/2),
    /// unit total variance.
    std::complex<double> next_complex_gaussian()
    {
        double u1 = 1.0 - next_double();
        double u2 = next_double();
        double r = std::sqrt(-std::log(u1)); // |z|^2 ~ Exp(1)
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

    /// Uniform integer in [0, bound) by rejection; bound >= 1.
    std::uint64_t next_below(std::uint64_t bound)
    {
        std::uint64_t threshold = (~bound + 1) % bound; // 2^64 mod bound
        for (;;)
        {
            std::uint64_t r = next_u64();
            if (r >= threshold)
                return r % bound;
        }
    }

  private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z)
    {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
};

} // namespace fas

#endif
