/*
   Copyright 2026 The skrw Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef SKRW_SAMPLING_HPP
#define SKRW_SAMPLING_HPP

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "sklyanin.hpp"

namespace skrw {

/// Seeded rational sampler. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; bounded integers are drawn by
/// rejection from the raw 64-bit output so the sample stream does not
/// depend on the standard library's distribution implementation.
class RationalSampler {
public:
    static constexpr long kMaxNumerator = 20;
    static constexpr long kMaxDenominator = 10;

    explicit RationalSampler(std::uint64_t seed) : eng_(seed) {}

    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
        std::uint64_t x;
        do x = eng_();
        while (x >= limit);
        return lo + static_cast<long>(x % span);
    }

    /// num / den with |num| <= 20, 1 <= den <= 10.
    Rat rational() {
        const long num = uniform(-kMaxNumerator, kMaxNumerator);
        const long den = uniform(1, kMaxDenominator);
        Rat r(num, den);
        r.canonicalize();
        return r;
    }
    Rat nonzero_rational() {
        Rat r;
        do r = rational();
        while (is_zero(r));
        return r;
    }

    /// alpha, gamma, zeta nonzero (the closed form's denominators).
    SklyaninParams params() {
        SklyaninParams p;
        p.alpha = nonzero_rational();
        p.beta = rational();
        p.gamma = nonzero_rational();
        p.delta = rational();
        p.epsilon = rational();
        p.zeta = nonzero_rational();
        return p;
    }
    /// beta = delta = epsilon = 0.
    SklyaninParams locus_params() {
        SklyaninParams p;
        p.alpha = nonzero_rational();
        p.gamma = nonzero_rational();
        p.zeta = nonzero_rational();
        return p;
    }

private:
    std::mt19937_64 eng_;
};

inline std::vector<SklyaninParams> sample_params(std::uint64_t seed, std::size_t count, bool locus) {
    RationalSampler s(seed);
    std::vector<SklyaninParams> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(locus ? s.locus_params() : s.params());
    return out;
}

}  // namespace skrw

#endif  // SKRW_SAMPLING_HPP
