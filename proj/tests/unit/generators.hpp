/*
   Copyright 2026 rasense developers

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

#pragma once

// Small property-testing helpers: seeded generators and a checker that
// reports the first failing case.

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>

#include <doctest.h>

namespace proptest {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }
    /// Log-uniform on [lo, hi], lo > 0.
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    unsigned integer(unsigned lo, unsigned hi) {
        return std::uniform_int_distribution<unsigned>(lo, hi)(eng_);
    }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

inline constexpr int kCases = 500;

/// Runs `body(gen, description)` for `cases` draws; `body` returns true on
/// success and fills `description` with the drawn inputs.
template <typename Body>
void for_all(std::uint64_t seed, int cases, Body&& body) {
    Gen gen(seed);
    for (int i = 0; i < cases; ++i) {
        std::ostringstream what;
        if (!body(gen, what)) {
            FAIL("property failed at case " << i << ": " << what.str());
            return;
        }
    }
}

inline bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

} // namespace proptest
