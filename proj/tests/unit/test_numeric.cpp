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

#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "rasense/error.hpp"
#include "rasense/numeric.hpp"

using namespace rasense;
using doctest::Approx;

TEST_CASE("integrate polynomials and smooth functions") {
    CHECK(numeric::integrate([](double x) { return x * x; }, 0.0, 1.0).value ==
          Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(numeric::integrate([](double x) { return std::exp(-x); }, 0.0, 50.0).value ==
          Approx(-std::expm1(-50.0)).epsilon(1e-12));
    const auto r = numeric::integrate([](double x) { return std::sin(x) * std::sin(x); }, 0.0,
                                      10.0 * std::numbers::pi);
    CHECK(r.value == Approx(5.0 * std::numbers::pi).epsilon(1e-12));
    CHECK(r.error <= 1e-10 * r.value);
}

TEST_CASE("integrate resolves a sharp feature near zero given breakpoints") {
    const double scale = 1e-9;
    auto f = [&](double t) { return std::exp(-t / scale) / scale; };
    const std::vector<double> bp = numeric::scaled_snr_breakpoints(1.0);
    CHECK(bp.front() == 0.0);
    CHECK(bp.back() == 1.0);
    CHECK(numeric::integrate(f, bp).value == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("integrate reports failures") {
    const std::vector<double> one = {0.0};
    CHECK_THROWS_AS(numeric::integrate([](double) { return 1.0; }, one), DomainError);
    const std::vector<double> bad = {0.0, 2.0, 1.0};
    CHECK_THROWS_AS(numeric::integrate([](double) { return 1.0; }, bad), DomainError);
    CHECK_THROWS_AS(numeric::integrate([](double x) { return std::sin(1.0 / x); }, 1e-9, 1.0,
                                       {1e-14, 1e-14}, 20),
                    NumericalError);
    CHECK_THROWS_AS(numeric::integrate([](double) { return std::nan(""); }, 0.0, 1.0),
                    NumericalError);
}

TEST_CASE("find_root") {
    CHECK(numeric::find_root([](double x) { return x * x * x - 2.0; }, 0.0, 2.0) ==
          Approx(std::cbrt(2.0)).epsilon(1e-15));
    CHECK(numeric::find_root([](double x) { return std::exp(x) - 1e6; }, 0.0, 100.0) ==
          Approx(std::log(1e6)).epsilon(1e-15));
    // Strongly skewed function where plain false position stalls.
    CHECK(numeric::find_root([](double x) { return std::pow(x, 25.0) - 0.5; }, 0.0, 1.5) ==
          Approx(std::pow(0.5, 1.0 / 25.0)).epsilon(1e-14));
    CHECK_THROWS_AS(numeric::find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                    DomainError);
}
