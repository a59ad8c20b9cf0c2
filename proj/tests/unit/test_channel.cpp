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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <doctest.h>

#include "rasense/channel.hpp"
#include "rasense/error.hpp"
#include "rasense/random.hpp"
#include "rasense/specfun.hpp"

using namespace rasense;
using namespace rasense::channel;
using doctest::Approx;

TEST_SUITE("random") {

TEST_CASE("Philox4x32-10 known-answer vectors") {
    using philox::Counter;
    CHECK(philox::philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
          Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox::philox4x32_10({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}) ==
          Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox::philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                {0xa4093822, 0x299f31d0}) ==
          Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and independent of evaluation order") {
    RandomStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    std::vector<std::uint64_t> xa, xb;
    for (int i = 0; i < 100; ++i) xa.push_back(a.next_u64());
    // Interleave unrelated streams before drawing b.
    for (int i = 0; i < 37; ++i) {
        (void)c.next_u64();
        (void)d.next_u64();
    }
    for (int i = 0; i < 100; ++i) xb.push_back(b.next_u64());
    CHECK(xa == xb);
    RandomStream c2(42, 8), d2(43, 7);
    int same = 0;
    for (int i = 0; i < 100; ++i) same += (c2.next_u64() == xa[i]) + (d2.next_u64() == xa[i]);
    CHECK(same == 0);
}

TEST_CASE("uniform draws lie in the open unit interval") {
    RandomStream rng(1, 0);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    CHECK(sum / n == Approx(0.5).epsilon(3.0 * std::sqrt(1.0 / 12.0 / n) / 0.5));
}

} // TEST_SUITE

TEST_SUITE("channel") {

TEST_CASE("AvgSnr conversions and validation") {
    CHECK(AvgSnr::from_db(10.0).linear() == Approx(10.0).epsilon(1e-15));
    CHECK(AvgSnr::from_db(-20.0).linear() == Approx(0.01).epsilon(1e-15));
    CHECK(AvgSnr(100.0).db() == Approx(20.0).epsilon(1e-15));
    CHECK_THROWS_AS(AvgSnr(0.0), DomainError);
    CHECK_THROWS_AS(AvgSnr(-1.0), DomainError);
    CHECK_THROWS_AS(AvgSnr(std::nan("")), DomainError);
    CHECK_THROWS_AS(AvgSnr(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("Rayleigh SNR mean and tail") {
    const int n = 1'000'000;
    const double mean = 4.0;
    RandomStream rng(2024, 1);
    double sum = 0.0;
    int above = 0;
    for (int i = 0; i < n; ++i) {
        const double g = sample_rayleigh_snr(AvgSnr(mean), rng).gamma;
        REQUIRE(g >= 0.0);
        sum += g;
        above += g > mean;
    }
    CHECK(std::abs(sum / n - mean) <= 3.0 * mean / std::sqrt(n));
    const double p = std::exp(-1.0);
    CHECK(std::abs(static_cast<double>(above) / n - p) <= 3.0 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("Rayleigh SNR passes a Kolmogorov-Smirnov test") {
    const int n = 100'000;
    RandomStream rng(99, 3);
    std::vector<double> x(n);
    for (double& v : x) v = sample_rayleigh_snr(AvgSnr(1.0), rng).gamma;
    std::sort(x.begin(), x.end());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = -std::expm1(-x[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    CHECK(d < 1.63 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("state realizations") {
    RandomStream r1(5, 5), r2(5, 5);
    const auto single = sample_states(AvgSnr(3.0), 1, r1);
    REQUIRE(single.size() == 1);
    CHECK(single.gammas[0].gamma == sample_rayleigh_snr(AvgSnr(3.0), r2).gamma);
    CHECK_THROWS_AS(sample_states(AvgSnr(1.0), 0, r1), DomainError);

    const int n = 100'000;
    RandomStream rng(6, 0);
    double s1 = 0, s2 = 0, s11 = 0, s22 = 0, s12 = 0;
    for (int i = 0; i < n; ++i) {
        const auto st = sample_states(AvgSnr(1.0), 2, rng);
        const double a = st.gammas[0].gamma, b = st.gammas[1].gamma;
        s1 += a; s2 += b; s11 += a * a; s22 += b * b; s12 += a * b;
    }
    const double cov = s12 / n - (s1 / n) * (s2 / n);
    const double corr = cov / std::sqrt((s11 / n - s1 * s1 / n / n) * (s22 / n - s2 * s2 / n / n));
    CHECK(std::abs(corr) <= 3.0 / std::sqrt(static_cast<double>(n)));

    std::vector<double> sums(10, 0.0);
    RandomStream rng10(7, 0);
    for (int i = 0; i < n; ++i) {
        const auto st = sample_states(AvgSnr(2.0), 10, rng10);
        for (int j = 0; j < 10; ++j) sums[j] += st.gammas[j].gamma;
    }
    for (double s : sums) CHECK(std::abs(s / n - 2.0) <= 3.0 * 2.0 / std::sqrt(n));
}

TEST_CASE("max of Q states has mean avg * H_Q") {
    const int n = 200'000;
    RandomStream rng(8, 0);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample_states(AvgSnr(1.0), 10, rng).max().gamma;
    CHECK(sum / n == Approx(specfun::harmonic(10)).epsilon(0.01));
}

TEST_CASE("max-state densities") {
    for (double g : {0.0, 0.3, 2.0, 11.0}) {
        CHECK(max_state_pdf_exact({g}, AvgSnr(2.0), 1) == Approx(0.5 * std::exp(-g / 2.0)));
        CHECK(max_state_pdf_dominant({g}, AvgSnr(2.0), 1) == Approx(0.5 * std::exp(-g / 2.0)));
    }
    CHECK(max_state_pdf_dominant({2.0}, AvgSnr(5.0), 3) ==
          Approx(3.0 / 125.0 * std::exp(-0.4) * 4.0).epsilon(1e-14));
    CHECK(max_state_pdf_exact({1.0}, AvgSnr(1e4), 4) / max_state_pdf_dominant({1.0}, AvgSnr(1e4), 4) ==
          Approx(1.0).epsilon(1e-3));
    CHECK_THROWS_AS(max_state_pdf_exact({-1.0}, AvgSnr(1.0), 2), DomainError);
    CHECK_THROWS_AS(max_state_pdf_exact({1.0}, AvgSnr(1.0), 0), DomainError);
}

TEST_CASE("exact max-state density is normalized for Q <= 64") {
    boost::math::quadrature::tanh_sinh<double> quad;
    for (unsigned q = 1; q <= 64; ++q) {
        for (double avg : {0.1, 3.0, 1e3}) {
            const double total = quad.integrate(
                [&](double g) { return max_state_pdf_exact({g}, AvgSnr(avg), q); }, 0.0,
                std::numeric_limits<double>::infinity());
            REQUIRE(total == Approx(1.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("max of four states matches the exact density (chi-square fit)") {
    const unsigned q = 4;
    const int n = 100'000, bins = 50;
    // Equiprobable bins from the max CDF (1 - e^{-g})^Q.
    std::vector<double> edges(bins - 1);
    for (int b = 1; b < bins; ++b)
        edges[b - 1] = -std::log1p(-std::pow(static_cast<double>(b) / bins, 1.0 / q));
    std::vector<int> counts(bins, 0);
    RandomStream rng(9, 0);
    for (int i = 0; i < n; ++i) {
        const double g = sample_states(AvgSnr(1.0), q, rng).max().gamma;
        counts[std::upper_bound(edges.begin(), edges.end(), g) - edges.begin()]++;
    }
    const double expect = static_cast<double>(n) / bins;
    double stat = 0.0;
    for (int c : counts) stat += (c - expect) * (c - expect) / expect;
    const double critical = boost::math::quantile(boost::math::chi_squared(bins - 1), 0.999);
    CHECK(stat < critical);

    boost::math::quadrature::tanh_sinh<double> quad;
    const double p_first = quad.integrate(
        [&](double g) { return max_state_pdf_exact({g}, AvgSnr(1.0), q); }, 0.0, edges[0]);
    CHECK(p_first == Approx(1.0 / bins).epsilon(1e-8));
}

} // TEST_SUITE
