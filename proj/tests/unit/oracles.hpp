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

// Independent reference computations shared by the unit and acceptance
// tests. They use the standard library's generators and Boost.Math only.

#include <cmath>
#include <cstdint>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace oracle {

/// Fraction of `trials` fixed-SNR energy tests that exceed the threshold:
/// M complex samples with variance (1 + gamma) per real dimension.
inline double fixed_snr_detection(unsigned samples, double threshold, double gamma,
                                  std::uint64_t trials, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(1.0 + gamma));
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        double y = 0.0;
        for (unsigned i = 0; i < samples; ++i) {
            const double re = normal(eng), im = normal(eng);
            y += re * re + im * im;
        }
        hits += y > threshold;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

/// Average miss probability over Rayleigh fading by Boost quadrature:
/// integral of P(M, c / (1 + avg t)) e^{-t} dt, c = lambda / 2.
inline double avg_pmd(unsigned samples, double threshold, double avg) {
    const double c = threshold / 2.0;
    boost::math::quadrature::tanh_sinh<double> quad;
    auto f = [&](double t) { return boost::math::gamma_p(samples, c / (1.0 + avg * t)) * std::exp(-t); };
    // Split at the knee t ~ 1/avg so tanh-sinh sees a smooth integrand.
    const double knee = std::min(1.0, 50.0 / avg);
    return quad.integrate(f, 0.0, knee) + quad.integrate(f, knee, 60.0);
}

/// lim avg -> inf of avg * P_md for the single-user detector:
/// integral over (0, 1] of P(M, c u) / u^2 du.
inline double high_snr_constant(unsigned samples, double threshold) {
    const double c = threshold / 2.0;
    boost::math::quadrature::tanh_sinh<double> quad;
    return quad.integrate([&](double u) {
        if (u < 1e-100) return 0.0;
        return boost::math::gamma_p(samples, c * u) / (u * u);
    }, 0.0, 1.0);
}

/// Least-squares slope of log10 y against log10 x.
template <typename Xs, typename Ys>
double loglog_slope(const Xs& xs, const Ys& ys) {
    double mx = 0, my = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += std::log10(xs[i]);
        my += std::log10(ys[i]);
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = std::log10(xs[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log10(ys[i]) - my);
    }
    return sxy / sxx;
}

} // namespace oracle
