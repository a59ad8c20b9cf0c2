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

// Special-function kernel shared by the analytic detection formulas.
// Everything here is pure and safe to call concurrently.

#include <cstdint>

namespace rasense::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// ln Γ(x) for x > 0 (Lanczos, g = 671/128).
double ln_gamma(double x);

/// Regularized upper incomplete gamma Q(s, x) = Γ(s, x) / Γ(s).
double reg_upper_gamma(double s, double x);

/// Regularized lower incomplete gamma P(s, x) = 1 - Q(s, x).
double reg_lower_gamma(double s, double x);

/// Solves Q(s, x) = p for x. Requires 0 < p < 1.
double inv_reg_upper_gamma(double s, double p);

/// Modified Bessel function of the second kind K_n(x) for integer n >= 0.
/// May overflow to +inf for tiny x and large n; use log_bessel_k_int there.
double bessel_k_int(int order, double x);

/// ln K_n(x), evaluated with running rescaling so it never overflows.
double log_bessel_k_int(int order, double x);

/// 1F2(a; b1, b2; z) by direct summation.
double hypergeom_1f2(double a, double b1, double b2, double z);

/// H_q = 1 + 1/2 + ... + 1/q, summed in increasing k.
double harmonic(std::uint64_t q);

/// ln C(n, k).
double log_binom(std::uint64_t n, std::uint64_t k);

/// C(n, k) as a double (multiplicative form, exact for small n).
double binom(std::uint64_t n, std::uint64_t k);

} // namespace rasense::specfun
