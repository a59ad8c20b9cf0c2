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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rasense::numeric {

struct Tolerance {
    double absolute = 1e-10;
    double relative = 1e-10;
};

struct Integral {
    double value = 0.0;
    double error = 0.0;
    std::size_t intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over
/// [breakpoints.front(), breakpoints.back()]. The breakpoints seed the
/// initial partition; the worst interval is bisected until
/// error <= max(absolute, relative * |value|). Throws NumericalError when
/// max_intervals is reached first.
Integral integrate(const std::function<double(double)>& f,
                   std::span<const double> breakpoints,
                   Tolerance tol = {},
                   std::size_t max_intervals = 4000);

/// Convenience overload for a single interval [a, b].
Integral integrate(const std::function<double(double)>& f, double a, double b,
                   Tolerance tol = {}, std::size_t max_intervals = 4000);

/// Breakpoints 0, 1e-12, 1e-11, ..., 1, upper. Suited to integrands in the
/// scaled SNR variable t = gamma / gamma_bar whose features move towards 0 as
/// the average SNR grows.
std::vector<double> scaled_snr_breakpoints(double upper);

struct RootOptions {
    double x_rel_tol = 4e-16;
    double f_abs_tol = 0.0;
    int max_iterations = 200;
};

/// Root of f on [lo, hi], where f(lo) and f(hi) have opposite signs.
/// Illinois false position with bisection steps whenever the bracket fails
/// to halve. Throws NumericalError after max_iterations.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 RootOptions opt = {});

} // namespace rasense::numeric
