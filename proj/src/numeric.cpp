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

#include "rasense/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "rasense/error.hpp"

namespace rasense::numeric {
namespace {

// 15-point Kronrod abscissae/weights and the embedded 7-point Gauss weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    double err = std::abs(kronrod - gauss);
    if (!std::isfinite(kronrod)) {
        throw NumericalError("integrate: integrand is not finite");
    }
    // Round-off floor so flat integrands terminate.
    err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod));
    return {a, b, kronrod, err};
}

} // namespace

Integral integrate(const std::function<double(double)>& f, std::span<const double> breakpoints,
                   Tolerance tol, std::size_t max_intervals) {
    if (breakpoints.size() < 2) throw DomainError("integrate: need at least two breakpoints");
    std::priority_queue<Segment> work;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i + 1] > breakpoints[i])) {
            throw DomainError("integrate: breakpoints must be strictly increasing");
        }
        Segment s = gauss_kronrod(f, breakpoints[i], breakpoints[i + 1]);
        total += s.value;
        total_err += s.error;
        work.push(s);
    }

    auto converged = [&] {
        return total_err <= std::max(tol.absolute, tol.relative * std::abs(total));
    };
    while (!converged()) {
        if (work.size() >= max_intervals) {
            throw NumericalError("integrate: interval budget exhausted before reaching tolerance");
        }
        const Segment worst = work.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval cannot be split further in double precision.
            break;
        }
        work.pop();
        const Segment left = gauss_kronrod(f, worst.a, mid);
        const Segment right = gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        work.push(left);
        work.push(right);
    }

    // Re-sum to shed the drift accumulated by the incremental updates.
    Integral out;
    out.intervals = work.size();
    while (!work.empty()) {
        out.value += work.top().value;
        out.error += work.top().error;
        work.pop();
    }
    return out;
}

Integral integrate(const std::function<double(double)>& f, double a, double b, Tolerance tol,
                   std::size_t max_intervals) {
    const std::array<double, 2> pts = {a, b};
    return integrate(f, pts, tol, max_intervals);
}

std::vector<double> scaled_snr_breakpoints(double upper) {
    std::vector<double> pts = {0.0};
    for (int e = -12; e <= 0; ++e) {
        const double p = std::pow(10.0, e);
        if (p < upper) pts.push_back(p);
    }
    pts.push_back(upper);
    return pts;
}

double find_root(const std::function<double(double)>& f, double lo, double hi, RootOptions opt) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw DomainError("find_root: root is not bracketed");

    int side = 0;  // Illinois: which end was retained last time
    double width = hi - lo;
    for (int it = 0; it < opt.max_iterations; ++it) {
        double x = (lo * fhi - hi * flo) / (fhi - flo);
        // Fall back to bisection when false position stalls.
        if (!(x > lo && x < hi) || (hi - lo) > 0.5 * width) {
            x = 0.5 * (lo + hi);
        }
        width = hi - lo;
        const double fx = f(x);
        if (fx == 0.0 || std::abs(fx) <= opt.f_abs_tol) return x;
        if ((fx > 0.0) == (fhi > 0.0)) {
            hi = x;
            fhi = fx;
            if (side == -1) flo *= 0.5;
            side = -1;
        } else {
            lo = x;
            flo = fx;
            if (side == 1) fhi *= 0.5;
            side = 1;
        }
        if (hi - lo <= opt.x_rel_tol * std::max(std::abs(lo), std::abs(hi)) ||
            !(hi - lo > 0.0)) {
            return std::abs(flo) < std::abs(fhi) ? lo : hi;
        }
    }
    throw NumericalError("find_root: iteration cap reached");
}

} // namespace rasense::numeric
