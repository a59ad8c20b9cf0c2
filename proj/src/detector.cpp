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

#include "rasense/detector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rasense/error.hpp"
#include "rasense/numeric.hpp"
#include "rasense/specfun.hpp"

namespace rasense::detector {
namespace {

constexpr double kTailCutoff = 50.0;

void check_samples(unsigned samples) {
    if (samples == 0) throw DomainError("detector: sample count must be at least 1");
}

void check_threshold(double threshold) {
    if (!(threshold > 0.0) || !std::isfinite(threshold)) {
        throw DomainError("detector: threshold must be positive and finite");
    }
}

} // namespace

DetectorParams DetectorParams::calibrated(unsigned samples, double alpha) {
    return {samples, calibrate_lambda(samples, alpha), alpha};
}

void DetectorParams::validate() const {
    check_samples(samples);
    check_threshold(threshold);
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("detector: alpha must lie in (0, 1)");
}

OperatingPoint OperatingPoint::make(double pf, double pd, Provenance provenance,
                                    double ci_halfwidth) {
    OperatingPoint op;
    op.pf = std::clamp(pf, 0.0, 1.0);
    op.pd = std::clamp(pd, 0.0, 1.0);
    op.pmd = 1.0 - op.pd;
    op.provenance = provenance;
    op.ci_halfwidth = ci_halfwidth;
    return op;
}

std::optional<double> GainSummary::coding_gain_db() const {
    if (!coding_gain) return std::nullopt;
    return 10.0 * std::log10(*coding_gain);
}

double pf_single(unsigned samples, double threshold) {
    check_samples(samples);
    check_threshold(threshold);
    return specfun::reg_upper_gamma(samples, threshold / 2.0);
}

double pd_single(unsigned samples, double threshold, double gamma) {
    check_samples(samples);
    check_threshold(threshold);
    if (!(gamma >= 0.0)) throw DomainError("pd_single: SNR must be non-negative");
    return specfun::reg_upper_gamma(samples, threshold / (2.0 * (1.0 + gamma)));
}

double calibrate_lambda(unsigned samples, double alpha) {
    check_samples(samples);
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("calibrate_lambda: alpha must lie in (0, 1)");
    return 2.0 * specfun::inv_reg_upper_gamma(samples, alpha);
}

double avg_pd_closed(unsigned samples, double threshold, const channel::AvgSnr& avg) {
    check_samples(samples);
    check_threshold(threshold);
    const double g = avg.linear();
    const double m = samples;
    const double x = std::sqrt(2.0 * threshold / g);
    const double log_pd = std::numbers::ln2 + 1.0 / g - specfun::ln_gamma(m) +
                          0.5 * m * std::log(threshold / (2.0 * g)) +
                          specfun::log_bessel_k_int(static_cast<int>(samples), x);
    if (std::isnan(log_pd)) throw NumericalError("avg_pd_closed: log-domain evaluation failed");
    return std::clamp(std::exp(log_pd), 0.0, 1.0);
}

double avg_pmd_numeric(unsigned samples, double threshold, const channel::AvgSnr& avg) {
    check_samples(samples);
    check_threshold(threshold);
    const double g = avg.linear();
    const double half = threshold / 2.0;
    auto integrand = [&](double t) {
        return specfun::reg_lower_gamma(samples, half / (1.0 + g * t)) * std::exp(-t);
    };
    const auto pts = numeric::scaled_snr_breakpoints(kTailCutoff);
    return numeric::integrate(integrand, pts, {.absolute = 1e-300, .relative = 1e-11}).value;
}

double avg_pd_numeric(unsigned samples, double threshold, const channel::AvgSnr& avg) {
    return 1.0 - avg_pmd_numeric(samples, threshold, avg);
}

double asymptotic_pmd_single(unsigned samples, double threshold, const channel::AvgSnr& avg) {
    if (samples < 2) throw DomainError("asymptotic_pmd_single: needs at least 2 samples");
    check_threshold(threshold);
    return threshold / (2.0 * avg.linear() * (samples - 1.0));
}

GainSummary gains_single(unsigned samples, double threshold) {
    if (samples < 2) throw DomainError("gains_single: needs at least 2 samples");
    check_threshold(threshold);
    GainSummary g;
    g.diversity = 1.0;
    g.coding_gain = (samples - 1.0) / threshold;
    return g;
}

OperatingPoint operating_point(const DetectorParams& params, const channel::AvgSnr& avg) {
    params.validate();
    const double pf = pf_single(params.samples, params.threshold);
    const double pmd = avg_pmd_numeric(params.samples, params.threshold, avg);
    return OperatingPoint::make(pf, 1.0 - pmd, Provenance::analytic);
}

} // namespace rasense::detector
