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

#include "rasense/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "rasense/error.hpp"
#include "rasense/numeric.hpp"
#include "rasense/specfun.hpp"

namespace rasense::fusion {
namespace {

void check_votes(unsigned users, unsigned votes) {
    if (users == 0) throw DomainError("fusion: need at least one user");
    if (votes < 1 || votes > users) throw DomainError("fusion: vote threshold must lie in [1, N]");
}

// C(N,l) p^l q^{N-l} with q = 1 - p supplied separately so neither side
// loses precision when it is tiny.
double binomial_term(unsigned users, unsigned l, double p, double q) {
    if (p == 0.0) return l == 0 ? 1.0 : 0.0;
    if (q == 0.0) return l == users ? 1.0 : 0.0;
    return std::exp(specfun::log_binom(users, l) + l * std::log(p) + (users - l) * std::log(q));
}

} // namespace

FusionParams FusionParams::calibrated(unsigned users, unsigned votes, unsigned samples,
                                      double alpha) {
    FusionParams fp;
    fp.users = users;
    fp.votes = votes;
    fp.per_user.samples = samples;
    fp.per_user.threshold = calibrate_local_lambda_global(users, votes, samples, alpha);
    fp.per_user.alpha = alpha;
    return fp;
}

void FusionParams::validate() const {
    check_votes(users, votes);
    per_user.validate();
}

double binomial_upper_tail(unsigned users, unsigned votes, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial_upper_tail: p must lie in [0, 1]");
    if (votes > users) return 0.0;
    if (votes == 0) return 1.0;
    // Sum the lighter tail so the result keeps full relative precision.
    const double q = 1.0 - p;
    if (static_cast<double>(votes) > users * p) {
        double sum = 0.0;
        for (unsigned l = votes; l <= users; ++l) sum += binomial_term(users, l, p, q);
        return std::min(sum, 1.0);
    }
    double lower = 0.0;
    for (unsigned l = 0; l < votes; ++l) lower += binomial_term(users, l, p, q);
    return std::clamp(1.0 - lower, 0.0, 1.0);
}

double global_pf_from_local(unsigned users, unsigned votes, double local_pf) {
    check_votes(users, votes);
    return binomial_upper_tail(users, votes, local_pf);
}

double global_pf(const FusionParams& params) {
    params.validate();
    return global_pf_from_local(params.users, params.votes,
                                detector::pf_single(params.per_user.samples, params.per_user.threshold));
}

double global_pmd(const FusionParams& params, const channel::AvgSnr& avg) {
    params.validate();
    const double q = detector::avg_pmd_numeric(params.per_user.samples, params.per_user.threshold, avg);
    // Votes for "present" are Bernoulli(1 - q); a miss needs fewer than n of them.
    double sum = 0.0;
    for (unsigned l = 0; l < params.votes; ++l) sum += binomial_term(params.users, l, 1.0 - q, q);
    return std::min(sum, 1.0);
}

double global_pd(const FusionParams& params, const channel::AvgSnr& avg) {
    return 1.0 - global_pmd(params, avg);
}

double local_pf_for_global(unsigned users, unsigned votes, double alpha) {
    check_votes(users, votes);
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("fusion calibration: alpha must lie in (0, 1)");
    // The tail is increasing in p, 0 at p = 0 and 1 at p = 1.
    return numeric::find_root(
        [&](double p) { return binomial_upper_tail(users, votes, p) - alpha; }, 0.0, 1.0,
        {.x_rel_tol = 1e-15, .f_abs_tol = 1e-15 * alpha, .max_iterations = 200});
}

double calibrate_local_lambda_global(unsigned users, unsigned votes, unsigned samples,
                                     double alpha) {
    return detector::calibrate_lambda(samples, local_pf_for_global(users, votes, alpha));
}

detector::GainSummary gains_coop(const FusionParams& params) {
    params.validate();
    const unsigned m = params.per_user.samples;
    if (m < 2) throw DomainError("gains_coop: needs at least 2 samples per user");
    const unsigned d = params.users - params.votes + 1;
    detector::GainSummary g;
    g.diversity = d;
    g.coding_gain = std::exp(specfun::log_binom(params.users, params.votes - 1) / d) *
                    (m - 1.0) / params.per_user.threshold;
    return g;
}

double asymptotic_pmd_coop(const FusionParams& params, const channel::AvgSnr& avg) {
    params.validate();
    const unsigned m = params.per_user.samples;
    if (m < 2) throw DomainError("asymptotic_pmd_coop: needs at least 2 samples per user");
    const unsigned d = params.users - params.votes + 1;
    const double x = params.per_user.threshold / (2.0 * avg.linear() * (m - 1.0));
    return std::exp(specfun::log_binom(params.users, params.votes - 1) + d * std::log(x));
}

detector::OperatingPoint operating_point(const FusionParams& params, const channel::AvgSnr& avg) {
    return detector::OperatingPoint::make(global_pf(params), global_pd(params, avg),
                                          detector::Provenance::analytic);
}

} // namespace rasense::fusion
