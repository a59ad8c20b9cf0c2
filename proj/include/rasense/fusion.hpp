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

// Cooperative sensing with hard local decisions combined by an n-out-of-N
// vote at the fusion center. Users are i.i.d. and reporting is error-free.

#include "rasense/channel.hpp"
#include "rasense/detector.hpp"

namespace rasense::fusion {

struct FusionParams {
    unsigned users = 1; ///< N
    unsigned votes = 1; ///< n, the global threshold in [1, N]
    detector::DetectorParams per_user;

    /// Local threshold chosen so that the global false alarm equals alpha.
    static FusionParams calibrated(unsigned users, unsigned votes, unsigned samples, double alpha);
    void validate() const;
};

/// P(at least n of N successes) for i.i.d. Bernoulli(p) votes.
double binomial_upper_tail(unsigned users, unsigned votes, double p);

/// Global false alarm for a given local false-alarm probability.
double global_pf_from_local(unsigned users, unsigned votes, double local_pf);

double global_pf(const FusionParams& params);
double global_pd(const FusionParams& params, const channel::AvgSnr& avg);

/// sum_{l=0}^{n-1} C(N,l) q^{N-l} (1-q)^l with q the local average P_md.
double global_pmd(const FusionParams& params, const channel::AvgSnr& avg);

/// Local P_F that makes the global P_F equal alpha.
double local_pf_for_global(unsigned users, unsigned votes, double alpha);

/// Local threshold lambda that makes the global P_F equal alpha.
double calibrate_local_lambda_global(unsigned users, unsigned votes, unsigned samples, double alpha);

/// d = N - n + 1, A = C(N, n-1)^{1/d} (M - 1) / lambda.
detector::GainSummary gains_coop(const FusionParams& params);

/// C(N, n-1) (lambda / (2 avg (M - 1)))^{N-n+1}. Raw, not clamped.
double asymptotic_pmd_coop(const FusionParams& params, const channel::AvgSnr& avg);

/// The vote threshold that maximizes diversity (the OR rule).
constexpr unsigned diversity_maximizing_votes() noexcept { return 1; }

detector::OperatingPoint operating_point(const FusionParams& params, const channel::AvgSnr& avg);

} // namespace rasense::fusion
