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

// Single-user energy detection. The test statistic is the energy of M complex
// samples, each with unit variance per real dimension under H0 and (1 + gamma)
// under H1, so Y / sigma^2 is chi-square with 2M degrees of freedom and
//   P_F = Q(M, lambda/2),   P_D(gamma) = Q(M, lambda / (2 (1 + gamma))).

#include <optional>

#include "rasense/channel.hpp"

namespace rasense::detector {

struct DetectorParams {
    unsigned samples = 1;   ///< M
    double threshold = 1.0; ///< lambda
    double alpha = 0.05;    ///< NP false-alarm level the threshold was set for

    /// Threshold chosen so that P_F = alpha.
    static DetectorParams calibrated(unsigned samples, double alpha);
    void validate() const;
};

enum class Provenance { analytic, asymptotic, monte_carlo };

struct OperatingPoint {
    double pf = 0.0;
    double pd = 0.0;
    double pmd = 1.0;
    Provenance provenance = Provenance::analytic;
    double ci_halfwidth = 0.0;

    /// Clamps both probabilities into [0, 1] and sets pmd = 1 - pd.
    static OperatingPoint make(double pf, double pd, Provenance provenance,
                               double ci_halfwidth = 0.0);
};

/// Diversity order d and coding gain A in P_md ~ (A * avg_snr)^{-d}.
struct GainSummary {
    double diversity = 0.0;
    std::optional<double> coding_gain;    ///< absent where the scheme has no closed form
    std::optional<double> selection_gain; ///< H_Q for state selection
    std::optional<double> coding_gain_db() const;
};

double pf_single(unsigned samples, double threshold);
double pd_single(unsigned samples, double threshold, double gamma);
double calibrate_lambda(unsigned samples, double alpha);

/// Bessel-K closed form of the fading-averaged detection probability. It
/// integrates over (0, inf) in the shifted variable 1 + gamma, so it exceeds
/// the exact average by at most P_F / avg_snr; clamped to [0, 1].
double avg_pd_closed(unsigned samples, double threshold, const channel::AvgSnr& avg);

/// Exact fading-averaged missed detection, by adaptive quadrature in
/// t = gamma / avg_snr with the tail cut at t = 50.
double avg_pmd_numeric(unsigned samples, double threshold, const channel::AvgSnr& avg);

/// 1 - avg_pmd_numeric.
double avg_pd_numeric(unsigned samples, double threshold, const channel::AvgSnr& avg);

/// lambda / (2 avg_snr (M - 1)). Raw, may exceed 1 at low SNR.
double asymptotic_pmd_single(unsigned samples, double threshold, const channel::AvgSnr& avg);

/// d = 1, A = (M - 1) / lambda.
GainSummary gains_single(unsigned samples, double threshold);

OperatingPoint operating_point(const DetectorParams& params, const channel::AvgSnr& avg);

} // namespace rasense::detector
