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

// Sample-level Monte Carlo for the four sensing schemes.
//
// Every trial owns the substream (seed, trial_index), so estimates are
// bit-identical for a fixed seed regardless of thread count or scheduling.
// Per-sample energies follow the detector convention: sigma^2 (X^2 + Y^2) with
// X, Y standard normal, i.e. -2 sigma^2 ln U, sigma^2 = 1 under H0 and
// 1 + gamma under H1.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rasense/channel.hpp"
#include "rasense/detector.hpp"
#include "rasense/fusion.hpp"
#include "rasense/random.hpp"
#include "rasense/reconfig.hpp"

namespace rasense::simkit {

enum class Scheme { noncoop, coop, switching, selection };
enum class Hypothesis { h0, h1 };
enum class Decision { absent, present };

const char* to_string(Scheme scheme) noexcept;

using SchemePayload =
    std::variant<detector::DetectorParams, fusion::FusionParams, reconfig::ReconfigParams>;

struct SchemeConfig {
    SchemePayload payload;
    channel::AvgSnr avg_snr{1.0};

    Scheme scheme() const noexcept;
    /// NM for cooperation, M otherwise.
    unsigned total_samples() const noexcept;
    /// Short label such as "coop_N10_n1_M10".
    std::string label() const;
    void validate() const;
    SchemeConfig with_snr(channel::AvgSnr avg) const;
};

/// z for a two-sided 99% normal interval.
inline constexpr double kZ99 = 2.576;

struct McEstimate {
    double value = 0.0;          ///< event fraction
    std::uint64_t trials = 0;
    std::uint64_t events = 0;
    double ci_halfwidth = 0.0;   ///< kZ99 * sqrt(v (1 - v) / trials)
    std::uint64_t seed = 0;

    double lower() const noexcept { return value - ci_halfwidth; }
    double upper() const noexcept { return value + ci_halfwidth; }
};

/// Worker threads used by the estimators; 0 selects hardware_concurrency().
void set_worker_threads(unsigned count) noexcept;
unsigned resolved_worker_threads() noexcept;

McEstimate make_estimate(std::uint64_t events, std::uint64_t trials, std::uint64_t seed);

Decision run_trial(const SchemeConfig& config, Hypothesis hypothesis, RandomStream& rng);

/// Counted event: a false alarm ("present") under H0, a miss ("absent")
/// under H1. Requires trials >= 1000.
McEstimate estimate_point(const SchemeConfig& config, Hypothesis hypothesis, std::uint64_t trials,
                          std::uint64_t seed);

struct EscalationPolicy {
    bool enabled = true;
    std::uint64_t event_floor = 100;
    std::uint64_t trial_cap = 100'000'000;
};

/// Starts at `trials` and multiplies by 10 while fewer than event_floor
/// events were seen, the cap allows it, and a 99% upper bound on the rate
/// says the floor is still reachable within the cap. Earlier trials are kept.
McEstimate estimate_point_escalating(const SchemeConfig& config, Hypothesis hypothesis,
                                     std::uint64_t trials, std::uint64_t seed,
                                     const EscalationPolicy& policy);

/// Analytic P_F of the scheme's test.
double analytic_pf(const SchemeConfig& config);

/// Analytic P_md at config.avg_snr. Switching reports the averaged product
/// asymptote (clamped to 1), which is only meaningful at high SNR.
double analytic_pmd(const SchemeConfig& config);

struct SweepPoint {
    double snr_db = 0.0;
    std::optional<McEstimate> pmd_mc;
    std::optional<double> pmd_analytic;

    /// MC value when present, the analytic one otherwise.
    std::optional<double> pmd() const;
};

struct SweepCurve {
    std::string label;
    std::vector<SweepPoint> points;
    std::optional<McEstimate> pf_mc;
    std::optional<double> pf_analytic;
};

struct SweepOptions {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    bool monte_carlo = true;
    bool analytic = true;
    EscalationPolicy escalation;
};

/// One H1 estimate per grid SNR plus one shared H0 false-alarm check. The
/// threshold in `config` is used unchanged at every SNR. All points share the
/// seed, so the MC curve is a common-random-numbers curve.
SweepCurve sweep(const SchemeConfig& config, std::span<const double> snr_grid_db,
                 const SweepOptions& options);

struct SlopeFit {
    double diversity = 0.0; ///< negated least-squares slope of log10 P_md vs log10 avg_snr
    std::size_t points_used = 0;
    double lo_db = 0.0;
    double hi_db = 0.0;
    std::vector<std::string> warnings;
};

/// Fits over points with lo <= snr_db <= hi. MC cells with zero or fewer than
/// event_floor events are skipped (with a warning). Throws NumericalError when
/// fewer than three points remain.
SlopeFit fit_diversity_slope(const SweepCurve& curve, std::pair<double, double> window_db,
                             std::uint64_t event_floor = 100);

/// SNR range of the points whose P_md lies in [pmd_lo, pmd_hi] (and, for MC
/// points, reach the event floor).
std::optional<std::pair<double, double>> slope_window(const SweepCurve& curve, double pmd_lo = 1e-5,
                                                      double pmd_hi = 1e-2,
                                                      std::uint64_t event_floor = 100);

} // namespace rasense::simkit
