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

// Single-user sensing through a reconfigurable antenna with Q states.
//
// State switching (no CSI) dwells l_j samples on state j, so the energy is
// Y = sum_j (1 + gamma_j) x_j with x_j chi-square. State selection (CSI at the
// receiver) senses all M samples on the strongest state.
//
// Threshold scale: the switching formulas (the min{H, G} CDF approximation,
// the product asymptote and its average) are written for per-sample energies
// with unit mean under H0, i.e. the threshold is compared against Y / 2.
// Callers holding a detector threshold lambda (chi-square scale, P_F =
// Q(M, lambda/2)) pass unit_energy_threshold(lambda). The selection formulas
// use the detector scale directly.

#include <cstdint>
#include <vector>

#include "rasense/channel.hpp"
#include "rasense/detector.hpp"

namespace rasense::reconfig {

enum class CsiMode { switching, selection };

struct ReconfigParams {
    unsigned states = 1;         ///< Q
    unsigned samples = 1;        ///< M, total samples in the sensing window
    std::vector<unsigned> alloc; ///< dwell l_j per state (switching)
    double threshold = 1.0;      ///< lambda on the detector (chi-square) scale
    double alpha = 0.05;
    CsiMode mode = CsiMode::switching;

    /// Equal dwell allocation and the NP threshold for P_F = alpha.
    static ReconfigParams calibrated(unsigned states, unsigned samples, double alpha, CsiMode mode);
    void validate() const;
};

/// One weighted chi-square component: coefficient (1 + gamma_j), 2 l_j dof.
struct WeightedComponent {
    double coefficient = 1.0;
    unsigned dof = 2;
};

struct WeightedChiSqSpec {
    std::vector<WeightedComponent> components;

    static WeightedChiSqSpec from_states(const std::vector<unsigned>& alloc,
                                         const channel::StateRealizations& states);
    unsigned total_samples() const; ///< sum of dof / 2
    void validate() const;
};

/// Equal split floor(M/Q), the remainder going one sample each to the
/// lowest-indexed states. With M < Q only M single-sample dwells are used.
std::vector<unsigned> allocate_samples(unsigned samples, unsigned states);

/// The quantity the dwell allocation maximizes, prod_j (l_j - 1).
double allocation_objective(const std::vector<unsigned>& alloc);

inline double unit_energy_threshold(double detector_threshold) { return detector_threshold / 2.0; }

struct SwitchingCdfTerms {
    double w = 0.0;
    double h = 0.0; ///< geometric-mean gamma CDF term
    double g = 0.0; ///< expanded per-dimension sum term
};

/// Both branches of the min{H(w), G(w)} approximation.
SwitchingCdfTerms switching_cdf_terms(const WeightedChiSqSpec& spec, double threshold);

/// min{H(w), G(w)} clamped to [0, 1]; threshold on the unit-energy scale.
double pmd_switching_conditional(const WeightedChiSqSpec& spec, double threshold);

/// lambda^M / (Gamma(M+1) prod_j (1 + gamma_j)^{l_j}); unit-energy scale, raw.
double pmd_switching_asymptotic_conditional(const WeightedChiSqSpec& spec, double threshold);

enum class AveragingMethod { asymptotic, quadrature };

/// Fading average of the product asymptote. The quadrature method integrates
/// each state's factor (1 + gamma)^{-l} against the exponential density; the
/// asymptotic method uses prod (l_j - 1)^{-1} avg^{-Q}. Unit-energy scale, raw.
double avg_pmd_switching(const std::vector<unsigned>& alloc, double threshold,
                         const channel::AvgSnr& avg, AveragingMethod method);

/// E[(1 + gamma)^{-l}] for exponential gamma, by quadrature.
double inverse_power_moment(unsigned power, const channel::AvgSnr& avg);

/// d = min(M, Q). No closed-form coding gain in switching mode; selection
/// mode carries the selection gain H_Q.
detector::GainSummary diversity_reconfig(unsigned samples, unsigned states,
                                         CsiMode mode = CsiMode::switching);

/// P(M, lambda / (2 (1 + gamma_max))).
double pmd_selection_conditional(unsigned samples, double threshold, double gamma_max);

enum class MaxPdf { exact, dominant };

double avg_pmd_selection(unsigned samples, double threshold, const channel::AvgSnr& avg,
                         unsigned states, MaxPdf pdf = MaxPdf::exact);

struct SelectionGain {
    double linear = 1.0;
    double db = 0.0;
};

/// E[gamma_max] / E[gamma] = H_Q.
SelectionGain selection_gain(unsigned states);

/// ln Q + Euler's constant.
double selection_gain_large_q(unsigned states);

/// max(ceil(M / H_Q), Q): samples for selection to match switching at M.
unsigned reduced_samples(unsigned samples, unsigned states);

/// Diagnostic only: the two hypergeometric factors of the selection-scheme
/// asymptote, 1F2(Q; Q+1, Q-M+1; z) and 1F2(M; M+1, Q-M+1; z) with
/// z = lambda / (2 avg). The second lower parameter is a pole whenever
/// M >= Q + 1, in which case DomainError is thrown.
struct SelectionHypergeomTerms {
    double state_term = 0.0;
    double sample_term = 0.0;
};
SelectionHypergeomTerms selection_hypergeom_terms(unsigned samples, unsigned states,
                                                  double threshold, const channel::AvgSnr& avg);

detector::OperatingPoint operating_point(const ReconfigParams& params, const channel::AvgSnr& avg);

} // namespace rasense::reconfig
