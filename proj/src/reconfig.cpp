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

#include "rasense/reconfig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rasense/error.hpp"
#include "rasense/numeric.hpp"
#include "rasense/specfun.hpp"

namespace rasense::reconfig {
namespace {

constexpr double kTailCutoff = 50.0;

void check_threshold(double threshold) {
    if (!(threshold > 0.0) || !std::isfinite(threshold)) {
        throw DomainError("reconfig: threshold must be positive and finite");
    }
}

} // namespace

ReconfigParams ReconfigParams::calibrated(unsigned states, unsigned samples, double alpha,
                                          CsiMode mode) {
    ReconfigParams rp;
    rp.states = states;
    rp.samples = samples;
    rp.alloc = allocate_samples(samples, states);
    rp.threshold = detector::calibrate_lambda(samples, alpha);
    rp.alpha = alpha;
    rp.mode = mode;
    return rp;
}

void ReconfigParams::validate() const {
    if (states == 0) throw DomainError("reconfig: need at least one antenna state");
    if (samples == 0) throw DomainError("reconfig: need at least one sample");
    check_threshold(threshold);
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("reconfig: alpha must lie in (0, 1)");
    if (mode == CsiMode::switching) {
        if (alloc.empty() || alloc.size() > states) {
            throw DomainError("reconfig: allocation must cover between 1 and Q states");
        }
        const auto total = std::accumulate(alloc.begin(), alloc.end(), 0u);
        if (total > samples) throw DomainError("reconfig: allocation exceeds the sample budget");
        if (std::find(alloc.begin(), alloc.end(), 0u) != alloc.end()) {
            throw DomainError("reconfig: every dwell must be at least one sample");
        }
    }
}

WeightedChiSqSpec WeightedChiSqSpec::from_states(const std::vector<unsigned>& alloc,
                                                 const channel::StateRealizations& states) {
    if (alloc.size() > states.size()) {
        throw DomainError("WeightedChiSqSpec: fewer channel states than dwell blocks");
    }
    WeightedChiSqSpec spec;
    spec.components.reserve(alloc.size());
    for (std::size_t j = 0; j < alloc.size(); ++j) {
        spec.components.push_back({1.0 + states.gammas[j].gamma, 2 * alloc[j]});
    }
    return spec;
}

unsigned WeightedChiSqSpec::total_samples() const {
    unsigned dof = 0;
    for (const auto& c : components) dof += c.dof;
    return dof / 2;
}

void WeightedChiSqSpec::validate() const {
    if (components.empty()) throw DomainError("WeightedChiSqSpec: no components");
    for (const auto& c : components) {
        if (c.dof == 0) throw DomainError("WeightedChiSqSpec: a state has zero dwell");
        if (c.dof % 2 != 0) throw DomainError("WeightedChiSqSpec: degrees of freedom must be even");
        if (!(c.coefficient >= 1.0)) throw DomainError("WeightedChiSqSpec: coefficients must be >= 1");
    }
}

std::vector<unsigned> allocate_samples(unsigned samples, unsigned states) {
    if (samples == 0 || states == 0) throw DomainError("allocate_samples: M and Q must be positive");
    if (samples < states) return std::vector<unsigned>(samples, 1u);
    const unsigned base = samples / states;
    const unsigned extra = samples - base * states;
    std::vector<unsigned> alloc(states, base);
    for (unsigned j = 0; j < extra; ++j) ++alloc[j];
    return alloc;
}

double allocation_objective(const std::vector<unsigned>& alloc) {
    double prod = 1.0;
    for (unsigned l : alloc) prod *= (static_cast<double>(l) - 1.0);
    return prod;
}

SwitchingCdfTerms switching_cdf_terms(const WeightedChiSqSpec& spec, double threshold) {
    spec.validate();
    check_threshold(threshold);
    const double m = spec.total_samples();

    double weighted_sum = 0.0; // sum_j l_j (1 + gamma_j)
    double log_geo = 0.0;      // sum_j l_j ln(1 + gamma_j)
    for (const auto& c : spec.components) {
        const double l = c.dof / 2.0;
        weighted_sum += l * c.coefficient;
        log_geo += l * std::log(c.coefficient);
    }
    SwitchingCdfTerms t;
    t.w = threshold / weighted_sum;
    t.h = specfun::reg_lower_gamma(m, threshold / std::exp(log_geo / m));

    // The 2M-term sum runs over real dimensions: state j contributes 2 l_j
    // identical terms.
    double g = 0.0;
    for (const auto& c : spec.components) {
        const double shape = threshold / (2.0 * t.w * c.coefficient);
        const double term = t.w * c.coefficient / threshold *
                            specfun::reg_lower_gamma(shape, threshold / c.coefficient);
        g += c.dof * term;
    }
    t.g = g;
    return t;
}

double pmd_switching_conditional(const WeightedChiSqSpec& spec, double threshold) {
    const auto t = switching_cdf_terms(spec, threshold);
    return std::clamp(std::min(t.h, t.g), 0.0, 1.0);
}

double pmd_switching_asymptotic_conditional(const WeightedChiSqSpec& spec, double threshold) {
    spec.validate();
    check_threshold(threshold);
    const double m = spec.total_samples();
    double log_prod = 0.0;
    for (const auto& c : spec.components) log_prod += (c.dof / 2.0) * std::log(c.coefficient);
    return std::exp(m * std::log(threshold) - specfun::ln_gamma(m + 1.0) - log_prod);
}

double inverse_power_moment(unsigned power, const channel::AvgSnr& avg) {
    const double g = avg.linear();
    auto integrand = [&](double t) { return std::exp(-t - power * std::log1p(g * t)); };
    const auto pts = numeric::scaled_snr_breakpoints(kTailCutoff);
    return numeric::integrate(integrand, pts, {.absolute = 1e-300, .relative = 1e-11}).value;
}

double avg_pmd_switching(const std::vector<unsigned>& alloc, double threshold,
                         const channel::AvgSnr& avg, AveragingMethod method) {
    if (alloc.empty()) throw DomainError("avg_pmd_switching: empty allocation");
    check_threshold(threshold);
    const double m = std::accumulate(alloc.begin(), alloc.end(), 0.0);
    double log_value = m * std::log(threshold) - specfun::ln_gamma(m + 1.0);
    if (method == AveragingMethod::asymptotic) {
        for (unsigned l : alloc) {
            if (l < 2) throw DomainError("avg_pmd_switching: asymptote needs every dwell >= 2");
            log_value -= std::log(l - 1.0) + std::log(avg.linear());
        }
    } else {
        for (unsigned l : alloc) {
            if (l == 0) throw DomainError("avg_pmd_switching: zero dwell");
            log_value += std::log(inverse_power_moment(l, avg));
        }
    }
    return std::exp(log_value);
}

detector::GainSummary diversity_reconfig(unsigned samples, unsigned states, CsiMode mode) {
    if (samples == 0 || states == 0) throw DomainError("diversity_reconfig: M and Q must be positive");
    detector::GainSummary g;
    g.diversity = std::min(samples, states);
    if (mode == CsiMode::selection) g.selection_gain = specfun::harmonic(states);
    return g;
}

double pmd_selection_conditional(unsigned samples, double threshold, double gamma_max) {
    if (samples == 0) throw DomainError("pmd_selection_conditional: need at least one sample");
    check_threshold(threshold);
    if (!(gamma_max >= 0.0)) throw DomainError("pmd_selection_conditional: gamma must be >= 0");
    return specfun::reg_lower_gamma(samples, threshold / (2.0 * (1.0 + gamma_max)));
}

double avg_pmd_selection(unsigned samples, double threshold, const channel::AvgSnr& avg,
                         unsigned states, MaxPdf pdf) {
    if (samples == 0 || states == 0) throw DomainError("avg_pmd_selection: M and Q must be positive");
    check_threshold(threshold);
    const double g = avg.linear();
    const double half = threshold / 2.0;
    const double q = states;
    // Densities in t = gamma / avg.
    auto density = [&](double t) {
        if (pdf == MaxPdf::exact) {
            return q * std::exp(-t) * std::pow(-std::expm1(-t), q - 1.0);
        }
        return t == 0.0 ? (states == 1 ? 1.0 : 0.0)
                        : std::exp(std::log(q) + (q - 1.0) * std::log(t) - t);
    };
    auto integrand = [&](double t) {
        const double d = density(t);
        return d == 0.0 ? 0.0 : specfun::reg_lower_gamma(samples, half / (1.0 + g * t)) * d;
    };
    // The dominant density peaks near t = Q - 1, so extend the cut-off with Q.
    const double upper = kTailCutoff + 2.0 * q;
    const auto pts = numeric::scaled_snr_breakpoints(upper);
    return numeric::integrate(integrand, pts, {.absolute = 1e-300, .relative = 1e-10}).value;
}

SelectionGain selection_gain(unsigned states) {
    const double h = specfun::harmonic(states);
    return {h, 10.0 * std::log10(h)};
}

double selection_gain_large_q(unsigned states) {
    if (states == 0) throw DomainError("selection_gain_large_q: Q must be positive");
    return std::log(static_cast<double>(states)) + specfun::kEulerGamma;
}

unsigned reduced_samples(unsigned samples, unsigned states) {
    if (states == 0 || samples < states) throw DomainError("reduced_samples: requires M >= Q >= 1");
    const double scaled = std::ceil(samples / specfun::harmonic(states));
    return std::max(static_cast<unsigned>(scaled), states);
}

SelectionHypergeomTerms selection_hypergeom_terms(unsigned samples, unsigned states,
                                                  double threshold, const channel::AvgSnr& avg) {
    check_threshold(threshold);
    const double m = samples;
    const double q = states;
    const double z = threshold / (2.0 * avg.linear());
    return {specfun::hypergeom_1f2(q, q + 1.0, q - m + 1.0, z),
            specfun::hypergeom_1f2(m, m + 1.0, q - m + 1.0, z)};
}

detector::OperatingPoint operating_point(const ReconfigParams& params, const channel::AvgSnr& avg) {
    params.validate();
    const double pf = detector::pf_single(params.samples, params.threshold);
    double pmd;
    detector::Provenance prov;
    if (params.mode == CsiMode::selection) {
        pmd = avg_pmd_selection(params.samples, params.threshold, avg, params.states);
        prov = detector::Provenance::analytic;
    } else {
        pmd = avg_pmd_switching(params.alloc, unit_energy_threshold(params.threshold), avg,
                                AveragingMethod::quadrature);
        prov = detector::Provenance::asymptotic;
    }
    return detector::OperatingPoint::make(pf, 1.0 - std::min(pmd, 1.0), prov);
}

} // namespace rasense::reconfig
