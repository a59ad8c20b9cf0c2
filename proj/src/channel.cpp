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

#include "rasense/channel.hpp"

#include <algorithm>
#include <cmath>

#include "rasense/error.hpp"

namespace rasense::channel {

AvgSnr::AvgSnr(double linear) : linear_(linear) {
    if (!(linear > 0.0) || !std::isfinite(linear)) {
        throw DomainError("AvgSnr: average SNR must be positive and finite");
    }
}

AvgSnr AvgSnr::from_db(double db) {
    return AvgSnr(std::pow(10.0, db / 10.0));
}

double AvgSnr::db() const noexcept {
    return 10.0 * std::log10(linear_);
}

SnrValue StateRealizations::max() const noexcept {
    SnrValue best{0.0};
    for (const auto& g : gammas) best.gamma = std::max(best.gamma, g.gamma);
    return best;
}

SnrValue sample_rayleigh_snr(const AvgSnr& avg, RandomStream& rng) {
    return {rng.exponential(avg.linear())};
}

StateRealizations sample_states(const AvgSnr& avg, unsigned states, RandomStream& rng) {
    if (states == 0) throw DomainError("sample_states: need at least one state");
    StateRealizations out;
    out.gammas.reserve(states);
    for (unsigned j = 0; j < states; ++j) out.gammas.push_back(sample_rayleigh_snr(avg, rng));
    return out;
}

double max_state_pdf_exact(SnrValue gamma_max, const AvgSnr& avg, unsigned states) {
    if (states == 0) throw DomainError("max_state_pdf_exact: need at least one state");
    if (!(gamma_max.gamma >= 0.0)) throw DomainError("max_state_pdf_exact: gamma must be >= 0");
    const double t = gamma_max.gamma / avg.linear();
    const double cdf = -std::expm1(-t);
    return states / avg.linear() * std::exp(-t) * std::pow(cdf, states - 1.0);
}

double max_state_pdf_dominant(SnrValue gamma_max, const AvgSnr& avg, unsigned states) {
    if (states == 0) throw DomainError("max_state_pdf_dominant: need at least one state");
    if (!(gamma_max.gamma >= 0.0)) throw DomainError("max_state_pdf_dominant: gamma must be >= 0");
    const double g = gamma_max.gamma;
    const double a = avg.linear();
    // Q / a^Q * e^{-g/a} * g^{Q-1}, in logs to survive large Q and a.
    if (states == 1) return std::exp(-g / a) / a;
    if (g == 0.0) return 0.0;
    const double q = states;
    return std::exp(std::log(q) - q * std::log(a) - g / a + (q - 1.0) * std::log(g));
}

} // namespace rasense::channel
