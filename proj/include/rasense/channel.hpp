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

// Rayleigh block-fading channel: the instantaneous SNR of a state is
// exponentially distributed with mean equal to the average SNR.

#include <cstddef>
#include <vector>

#include "rasense/random.hpp"

namespace rasense::channel {

/// Instantaneous linear SNR (>= 0).
struct SnrValue {
    double gamma = 0.0;
};

/// Average linear SNR (> 0).
class AvgSnr {
public:
    explicit AvgSnr(double linear);
    static AvgSnr from_db(double db);

    double linear() const noexcept { return linear_; }
    double db() const noexcept;

private:
    double linear_;
};

/// Q independent channel realizations, one per antenna state.
struct StateRealizations {
    std::vector<SnrValue> gammas;

    std::size_t size() const noexcept { return gammas.size(); }
    SnrValue max() const noexcept;
};

SnrValue sample_rayleigh_snr(const AvgSnr& avg, RandomStream& rng);

StateRealizations sample_states(const AvgSnr& avg, unsigned states, RandomStream& rng);

/// Density of max{gamma_1..gamma_Q} for i.i.d. exponential gammas.
double max_state_pdf_exact(SnrValue gamma_max, const AvgSnr& avg, unsigned states);

/// Q gamma^{Q-1} e^{-gamma/avg} / avg^Q: the high-SNR dominant form of the
/// max density. Not normalized for Q > 1.
double max_state_pdf_dominant(SnrValue gamma_max, const AvgSnr& avg, unsigned states);

} // namespace rasense::channel
