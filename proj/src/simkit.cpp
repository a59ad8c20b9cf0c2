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

#include "rasense/simkit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "rasense/error.hpp"

namespace rasense::simkit {

namespace {

struct EnergyBlock {
    double variance;
    unsigned count;
};

// Decides whether sum_i -2 var_i ln U_i exceeds the threshold. Within a block
// the logs collapse into one log of a product of uniforms, and the trial
// stops as soon as the product crosses the level implied by the remaining
// budget. Products are folded into the running energy before they underflow.
bool energy_exceeds(RandomStream& rng, double threshold, std::span<const EnergyBlock> blocks) {
    constexpr double kFold = 1e-280;
    double energy = 0.0;
    for (const EnergyBlock& block : blocks) {
        const double scale = 2.0 * block.variance;
        double cut = std::exp(-(threshold - energy) / scale);
        double product = 1.0;
        for (unsigned i = 0; i < block.count; ++i) {
            product *= rng.uniform();
            if (product < cut) return true;
            if (product < kFold) {
                energy -= scale * std::log(product);
                product = 1.0;
                cut = std::exp(-(threshold - energy) / scale);
            }
        }
        energy -= scale * std::log(product);
    }
    return energy > threshold;
}

bool single_user(const detector::DetectorParams& p, double gamma, RandomStream& rng) {
    const EnergyBlock block{1.0 + gamma, p.samples};
    return energy_exceeds(rng, p.threshold, {&block, 1});
}

double h1_gamma(Hypothesis hyp, const channel::AvgSnr& avg, RandomStream& rng) {
    return hyp == Hypothesis::h1 ? channel::sample_rayleigh_snr(avg, rng).gamma : 0.0;
}

Decision trial_coop(const fusion::FusionParams& p, Hypothesis hyp, const channel::AvgSnr& avg,
                    RandomStream& rng) {
    unsigned votes = 0;
    for (unsigned u = 0; u < p.users; ++u) {
        const double gamma = h1_gamma(hyp, avg, rng);
        if (single_user(p.per_user, gamma, rng)) ++votes;
        if (votes >= p.votes) return Decision::present;
        if (votes + (p.users - u - 1) < p.votes) return Decision::absent;
    }
    return Decision::absent;
}

Decision trial_reconfig(const reconfig::ReconfigParams& p, Hypothesis hyp,
                        const channel::AvgSnr& avg, RandomStream& rng) {
    if (hyp == Hypothesis::h0) {
        const EnergyBlock block{1.0, p.samples};
        return energy_exceeds(rng, p.threshold, {&block, 1}) ? Decision::present
                                                               : Decision::absent;
    }
    const channel::StateRealizations states = channel::sample_states(avg, p.states, rng);
    if (p.mode == reconfig::CsiMode::selection) {
        const EnergyBlock block{1.0 + states.max().gamma, p.samples};
        return energy_exceeds(rng, p.threshold, {&block, 1}) ? Decision::present
                                                               : Decision::absent;
    }
    std::vector<EnergyBlock> blocks;
    blocks.reserve(p.alloc.size());
    for (std::size_t j = 0; j < p.alloc.size(); ++j)
        blocks.push_back({1.0 + states.gammas[j].gamma, p.alloc[j]});
    return energy_exceeds(rng, p.threshold, blocks) ? Decision::present : Decision::absent;
}

std::atomic<unsigned> g_worker_threads{0};

// Runs trials [first, first + count) and returns the number of events.
std::uint64_t count_events(const SchemeConfig& config, Hypothesis hyp, std::uint64_t first,
                           std::uint64_t count, std::uint64_t seed) {
    constexpr std::uint64_t kChunk = 1u << 15;
    const std::uint64_t chunks = (count + kChunk - 1) / kChunk;
    const Decision event = hyp == Hypothesis::h0 ? Decision::present : Decision::absent;
    std::vector<std::uint64_t> tallies(chunks, 0);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) {
            const std::uint64_t lo = first + c * kChunk;
            const std::uint64_t hi = first + std::min(count, (c + 1) * kChunk);
            std::uint64_t hits = 0;
            for (std::uint64_t t = lo; t < hi; ++t) {
                RandomStream rng(seed, t);
                if (run_trial(config, hyp, rng) == event) ++hits;
            }
            tallies[c] = hits;
        }
    };

    const unsigned hw = resolved_worker_threads();
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(hw, chunks));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    std::uint64_t total = 0;
    for (std::uint64_t v : tallies) total += v;
    return total;
}

} // namespace

void set_worker_threads(unsigned count) noexcept { g_worker_threads = count; }

unsigned resolved_worker_threads() noexcept {
    const unsigned n = g_worker_threads.load();
    return n != 0 ? n : std::max(1u, std::thread::hardware_concurrency());
}

const char* to_string(Scheme scheme) noexcept {
    switch (scheme) {
    case Scheme::noncoop: return "noncoop";
    case Scheme::coop: return "coop";
    case Scheme::switching: return "switching";
    case Scheme::selection: return "selection";
    }
    return "unknown";
}

Scheme SchemeConfig::scheme() const noexcept {
    if (std::holds_alternative<detector::DetectorParams>(payload)) return Scheme::noncoop;
    if (std::holds_alternative<fusion::FusionParams>(payload)) return Scheme::coop;
    const auto& r = std::get<reconfig::ReconfigParams>(payload);
    return r.mode == reconfig::CsiMode::selection ? Scheme::selection : Scheme::switching;
}

unsigned SchemeConfig::total_samples() const noexcept {
    if (const auto* d = std::get_if<detector::DetectorParams>(&payload)) return d->samples;
    if (const auto* f = std::get_if<fusion::FusionParams>(&payload))
        return f->users * f->per_user.samples;
    return std::get<reconfig::ReconfigParams>(payload).samples;
}

std::string SchemeConfig::label() const {
    char buf[96];
    if (const auto* d = std::get_if<detector::DetectorParams>(&payload)) {
        std::snprintf(buf, sizeof buf, "noncoop_M%u", d->samples);
    } else if (const auto* f = std::get_if<fusion::FusionParams>(&payload)) {
        std::snprintf(buf, sizeof buf, "coop_N%u_n%u_M%u", f->users, f->votes, f->per_user.samples);
    } else {
        const auto& r = std::get<reconfig::ReconfigParams>(payload);
        std::snprintf(buf, sizeof buf, "%s_Q%u_M%u", to_string(scheme()), r.states, r.samples);
    }
    return buf;
}

void SchemeConfig::validate() const {
    std::visit([](const auto& p) { p.validate(); }, payload);
}

SchemeConfig SchemeConfig::with_snr(channel::AvgSnr avg) const {
    SchemeConfig out = *this;
    out.avg_snr = avg;
    return out;
}

McEstimate make_estimate(std::uint64_t events, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw DomainError("estimate needs at least one trial");
    McEstimate e;
    e.trials = trials;
    e.events = events;
    e.seed = seed;
    e.value = static_cast<double>(events) / static_cast<double>(trials);
    e.ci_halfwidth = kZ99 * std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(trials));
    return e;
}

Decision run_trial(const SchemeConfig& config, Hypothesis hyp, RandomStream& rng) {
    if (const auto* d = std::get_if<detector::DetectorParams>(&config.payload)) {
        const double gamma = h1_gamma(hyp, config.avg_snr, rng);
        return single_user(*d, gamma, rng) ? Decision::present : Decision::absent;
    }
    if (const auto* f = std::get_if<fusion::FusionParams>(&config.payload))
        return trial_coop(*f, hyp, config.avg_snr, rng);
    return trial_reconfig(std::get<reconfig::ReconfigParams>(config.payload), hyp, config.avg_snr,
                          rng);
}

McEstimate estimate_point(const SchemeConfig& config, Hypothesis hyp, std::uint64_t trials,
                          std::uint64_t seed) {
    if (trials < 1000) throw DomainError("Monte Carlo estimates need at least 1000 trials");
    config.validate();
    return make_estimate(count_events(config, hyp, 0, trials, seed), trials, seed);
}

McEstimate estimate_point_escalating(const SchemeConfig& config, Hypothesis hyp,
                                     std::uint64_t trials, std::uint64_t seed,
                                     const EscalationPolicy& policy) {
    McEstimate est = estimate_point(config, hyp, trials, seed);
    if (!policy.enabled) return est;
    const double floor = static_cast<double>(policy.event_floor);
    const double cap = static_cast<double>(policy.trial_cap);
    while (est.events < policy.event_floor && est.trials * 10 <= policy.trial_cap) {
        const double ev = static_cast<double>(est.events);
        const double rate_hi = (ev + 3.0 * std::sqrt(ev + 1.0) + 3.0) / static_cast<double>(est.trials);
        if (rate_hi * cap < floor) break;
        const std::uint64_t more = est.trials * 9;
        const std::uint64_t extra = count_events(config, hyp, est.trials, more, seed);
        est = make_estimate(est.events + extra, est.trials + more, seed);
    }
    return est;
}

double analytic_pf(const SchemeConfig& config) {
    if (const auto* d = std::get_if<detector::DetectorParams>(&config.payload))
        return detector::pf_single(d->samples, d->threshold);
    if (const auto* f = std::get_if<fusion::FusionParams>(&config.payload))
        return fusion::global_pf(*f);
    const auto& r = std::get<reconfig::ReconfigParams>(config.payload);
    return detector::pf_single(r.samples, r.threshold);
}

double analytic_pmd(const SchemeConfig& config) {
    const channel::AvgSnr& avg = config.avg_snr;
    if (const auto* d = std::get_if<detector::DetectorParams>(&config.payload))
        return detector::avg_pmd_numeric(d->samples, d->threshold, avg);
    if (const auto* f = std::get_if<fusion::FusionParams>(&config.payload))
        return fusion::global_pmd(*f, avg);
    const auto& r = std::get<reconfig::ReconfigParams>(config.payload);
    if (r.mode == reconfig::CsiMode::selection)
        return reconfig::avg_pmd_selection(r.samples, r.threshold, avg, r.states);
    const double v = reconfig::avg_pmd_switching(r.alloc, reconfig::unit_energy_threshold(r.threshold),
                                                 avg, reconfig::AveragingMethod::quadrature);
    return std::min(1.0, v);
}

std::optional<double> SweepPoint::pmd() const {
    if (pmd_mc) return pmd_mc->value;
    return pmd_analytic;
}

SweepCurve sweep(const SchemeConfig& config, std::span<const double> snr_grid_db,
                 const SweepOptions& options) {
    config.validate();
    SweepCurve curve;
    curve.label = config.label();
    if (options.analytic) curve.pf_analytic = analytic_pf(config);
    if (options.monte_carlo)
        curve.pf_mc = estimate_point(config, Hypothesis::h0, options.trials, options.seed);
    for (double db : snr_grid_db) {
        const SchemeConfig at = config.with_snr(channel::AvgSnr::from_db(db));
        SweepPoint pt;
        pt.snr_db = db;
        if (options.analytic) pt.pmd_analytic = analytic_pmd(at);
        if (options.monte_carlo)
            pt.pmd_mc = estimate_point_escalating(at, Hypothesis::h1, options.trials, options.seed,
                                                  options.escalation);
        curve.points.push_back(pt);
    }
    return curve;
}

SlopeFit fit_diversity_slope(const SweepCurve& curve, std::pair<double, double> window_db,
                             std::uint64_t event_floor) {
    SlopeFit fit;
    fit.lo_db = window_db.first;
    fit.hi_db = window_db.second;
    std::vector<std::pair<double, double>> xy;
    char buf[128];
    for (const SweepPoint& pt : curve.points) {
        if (pt.snr_db < window_db.first || pt.snr_db > window_db.second) continue;
        if (pt.pmd_mc) {
            if (pt.pmd_mc->events == 0) {
                std::snprintf(buf, sizeof buf, "%.4g dB: zero events, excluded", pt.snr_db);
                fit.warnings.emplace_back(buf);
                continue;
            }
            if (pt.pmd_mc->events < event_floor) {
                std::snprintf(buf, sizeof buf, "%.4g dB: %llu events below floor %llu, excluded",
                              pt.snr_db, static_cast<unsigned long long>(pt.pmd_mc->events),
                              static_cast<unsigned long long>(event_floor));
                fit.warnings.emplace_back(buf);
                continue;
            }
        }
        const std::optional<double> v = pt.pmd();
        if (!v || !(*v > 0.0)) continue;
        xy.emplace_back(pt.snr_db / 10.0, std::log10(*v));
    }
    if (xy.size() < 3)
        throw NumericalError("diversity fit needs at least 3 usable points in the window");
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : xy) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(xy.size());
    my /= static_cast<double>(xy.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    fit.diversity = -sxy / sxx;
    fit.points_used = xy.size();
    return fit;
}

std::optional<std::pair<double, double>> slope_window(const SweepCurve& curve, double pmd_lo,
                                                      double pmd_hi, std::uint64_t event_floor) {
    std::optional<std::pair<double, double>> window;
    for (const SweepPoint& pt : curve.points) {
        if (pt.pmd_mc && pt.pmd_mc->events < event_floor) continue;
        const std::optional<double> v = pt.pmd();
        if (!v || *v < pmd_lo || *v > pmd_hi) continue;
        if (!window) window = std::pair{pt.snr_db, pt.snr_db};
        window->first = std::min(window->first, pt.snr_db);
        window->second = std::max(window->second, pt.snr_db);
    }
    return window;
}

} // namespace rasense::simkit
