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

#include <cmath>
#include <vector>

#include <doctest.h>

#include "rasense/error.hpp"
#include "rasense/simkit.hpp"

using namespace rasense;
using namespace rasense::simkit;
using channel::AvgSnr;
using doctest::Approx;

namespace {

SchemeConfig noncoop(unsigned m, double alpha, double avg = 1.0) {
    return {detector::DetectorParams::calibrated(m, alpha), AvgSnr(avg)};
}
SchemeConfig coop(unsigned n_users, unsigned votes, unsigned m, double alpha, double avg = 1.0) {
    return {fusion::FusionParams::calibrated(n_users, votes, m, alpha), AvgSnr(avg)};
}
SchemeConfig reconf(unsigned q, unsigned m, double alpha, reconfig::CsiMode mode, double avg = 1.0) {
    return {reconfig::ReconfigParams::calibrated(q, m, alpha, mode), AvgSnr(avg)};
}

std::vector<SchemeConfig> all_schemes(double avg) {
    return {noncoop(20, 0.05, avg), coop(4, 2, 5, 0.05, avg),
            reconf(4, 20, 0.05, reconfig::CsiMode::switching, avg),
            reconf(4, 20, 0.05, reconfig::CsiMode::selection, avg)};
}

// |a - b| within z combined binomial standard errors.
bool agree(const McEstimate& a, const McEstimate& b, double z) {
    const double va = a.value * (1 - a.value) / static_cast<double>(a.trials);
    const double vb = b.value * (1 - b.value) / static_cast<double>(b.trials);
    return std::abs(a.value - b.value) <= z * std::sqrt(va + vb);
}

bool agree(const McEstimate& a, double p, double z) {
    return std::abs(a.value - p) <= z * std::sqrt(p * (1 - p) / static_cast<double>(a.trials));
}

struct ThreadGuard {
    ~ThreadGuard() { set_worker_threads(0); }
};

} // namespace

TEST_SUITE("simkit") {

TEST_CASE("labels and totals") {
    CHECK(noncoop(100, 0.05).label() == "noncoop_M100");
    CHECK(coop(10, 1, 10, 0.05).label() == "coop_N10_n1_M10");
    CHECK(reconf(10, 100, 0.05, reconfig::CsiMode::switching).label() == "switching_Q10_M100");
    CHECK(reconf(10, 35, 0.05, reconfig::CsiMode::selection).label() == "selection_Q10_M35");
    CHECK(coop(10, 1, 10, 0.05).total_samples() == 100u);
    CHECK(reconf(10, 35, 0.05, reconfig::CsiMode::selection).total_samples() == 35u);
    CHECK(coop(3, 2, 4, 0.05).scheme() == Scheme::coop);
    CHECK(std::string(to_string(Scheme::selection)) == "selection");
    CHECK(noncoop(5, 0.05).with_snr(AvgSnr(7.0)).avg_snr.linear() == 7.0);
}

TEST_CASE("estimate bookkeeping") {
    const auto e = make_estimate(50, 1000, 9);
    CHECK(e.value == 0.05);
    CHECK(e.ci_halfwidth == Approx(kZ99 * std::sqrt(0.05 * 0.95 / 1000)));
    CHECK(e.lower() < 0.05);
    CHECK(e.upper() > 0.05);
    CHECK(e.seed == 9u);
    CHECK_THROWS_AS(estimate_point(noncoop(4, 0.05), Hypothesis::h0, 999, 1), DomainError);
}

TEST_CASE("bit-identical across thread counts") {
    ThreadGuard guard;
    for (const auto& cfg : all_schemes(3.0)) {
        for (Hypothesis hyp : {Hypothesis::h0, Hypothesis::h1}) {
            // 100'001 trials: four chunks, the last one partial.
            set_worker_threads(1);
            const auto one = estimate_point(cfg, hyp, 100'001, 42);
            set_worker_threads(3);
            const auto three = estimate_point(cfg, hyp, 100'001, 42);
            set_worker_threads(8);
            const auto eight = estimate_point(cfg, hyp, 100'001, 42);
            INFO(cfg.label());
            CHECK(one.events == three.events);
            CHECK(one.events == eight.events);
        }
    }
}

TEST_CASE("seeds reproduce and differ") {
    const auto cfg = noncoop(10, 0.05, 2.0);
    const auto a = estimate_point(cfg, Hypothesis::h1, 50'000, 5);
    const auto b = estimate_point(cfg, Hypothesis::h1, 50'000, 5);
    const auto c = estimate_point(cfg, Hypothesis::h1, 50'000, 6);
    CHECK(a.events == b.events);
    CHECK(a.events != c.events);
    CHECK(agree(a, c, 4.0));
}

TEST_CASE("empirical false-alarm rate matches the design value") {
    for (const auto& cfg : all_schemes(1.0)) {
        const auto e = estimate_point(cfg, Hypothesis::h0, 200'000, 11);
        INFO(cfg.label() << " pf_mc=" << e.value);
        CHECK(analytic_pf(cfg) == Approx(0.05).epsilon(1e-9));
        CHECK(agree(e, 0.05, 3.0));
    }
}

TEST_CASE("miss probability against the analytic forms") {
    for (double avg : {0.3, 3.0, 30.0}) {
        for (const auto& cfg : {noncoop(20, 0.05, avg), coop(4, 2, 5, 0.05, avg),
                                reconf(4, 20, 0.05, reconfig::CsiMode::selection, avg)}) {
            const auto e = estimate_point(cfg, Hypothesis::h1, 200'000, 12);
            const double p = analytic_pmd(cfg);
            INFO(cfg.label() << " avg=" << avg << " mc=" << e.value << " analytic=" << p);
            CHECK(agree(e, p, 3.0));
        }
    }
}

TEST_CASE("degenerate configurations") {
    // One user voting alone is the single-user detector.
    const auto solo = coop(1, 1, 10, 0.05, 4.0);
    const auto single = noncoop(10, 0.05, 4.0);
    CHECK(analytic_pmd(solo) == Approx(analytic_pmd(single)).epsilon(1e-10));
    CHECK(agree(estimate_point(solo, Hypothesis::h1, 100'000, 3),
                estimate_point(single, Hypothesis::h1, 100'000, 4), 3.0));

    // One antenna state is the single-user detector too.
    for (auto mode : {reconfig::CsiMode::switching, reconfig::CsiMode::selection}) {
        const auto q1 = reconf(1, 10, 0.05, mode, 4.0);
        INFO(to_string(q1.scheme()));
        CHECK(agree(estimate_point(q1, Hypothesis::h1, 100'000, 5),
                    estimate_point(single, Hypothesis::h1, 100'000, 6), 3.0));
    }
    CHECK(analytic_pmd(reconf(1, 10, 0.05, reconfig::CsiMode::selection, 4.0)) ==
          Approx(analytic_pmd(single)).epsilon(1e-9));
}

TEST_CASE("sweep curves") {
    const std::vector<double> grid{-10, -5, 0, 5, 10};
    SweepOptions opt;
    opt.trials = 20'000;
    opt.seed = 3;
    opt.escalation.enabled = false;
    for (const auto& cfg : all_schemes(1.0)) {
        const auto curve = sweep(cfg, grid, opt);
        INFO(curve.label);
        REQUIRE(curve.points.size() == grid.size());
        REQUIRE(curve.pf_mc.has_value());
        REQUIRE(curve.pf_analytic.has_value());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(curve.points[i].snr_db == grid[i]);
            REQUIRE(curve.points[i].pmd_mc.has_value());
            REQUIRE(curve.points[i].pmd_analytic.has_value());
            CHECK(curve.points[i].pmd_mc->trials == 20'000u);
            if (i > 0) CHECK(curve.points[i].pmd_mc->events <= curve.points[i - 1].pmd_mc->events);
        }
    }

    opt.monte_carlo = false;
    const auto analytic_only = sweep(noncoop(4, 0.05), grid, opt);
    CHECK_FALSE(analytic_only.pf_mc.has_value());
    CHECK_FALSE(analytic_only.points[0].pmd_mc.has_value());
    CHECK(analytic_only.points[0].pmd() == analytic_only.points[0].pmd_analytic);
    opt.monte_carlo = true;
    opt.analytic = false;
    const auto mc_only = sweep(noncoop(4, 0.05), grid, opt);
    CHECK_FALSE(mc_only.pf_analytic.has_value());
    CHECK_FALSE(mc_only.points[0].pmd_analytic.has_value());
}

TEST_CASE("escalation") {
    const auto cfg = noncoop(4, 0.05, 100.0);
    EscalationPolicy policy;
    const auto grown = estimate_point_escalating(cfg, Hypothesis::h1, 1000, 8, policy);
    CHECK(grown.trials > 1000u);
    CHECK(grown.events >= policy.event_floor);
    // The first 1000 trials are kept.
    const auto base = estimate_point(cfg, Hypothesis::h1, 1000, 8);
    const auto next = estimate_point(cfg, Hypothesis::h1, 10'000, 8);
    CHECK(next.events >= base.events);

    policy.enabled = false;
    CHECK(estimate_point_escalating(cfg, Hypothesis::h1, 1000, 8, policy).trials == 1000u);

    // Floor unreachable within the cap: stop without spending it.
    policy.enabled = true;
    policy.trial_cap = 1'000'000;
    const auto hopeless = estimate_point_escalating(coop(10, 1, 10, 0.05, 1e3), Hypothesis::h1,
                                                    1000, 8, policy);
    CHECK(hopeless.trials < policy.trial_cap);
    CHECK(hopeless.events == 0u);
}

TEST_CASE("diversity slope fit") {
    const std::vector<double> grid{10, 15, 20, 25, 30};
    SweepOptions opt;
    opt.monte_carlo = false;
    const auto curve = sweep(noncoop(10, 0.05), grid, opt);
    const auto fit = fit_diversity_slope(curve, {15.0, 30.0});
    CHECK(fit.points_used == 4u);
    CHECK(fit.diversity == Approx(1.0).epsilon(0.05));
    CHECK_THROWS_AS(fit_diversity_slope(curve, {25.0, 30.0}), NumericalError);

    SweepCurve sparse;
    const std::uint64_t events[] = {1000, 500, 250, 0};
    for (int i = 0; i < 4; ++i) {
        SweepPoint pt;
        pt.snr_db = 5.0 * i;
        pt.pmd_mc = make_estimate(events[i], 10'000, 1);
        sparse.points.push_back(pt);
    }
    const auto sfit = fit_diversity_slope(sparse, {0.0, 15.0});
    CHECK(sfit.points_used == 3u);
    CHECK(sfit.warnings.size() == 1u);
    CHECK(fit_diversity_slope(sparse, {0.0, 15.0}, 200).warnings.size() == 1u);
    CHECK_THROWS_AS(fit_diversity_slope(sparse, {0.0, 15.0}, 300), NumericalError);

    const auto window = slope_window(curve, 1e-3, 1e-1);
    REQUIRE(window.has_value());
    CHECK(window->first <= window->second);
    CHECK_FALSE(slope_window(curve, 1e-30, 1e-29).has_value());
}

} // TEST_SUITE
