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

#include "rasense/experiment.hpp"

#include <cmath>
#include <cstdio>

#include "rasense/error.hpp"

namespace rasense::experiment {

namespace {

void append_number(std::string& out, std::optional<double> v) {
    out += ',';
    if (!v) return;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", *v);
    out += buf;
}

void append_integer(std::string& out, std::optional<std::uint64_t> v) {
    out += ',';
    if (v) out += std::to_string(*v);
}

double analytic_diversity(const simkit::SchemeConfig& config) {
    if (std::holds_alternative<detector::DetectorParams>(config.payload)) return 1.0;
    if (const auto* f = std::get_if<fusion::FusionParams>(&config.payload))
        return fusion::gains_coop(*f).diversity;
    const auto& r = std::get<reconfig::ReconfigParams>(config.payload);
    return reconfig::diversity_reconfig(r.samples, r.states, r.mode).diversity;
}

} // namespace

Figure parse_figure(std::string_view text) {
    if (text == "fig1") return Figure::fig1;
    if (text == "fig2") return Figure::fig2;
    if (text == "fig3") return Figure::fig3;
    throw ConfigError("figure must be fig1, fig2 or fig3, got '" + std::string(text) + "'");
}

double figure_alpha(Figure which) noexcept { return which == Figure::fig1 ? 0.01 : 0.05; }

std::vector<simkit::SchemeConfig> figure_configs(Figure which) {
    const double alpha = figure_alpha(which);
    const channel::AvgSnr avg{1.0};
    std::vector<simkit::SchemeConfig> out;
    if (which == Figure::fig1) {
        for (unsigned root : {2u, 5u, 10u}) {
            out.push_back({detector::DetectorParams::calibrated(root * root, alpha), avg});
            out.push_back({fusion::FusionParams::calibrated(root, 1, root, alpha), avg});
        }
        return out;
    }
    using reconfig::CsiMode;
    using reconfig::ReconfigParams;
    out.push_back({detector::DetectorParams::calibrated(100, alpha), avg});
    out.push_back({fusion::FusionParams::calibrated(10, 1, 10, alpha), avg});
    out.push_back({ReconfigParams::calibrated(10, 100, alpha, CsiMode::switching), avg});
    out.push_back({ReconfigParams::calibrated(10, 100, alpha, CsiMode::selection), avg});
    if (which == Figure::fig3) {
        const unsigned reduced = reconfig::reduced_samples(100, 10);
        out.push_back({ReconfigParams::calibrated(10, reduced, alpha, CsiMode::selection), avg});
        if (reduced != 33)
            out.push_back({ReconfigParams::calibrated(10, 33, alpha, CsiMode::selection), avg});
    }
    return out;
}

void append_csv(std::string& out, const simkit::SweepCurve& curve) {
    const std::optional<double> pf_mc =
        curve.pf_mc ? std::optional(curve.pf_mc->value) : std::nullopt;
    const std::optional<double> pf_ci =
        curve.pf_mc ? std::optional(curve.pf_mc->ci_halfwidth) : std::nullopt;
    for (const simkit::SweepPoint& pt : curve.points) {
        out += curve.label;
        append_number(out, pt.snr_db);
        append_number(out, curve.pf_analytic);
        append_number(out, pt.pmd_analytic);
        append_number(out, pf_mc);
        append_number(out, pf_ci);
        if (pt.pmd_mc) {
            append_number(out, pt.pmd_mc->value);
            append_number(out, pt.pmd_mc->ci_halfwidth);
            append_integer(out, pt.pmd_mc->trials);
            append_integer(out, pt.pmd_mc->seed);
        } else {
            out += ",,,,";
        }
        out += '\n';
    }
}

std::string to_csv(std::span<const simkit::SweepCurve> curves) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& c : curves) append_csv(out, c);
    return out;
}

std::vector<simkit::SweepCurve> run_figure(Figure which, std::span<const double> grid_db,
                                           const simkit::SweepOptions& options) {
    std::vector<simkit::SweepCurve> curves;
    for (const simkit::SchemeConfig& config : figure_configs(which))
        curves.push_back(simkit::sweep(config, grid_db, options));
    return curves;
}

std::string figure_csv(Figure which, const scenario::Scenario& settings) {
    settings.validate();
    const std::vector<double> grid = settings.grid();
    const auto curves = run_figure(which, grid, settings.sweep_options());
    return to_csv(curves);
}

std::string sweep_csv(const scenario::Scenario& sc) {
    const std::vector<double> grid = sc.grid();
    const simkit::SweepCurve curve = simkit::sweep(sc.scheme_config(), grid, sc.sweep_options());
    return to_csv({&curve, 1});
}

CalibrationRow calibrate(const simkit::SchemeConfig& config, std::uint64_t smoke_trials,
                         std::uint64_t seed) {
    CalibrationRow row;
    row.label = config.label();
    if (const auto* d = std::get_if<detector::DetectorParams>(&config.payload)) {
        row.alpha = d->alpha;
        row.threshold = d->threshold;
    } else if (const auto* f = std::get_if<fusion::FusionParams>(&config.payload)) {
        row.alpha = f->per_user.alpha;
        row.threshold = f->per_user.threshold;
        row.local_pf = detector::pf_single(f->per_user.samples, f->per_user.threshold);
    } else {
        const auto& r = std::get<reconfig::ReconfigParams>(config.payload);
        row.alpha = r.alpha;
        row.threshold = r.threshold;
    }
    row.pf_analytic = simkit::analytic_pf(config);
    row.pf_mc = simkit::estimate_point(config, simkit::Hypothesis::h0, smoke_trials, seed);
    const double sigma =
        std::sqrt(row.alpha * (1.0 - row.alpha) / static_cast<double>(smoke_trials));
    row.ok = std::abs(row.pf_analytic - row.alpha) <= 1e-9 * row.alpha &&
             std::abs(row.pf_mc.value - row.alpha) <= 4.0 * sigma;
    return row;
}

std::string format_calibration(std::span<const CalibrationRow> rows) {
    std::string out;
    char buf[512];
    for (const CalibrationRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%-22s alpha=%-6.4g lambda=%.10g", r.label.c_str(), r.alpha,
                      r.threshold);
        out += buf;
        if (r.local_pf) {
            std::snprintf(buf, sizeof buf, " local_pf=%.8g", *r.local_pf);
            out += buf;
        }
        std::snprintf(buf, sizeof buf, " pf_analytic=%.10g pf_mc=%.6g+-%.2g (%llu trials) %s\n",
                      r.pf_analytic, r.pf_mc.value, r.pf_mc.ci_halfwidth,
                      static_cast<unsigned long long>(r.pf_mc.trials), r.ok ? "ok" : "FAILED");
        out += buf;
    }
    return out;
}

SlopeReport slope(const scenario::Scenario& sc) {
    const simkit::SchemeConfig config = sc.scheme_config();
    const std::vector<double> grid = sc.grid();
    SlopeReport report;
    report.label = config.label();
    report.analytic_diversity = analytic_diversity(config);

    simkit::SweepOptions opt = sc.sweep_options();
    const bool want_mc = opt.monte_carlo;
    const bool want_analytic = opt.analytic;
    auto fit = [&](const simkit::SweepCurve& curve) {
        const auto window = simkit::slope_window(curve);
        if (!window)
            throw NumericalError("no grid point of " + curve.label +
                                 " has P_md in [1e-5, 1e-2]; widen the SNR grid");
        return simkit::fit_diversity_slope(curve, *window);
    };
    if (want_analytic) {
        opt.monte_carlo = false;
        opt.analytic = true;
        report.analytic_fit = fit(simkit::sweep(config, grid, opt));
    }
    if (want_mc) {
        opt.monte_carlo = true;
        opt.analytic = false;
        report.mc_fit = fit(simkit::sweep(config, grid, opt));
    }
    return report;
}

std::string format_slope(const SlopeReport& r) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s: analytic diversity d = %.6g\n", r.label.c_str(),
                  r.analytic_diversity);
    out += buf;
    auto line = [&](const char* name, const simkit::SlopeFit& f) {
        std::snprintf(buf, sizeof buf,
                      "  %-8s fitted slope = %.4f over [%.4g, %.4g] dB (%zu points)\n", name,
                      f.diversity, f.lo_db, f.hi_db, f.points_used);
        out += buf;
        for (const std::string& w : f.warnings) out += "    warning: " + w + "\n";
    };
    if (r.analytic_fit) line("analytic", *r.analytic_fit);
    if (r.mc_fit) line("mc", *r.mc_fit);
    return out;
}

} // namespace rasense::experiment
