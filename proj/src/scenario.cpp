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

#include "rasense/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "rasense/error.hpp"

namespace rasense::scenario {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
    throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

template <typename T>
T parse_integer(std::string_view key, std::string_view value) {
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) bad_value(key, value);
    return out;
}

double parse_real(std::string_view key, std::string_view value) {
    const std::string s(value);
    char* end = nullptr;
    const double out = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(out)) bad_value(key, value);
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    bad_value(key, value);
}

} // namespace

const char* to_string(RunMode mode) noexcept {
    switch (mode) {
    case RunMode::analytic: return "analytic";
    case RunMode::mc: return "mc";
    case RunMode::both: return "both";
    }
    return "both";
}

RunMode parse_mode(std::string_view text) {
    if (text == "analytic") return RunMode::analytic;
    if (text == "mc") return RunMode::mc;
    if (text == "both") return RunMode::both;
    throw ConfigError("mode must be analytic, mc or both, got '" + std::string(text) + "'");
}

simkit::Scheme parse_scheme(std::string_view text) {
    if (text == "noncoop") return simkit::Scheme::noncoop;
    if (text == "coop") return simkit::Scheme::coop;
    if (text == "switching") return simkit::Scheme::switching;
    if (text == "selection") return simkit::Scheme::selection;
    throw ConfigError("unknown scheme '" + std::string(text) + "'");
}

void Scenario::validate() const {
    if (samples == 0) throw ConfigError("M must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    if (scheme == simkit::Scheme::coop) {
        if (users == 0) throw ConfigError("N must be positive");
        if (votes == 0 || votes > users) throw ConfigError("n must lie in [1, N]");
    }
    if ((scheme == simkit::Scheme::switching || scheme == simkit::Scheme::selection) && states == 0)
        throw ConfigError("Q must be positive");
    if (!(snr_step_db > 0.0)) throw ConfigError("snr_step_db must be positive");
    if (snr_stop_db < snr_start_db) throw ConfigError("snr_stop_db must not precede snr_start_db");
    if (trials < 1000) throw ConfigError("trials must be at least 1000");
    if (trial_cap < trials) throw ConfigError("trial_cap must be at least trials");
}

std::vector<double> Scenario::grid() const {
    const auto count =
        static_cast<std::size_t>(std::floor((snr_stop_db - snr_start_db) / snr_step_db + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = snr_start_db + static_cast<double>(i) * snr_step_db;
    return out;
}

simkit::SchemeConfig Scenario::scheme_config() const {
    validate();
    const channel::AvgSnr avg = channel::AvgSnr::from_db(snr_start_db);
    try {
        switch (scheme) {
        case simkit::Scheme::noncoop:
            return {detector::DetectorParams::calibrated(samples, alpha), avg};
        case simkit::Scheme::coop:
            return {fusion::FusionParams::calibrated(users, votes, samples, alpha), avg};
        case simkit::Scheme::switching:
            return {reconfig::ReconfigParams::calibrated(states, samples, alpha,
                                                         reconfig::CsiMode::switching),
                    avg};
        case simkit::Scheme::selection:
            return {reconfig::ReconfigParams::calibrated(states, samples, alpha,
                                                         reconfig::CsiMode::selection),
                    avg};
        }
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown scheme");
}

simkit::SweepOptions Scenario::sweep_options() const {
    simkit::SweepOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    opt.monte_carlo = mode != RunMode::analytic;
    opt.analytic = mode != RunMode::mc;
    opt.escalation.enabled = escalate;
    opt.escalation.trial_cap = trial_cap;
    return opt;
}

Scenario parse(std::string_view text) {
    Scenario sc;
    std::map<std::string, std::string, std::less<>> kv;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        if (!kv.emplace(key, value).second) throw ConfigError("duplicate key '" + key + "'");
    }

    const auto schema = kv.find("schema");
    if (schema == kv.end()) throw ConfigError("missing key 'schema'");
    if (schema->second != kSchema)
        throw ConfigError("unsupported schema '" + schema->second + "'");
    if (!kv.contains("scheme")) throw ConfigError("missing key 'scheme'");

    for (const auto& [key, value] : kv) {
        if (key == "schema") continue;
        else if (key == "scheme") sc.scheme = parse_scheme(value);
        else if (key == "N") sc.users = parse_integer<unsigned>(key, value);
        else if (key == "n") sc.votes = parse_integer<unsigned>(key, value);
        else if (key == "M") sc.samples = parse_integer<unsigned>(key, value);
        else if (key == "Q") sc.states = parse_integer<unsigned>(key, value);
        else if (key == "alpha") sc.alpha = parse_real(key, value);
        else if (key == "snr_start_db") sc.snr_start_db = parse_real(key, value);
        else if (key == "snr_stop_db") sc.snr_stop_db = parse_real(key, value);
        else if (key == "snr_step_db") sc.snr_step_db = parse_real(key, value);
        else if (key == "trials") sc.trials = parse_integer<std::uint64_t>(key, value);
        else if (key == "seed") sc.seed = parse_integer<std::uint64_t>(key, value);
        else if (key == "output") sc.output = value;
        else if (key == "mode") sc.mode = parse_mode(value);
        else if (key == "escalate") sc.escalate = parse_bool(key, value);
        else if (key == "trial_cap") sc.trial_cap = parse_integer<std::uint64_t>(key, value);
        else throw ConfigError("unknown key '" + key + "'");
    }
    if (sc.scheme != simkit::Scheme::noncoop && !kv.contains("M"))
        throw ConfigError("missing key 'M'");
    if (sc.scheme == simkit::Scheme::coop && !kv.contains("N"))
        throw ConfigError("missing key 'N'");
    if ((sc.scheme == simkit::Scheme::switching || sc.scheme == simkit::Scheme::selection) &&
        !kv.contains("Q"))
        throw ConfigError("missing key 'Q'");
    sc.validate();
    return sc;
}

Scenario load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scenario file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string to_text(const Scenario& sc) {
    char buf[1024];
    std::snprintf(buf, sizeof buf,
                  "schema = %s\nscheme = %s\nN = %u\nn = %u\nM = %u\nQ = %u\nalpha = %.17g\n"
                  "snr_start_db = %.17g\nsnr_stop_db = %.17g\nsnr_step_db = %.17g\n"
                  "trials = %llu\nseed = %llu\nmode = %s\nescalate = %s\ntrial_cap = %llu\n",
                  std::string(kSchema).c_str(), simkit::to_string(sc.scheme), sc.users, sc.votes,
                  sc.samples, sc.states, sc.alpha, sc.snr_start_db, sc.snr_stop_db, sc.snr_step_db,
                  static_cast<unsigned long long>(sc.trials),
                  static_cast<unsigned long long>(sc.seed), to_string(sc.mode),
                  sc.escalate ? "true" : "false", static_cast<unsigned long long>(sc.trial_cap));
    std::string out = buf;
    if (!sc.output.empty()) out += "output = " + sc.output + "\n";
    return out;
}

} // namespace rasense::scenario
