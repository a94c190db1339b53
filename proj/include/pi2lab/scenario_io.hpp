#pragma once

// Scenario files and trace export.
//
// A scenario file is flat `key = value` lines; `#` starts a comment.
//
//   link_rate = 4mbit          # or pps
//   base_rtt = 10ms
//   duration = 120s
//   target = 15ms              # tupdate, rmax likewise; alpha/beta derive from them unless given
//   mark_model = deterministic # or bernoulli
//   seed = 7
//   flow = creno               # repeat per flow: <reno|creno|cubic> [a=] [b=] [C=] [window=] [hybrid]
//
// Without any `flow` line the scenario has no flows.

#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pi2lab/errors.hpp"
#include "pi2lab/sim_engine.hpp"
#include "pi2lab/units.hpp"

namespace pi2lab {

struct ScenarioEntry {
    std::string key;
    std::string value;
    std::string origin; ///< "file:line" or "override"
};

inline const std::vector<std::string>& scenario_keys() {
    static const std::vector<std::string> keys{"link_rate", "base_rtt", "duration", "dt",     "sample_interval",
                                               "seed",      "mark_model", "lagged_queue", "target", "tupdate",
                                               "rmax",      "alpha",    "beta",     "p_max",  "flow"};
    return keys;
}

namespace detail {

inline std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_plain(const std::string& v, const std::string& what) {
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ValidationError(what + ": not a number: '" + v + "'");
    }
    if (used != v.size() || !std::isfinite(d)) throw ValidationError(what + ": not a number: '" + v + "'");
    return d;
}

inline bool parse_bool(const std::string& v, const std::string& what) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ValidationError(what + ": expected true or false, got '" + v + "'");
}

inline FlowConfig parse_flow(const std::string& spec, const std::string& origin) {
    std::istringstream in(spec);
    std::string word;
    if (!(in >> word)) throw ValidationError(origin + ": empty flow");
    FlowConfig f;
    try {
        f.cc = CcParams::defaults_for(parse_cc_mode(word));
    } catch (const ValidationError& e) {
        throw ValidationError(origin + ": " + e.what());
    }
    bool a_given = false;
    while (in >> word) {
        if (word == "hybrid") {
            f.hybrid = true;
            continue;
        }
        const auto eq = word.find('=');
        if (eq == std::string::npos) throw ValidationError(origin + ": unexpected flow option '" + word + "'");
        const std::string k = word.substr(0, eq);
        const std::string v = word.substr(eq + 1);
        const std::string what = origin + ": flow option " + k;
        if (k == "a") {
            f.cc.a = parse_plain(v, what);
            a_given = true;
        } else if (k == "b") {
            f.cc.b = parse_plain(v, what);
        } else if (k == "C") {
            f.cc.C = parse_plain(v, what);
        } else if (k == "window") {
            f.initial_window = parse_plain(v, what);
        } else {
            throw ValidationError(origin + ": unknown flow option '" + k + "' (a, b, C, window, hybrid)");
        }
    }
    // A changed b moves the Reno-friendly increase with it unless a is pinned.
    if (!a_given && f.cc.mode != CcMode::Reno) f.cc.a = reno_friendly_increase(f.cc.b);
    try {
        f.cc.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(origin + ": " + e.what());
    }
    return f;
}

} // namespace detail

inline std::vector<ScenarioEntry> parse_scenario_text(std::istream& in, const std::string& name = "scenario") {
    std::vector<ScenarioEntry> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const std::string origin = name + ":" + std::to_string(lineno);
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ValidationError(origin + ": expected 'key = value'");
        out.push_back({detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)), origin});
    }
    return out;
}

inline std::vector<ScenarioEntry> load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario '" + path + "'");
    return parse_scenario_text(in, path);
}

/// Parses a `key=value` override. A `flow` override replaces the file's flows.
inline ScenarioEntry parse_override(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ValidationError("override '" + text + "' must look like key=value");
    return {detail::trim(text.substr(0, eq)), detail::trim(text.substr(eq + 1)), "override"};
}

/// Builds a scenario from entries; later entries win, except that `flow`
/// entries accumulate (and a `flow` override resets the list first).
inline SimScenario build_scenario(const std::vector<ScenarioEntry>& entries) {
    SimScenario sc;
    sc.flows.clear();
    bool alpha_given = false;
    bool beta_given = false;
    bool flows_overridden = false;

    for (const auto& e : entries) {
        const std::string what = e.origin + ": " + e.key;
        auto time = [&] {
            try {
                return parse_time(e.value);
            } catch (const ValidationError& err) {
                throw ValidationError(what + ": " + err.what());
            }
        };
        if (e.key == "link_rate") {
            try {
                sc.link_rate = parse_rate(e.value);
            } catch (const ValidationError& err) {
                throw ValidationError(what + ": " + err.what());
            }
        } else if (e.key == "base_rtt") {
            sc.base_rtt = time();
        } else if (e.key == "duration") {
            sc.duration = time();
        } else if (e.key == "dt") {
            sc.dt = time();
        } else if (e.key == "sample_interval") {
            sc.sample_interval = time();
        } else if (e.key == "seed") {
            try {
                std::size_t used = 0;
                sc.seed = std::stoull(e.value, &used);
                if (used != e.value.size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ValidationError(what + ": expected an unsigned integer, got '" + e.value + "'");
            }
        } else if (e.key == "mark_model") {
            try {
                sc.mark_model = parse_mark_model(e.value);
            } catch (const ValidationError& err) {
                throw ValidationError(what + ": " + err.what());
            }
        } else if (e.key == "lagged_queue") {
            sc.lagged_queue = detail::parse_bool(e.value, what);
        } else if (e.key == "target") {
            sc.aqm.target = time();
        } else if (e.key == "tupdate") {
            sc.aqm.tupdate = time();
        } else if (e.key == "rmax") {
            sc.aqm.rmax = time();
        } else if (e.key == "alpha") {
            sc.aqm.alpha = detail::parse_plain(e.value, what);
            alpha_given = true;
        } else if (e.key == "beta") {
            sc.aqm.beta = detail::parse_plain(e.value, what);
            beta_given = true;
        } else if (e.key == "p_max") {
            sc.aqm.p_max = detail::parse_plain(e.value, what);
        } else if (e.key == "flow") {
            if (e.origin == "override" && !flows_overridden) {
                sc.flows.clear();
                flows_overridden = true;
            }
            if (e.value != "none") sc.flows.push_back(detail::parse_flow(e.value, e.origin));
        } else {
            throw ValidationError(e.origin + ": unknown key '" + e.key + "'");
        }
    }
    const auto gains = default_gains(sc.aqm.tupdate, sc.aqm.rmax);
    if (!alpha_given) sc.aqm.alpha = gains.alpha;
    if (!beta_given) sc.aqm.beta = gains.beta;
    return sc;
}

/// Trace rows: one per flow per sample. A run without flows writes flow_id -1.
inline void write_trace_csv(std::ostream& os, const SimTrace& trace) {
    os << "t,flow_id,window_pkts,qdelay_s,p_base,p_drop,marks_cum\n";
    char buf[256];
    for (const auto& s : trace.samples) {
        if (s.flows.empty()) {
            std::snprintf(buf, sizeof buf, "%.6f,-1,0,%.9f,%.9g,%.9g,0\n", s.t, s.qdelay, s.p_base, s.p_drop);
            os << buf;
            continue;
        }
        for (std::size_t i = 0; i < s.flows.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.6f,%zu,%.6f,%.9f,%.9g,%.9g,%llu\n", s.t, i, s.flows[i].window, s.qdelay,
                          s.p_base, s.p_drop, static_cast<unsigned long long>(s.flows[i].marks_cum));
            os << buf;
        }
    }
}

} // namespace pi2lab
