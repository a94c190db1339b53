#pragma once

// Per-country CDN latency / access bandwidth table: loading, user-weighted
// averages, RTT under load, and placement against the switchover curve.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pi2lab/cc_models.hpp"
#include "pi2lab/errors.hpp"
#include "pi2lab/geometry.hpp"
#include "pi2lab/units.hpp"

namespace pi2lab {

/// Internet users worldwide in the year the bundled table was compiled;
/// the denominator for "share of Internet users".
inline constexpr std::uint64_t kWorldInternetUsers = 4'761'334'541ULL;

/// Mean of the CReno and Cubic below-average fractions (9/17 and 3/4), used
/// to shift a base RTT to an RTT under load.
inline const double kLambda0Mix = (lambda0_aimd_approx(0.7) + lambda0_cubic()) / 2.0;

inline const std::vector<std::string> kDatasetColumns{"country", "population", "pct_online",
                                                      "users",   "fixed_mbps", "cdn_latency_ms"};

struct CountryRecord {
    std::string name;
    std::uint64_t population = 0;
    double pct_online = 0.0; ///< fraction in [0, 1]
    std::uint64_t users = 0;
    double fixed_mbps = 0.0;
    double cdn_latency_ms = 0.0;
};

struct DatasetSummary {
    double weighted_rtt_ms = 0.0;
    double weighted_bw_mbps = 0.0;
    std::uint64_t total_users = 0;
    std::size_t countries = 0;
    std::vector<std::string> exclusions;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    for (auto& f : out) {
        const auto b = f.find_first_not_of(" \t");
        const auto e = f.find_last_not_of(" \t\r");
        f = b == std::string::npos ? std::string{} : f.substr(b, e - b + 1);
    }
    return out;
}

inline std::string where(std::size_t line, const std::string& column) {
    return "line " + std::to_string(line) + ", column '" + column + "'";
}

inline double parse_field_double(const std::string& text, std::size_t line, const std::string& column) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ValidationError(where(line, column) + ": not a number: '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v))
        throw ValidationError(where(line, column) + ": not a number: '" + text + "'");
    if (v < 0.0) throw ValidationError(where(line, column) + ": must be non-negative");
    return v;
}

inline std::uint64_t parse_field_count(const std::string& text, std::size_t line, const std::string& column) {
    std::string digits;
    for (char c : text)
        if (c != '_' && c != '\'') digits += c;
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ValidationError(where(line, column) + ": not a non-negative integer: '" + text + "'");
    try {
        return std::stoull(digits);
    } catch (const std::exception&) {
        throw ValidationError(where(line, column) + ": out of range: '" + text + "'");
    }
}

} // namespace detail

/// Parses dataset CSV text. The header row must name the six dataset columns
/// (any order). pct_online accepts a fraction or a percentage ("69.27%").
inline std::vector<CountryRecord> parse_dataset(std::istream& in) {
    std::vector<CountryRecord> out;
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::size_t> col; // index of each kDatasetColumns entry in the file
    bool have_header = false;

    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto fields = detail::split_csv_line(line);

        if (!have_header) {
            for (const auto& name : kDatasetColumns) {
                auto it = std::find(fields.begin(), fields.end(), name);
                if (it == fields.end())
                    throw ValidationError("line " + std::to_string(lineno) + ": header is missing column '" + name + "'");
                col.push_back(static_cast<std::size_t>(it - fields.begin()));
            }
            have_header = true;
            continue;
        }

        const std::size_t need = *std::max_element(col.begin(), col.end()) + 1;
        if (fields.size() < need)
            throw ValidationError("line " + std::to_string(lineno) + ": expected " + std::to_string(need) +
                                  " fields, found " + std::to_string(fields.size()));
        auto field = [&](std::size_t k) -> const std::string& { return fields[col[k]]; };

        CountryRecord r;
        r.name = field(0);
        if (r.name.empty()) throw ValidationError(detail::where(lineno, "country") + ": empty name");
        r.population = detail::parse_field_count(field(1), lineno, "population");
        {
            std::string pct = field(2);
            const bool percent = !pct.empty() && pct.back() == '%';
            if (percent) pct.pop_back();
            r.pct_online = detail::parse_field_double(pct, lineno, "pct_online") / (percent ? 100.0 : 1.0);
            if (r.pct_online > 1.0)
                throw ValidationError(detail::where(lineno, "pct_online") + ": must lie in [0, 1] (or 0-100%)");
        }
        r.users = detail::parse_field_count(field(3), lineno, "users");
        r.fixed_mbps = detail::parse_field_double(field(4), lineno, "fixed_mbps");
        r.cdn_latency_ms = detail::parse_field_double(field(5), lineno, "cdn_latency_ms");
        if (r.users > r.population)
            throw ValidationError(detail::where(lineno, "users") + ": users exceed population");
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<CountryRecord> load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open dataset '" + path + "'");
    try {
        return parse_dataset(in);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

/// 64-bit FNV-1a over a file's bytes, as 16 hex digits. Identifies the exact
/// dataset a report was computed from.
inline std::string file_fingerprint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
        h ^= static_cast<unsigned char>(*it);
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// User-weighted mean CDN latency and bandwidth, omitting the named countries.
inline DatasetSummary weighted_summary(const std::vector<CountryRecord>& records,
                                       const std::vector<std::string>& exclude = {}) {
    std::set<std::string> excl(exclude.begin(), exclude.end());
    for (const auto& name : excl) {
        const bool known = std::any_of(records.begin(), records.end(), [&](const auto& r) { return r.name == name; });
        detail::require(known, "excluded country '" + name + "' is not in the dataset");
    }

    DatasetSummary s;
    s.exclusions.assign(excl.begin(), excl.end());
    double rtt = 0.0;
    double bw = 0.0;
    for (const auto& r : records) {
        if (excl.count(r.name)) continue;
        const auto w = static_cast<double>(r.users);
        rtt += w * r.cdn_latency_ms;
        bw += w * r.fixed_mbps;
        s.total_users += r.users;
        ++s.countries;
    }
    if (s.total_users == 0) throw ValidationError("no users left to average over (empty selection)");
    s.weighted_rtt_ms = rtt / static_cast<double>(s.total_users);
    s.weighted_bw_mbps = bw / static_cast<double>(s.total_users);
    return s;
}

/// RTT under load in ms: the CDN latency plus lambda0_mix * target.
inline double under_load_rtt(const CountryRecord& record, double target, double lambda0_mix = kLambda0Mix) {
    detail::require(target >= 0.0 && std::isfinite(target), "target must be non-negative");
    detail::require(lambda0_mix >= 0.0 && lambda0_mix <= 1.0, "lambda0_mix must lie in [0, 1]");
    return record.cdn_latency_ms + 1e3 * lambda0_mix * target;
}

struct CountryPoint {
    std::string name;
    std::uint64_t users = 0;
    double fixed_mbps = 0.0;
    double rate_pps = 0.0;
    double rtt_loaded_ms = 0.0;
    double switchover_rtt_ms = 0.0;
    bool above = false; ///< pure-Cubic side of the curve; points on the curve count as below
};

struct SwitchoverClassification {
    std::vector<CountryPoint> points;

    /// Users above the curve, skipping the named countries.
    std::uint64_t users_above(const std::vector<std::string>& skip = {}) const {
        std::uint64_t u = 0;
        for (const auto& p : points)
            if (p.above && std::find(skip.begin(), skip.end(), p.name) == skip.end()) u += p.users;
        return u;
    }

    double share_above(const std::vector<std::string>& skip, std::uint64_t denominator) const {
        detail::require(denominator > 0, "share denominator must be positive");
        return static_cast<double>(users_above(skip)) / static_cast<double>(denominator);
    }
};

/// Places each country against the CReno/Cubic switchover curve using its
/// bandwidth (as a 1500 B packet rate) and its RTT under load.
inline SwitchoverClassification classify_switchover(const std::vector<CountryRecord>& records, double target,
                                                    double lambda0_mix = kLambda0Mix,
                                                    const CcParams& cubic = CcParams::cubic()) {
    SwitchoverClassification out;
    out.points.reserve(records.size());
    for (const auto& r : records) {
        CountryPoint p;
        p.name = r.name;
        p.users = r.users;
        p.fixed_mbps = r.fixed_mbps;
        p.rate_pps = mbps_to_pps(r.fixed_mbps);
        p.rtt_loaded_ms = under_load_rtt(r, target, lambda0_mix);
        p.switchover_rtt_ms = 1e3 * switchover_rtt(p.rate_pps, cubic);
        p.above = p.rtt_loaded_ms > p.switchover_rtt_ms;
        out.points.push_back(std::move(p));
    }
    return out;
}

inline void write_scatter_csv(std::ostream& os, const SwitchoverClassification& c) {
    os << "country,users,fixed_mbps,rtt_loaded_ms,above_curve\n";
    for (const auto& p : c.points)
        os << p.name << ',' << p.users << ',' << fixed(p.fixed_mbps, 2) << ',' << fixed(p.rtt_loaded_ms, 3) << ','
           << (p.above ? 1 : 0) << '\n';
}

inline void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& curve) {
    os << "rate_pps,rtt_ms\n";
    for (const auto& p : curve) os << fixed(p.rate_pps, 3) << ',' << fixed(p.rtt * 1e3, 6) << '\n';
}

} // namespace pi2lab
