#pragma once

// Unit conversions and unit-suffixed parsing/printing.
//
// Rates are carried internally in packets per second and times in seconds.
// Every bit-rate <-> packet-rate conversion assumes 1500 B packets.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

#include "pi2lab/errors.hpp"

namespace pi2lab {

inline constexpr double kPacketBytes = 1500.0;
inline constexpr double kPacketBits = kPacketBytes * 8.0;

constexpr double bits_to_pps(double bits_per_s) { return bits_per_s / kPacketBits; }
constexpr double pps_to_bits(double pps) { return pps * kPacketBits; }
constexpr double mbps_to_pps(double mbps) { return bits_to_pps(mbps * 1e6); }
constexpr double pps_to_mbps(double pps) { return pps_to_bits(pps) / 1e6; }

namespace detail {

struct NumberAndSuffix {
    double value;
    std::string suffix;
};

inline NumberAndSuffix split_number(std::string_view text, std::string_view what) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (s.empty()) throw ValidationError("empty " + std::string(what));

    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ValidationError("cannot parse " + std::string(what) + " '" + s + "'");
    }
    std::string suffix = s.substr(used);
    while (!suffix.empty() && std::isspace(static_cast<unsigned char>(suffix.front())))
        suffix.erase(suffix.begin());
    for (auto& c : suffix) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (!std::isfinite(v))
        throw ValidationError(std::string(what) + " '" + s + "' is not finite");
    return {v, suffix};
}

} // namespace detail

/// Parses a rate such as "100mbit", "4Mbit", "8333pps", "1.5gbit" into packets/s.
inline double parse_rate(std::string_view text) {
    auto [v, suffix] = detail::split_number(text, "rate");
    double pps = 0.0;
    if (suffix == "pps")
        pps = v;
    else if (suffix == "kpps")
        pps = v * 1e3;
    else if (suffix == "bit" || suffix == "bps")
        pps = bits_to_pps(v);
    else if (suffix == "kbit" || suffix == "kbps")
        pps = bits_to_pps(v * 1e3);
    else if (suffix == "mbit" || suffix == "mbps" || suffix == "mb/s")
        pps = bits_to_pps(v * 1e6);
    else if (suffix == "gbit" || suffix == "gbps" || suffix == "gb/s")
        pps = bits_to_pps(v * 1e9);
    else
        throw ValidationError("rate '" + std::string(text) +
                              "' needs a unit suffix (pps, kpps, bit, kbit, mbit, gbit)");
    if (!(pps > 0.0)) throw ValidationError("rate '" + std::string(text) + "' must be positive");
    return pps;
}

/// Parses a duration such as "15ms", "0.1s", "500us" into seconds.
inline double parse_time(std::string_view text) {
    auto [v, suffix] = detail::split_number(text, "time");
    if (v < 0.0) throw ValidationError("time '" + std::string(text) + "' must not be negative");
    if (suffix == "s") return v;
    if (suffix == "ms") return v * 1e-3;
    if (suffix == "us") return v * 1e-6;
    throw ValidationError("time '" + std::string(text) + "' needs a unit suffix (s, ms, us)");
}

inline std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

inline std::string format_ms(double seconds, int decimals = 3) {
    return fixed(seconds * 1e3, decimals) + " ms";
}

inline std::string format_s(double seconds, int decimals = 4) {
    return fixed(seconds, decimals) + " s";
}

inline std::string format_pps(double pps, int decimals = 2) { return fixed(pps, decimals) + " pps"; }

/// Rounds half away from zero to a fixed number of decimal places.
inline double round_to(double v, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(v * scale) / scale;
}

} // namespace pi2lab
