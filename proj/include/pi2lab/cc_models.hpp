#pragma once

// Closed-form congestion-controller models: window shapes, steady-state
// packet rates and the CReno/Cubic switchover curve.
//
// Windows are in packets (fractional is fine), rates in packets/s and
// times in seconds. All functions are pure.

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "pi2lab/errors.hpp"

namespace pi2lab {

enum class CcMode { Reno, CReno, Cubic };

inline std::string_view to_string(CcMode m) {
    switch (m) {
    case CcMode::Reno: return "reno";
    case CcMode::CReno: return "creno";
    case CcMode::Cubic: return "cubic";
    }
    return "?";
}

inline CcMode parse_cc_mode(std::string_view name) {
    std::string s(name);
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "reno") return CcMode::Reno;
    if (s == "creno") return CcMode::CReno;
    if (s == "cubic") return CcMode::Cubic;
    throw ValidationError("unknown congestion control '" + std::string(name) +
                          "' (expected reno, creno or cubic)");
}

/// Additive increase that makes an AIMD flow with decrease factor b
/// Reno-friendly: 3(1-b)/(1+b). Gives 9/17 for b = 0.7.
template <class T>
T reno_friendly_increase(T b) {
    return T(3) * (T(1) - b) / (T(1) + b);
}

struct CcParams {
    CcMode mode = CcMode::Reno;
    double a = 1.0; ///< additive increase, segments per round
    double b = 0.5; ///< multiplicative decrease factor
    double C = 0.4; ///< cubic aggressiveness, segments/s^3

    static CcParams reno() { return {CcMode::Reno, 1.0, 0.5, 0.4}; }
    static CcParams creno(double b = 0.7) { return {CcMode::CReno, reno_friendly_increase(b), b, 0.4}; }
    static CcParams cubic(double b = 0.7, double C = 0.4) { return {CcMode::Cubic, reno_friendly_increase(b), b, C}; }
    static CcParams defaults_for(CcMode m) {
        switch (m) {
        case CcMode::Reno: return reno();
        case CcMode::CReno: return creno();
        case CcMode::Cubic: return cubic();
        }
        return reno();
    }

    bool is_aimd() const { return mode != CcMode::Cubic; }

    void validate() const {
        detail::require(b > 0.0 && b < 1.0, "decrease factor b must lie in (0, 1)");
        detail::require(a > 0.0 && std::isfinite(a), "additive increase a must be positive");
        detail::require(C > 0.0 && std::isfinite(C), "cubic constant C must be positive");
    }
};

/// The RTT of one sawtooth cycle split into base delay and queue delay.
/// R(t) = base_rtt + q(t); d_max = r_max - r_min = q_max - q_min.
struct RttDecomposition {
    double base_rtt = 0.0;
    double q = 0.0;
    double q_min = 0.0;
    double q_max = 0.0;
    double q_0 = 0.0;
    double r_min = 0.0;
    double r_max = 0.0;
    double r_0 = 0.0;
    double d_max = 0.0;

    static RttDecomposition from_queue(double base_rtt, double q_min, double q_0, double q_max) {
        detail::require(base_rtt > 0.0, "base RTT must be positive");
        detail::require(q_min >= 0.0 && q_min <= q_0 && q_0 <= q_max,
                        "queue delays must satisfy 0 <= q_min <= q_0 <= q_max");
        RttDecomposition d;
        d.base_rtt = base_rtt;
        d.q = q_0;
        d.q_min = q_min;
        d.q_0 = q_0;
        d.q_max = q_max;
        d.r_min = base_rtt + q_min;
        d.r_0 = base_rtt + q_0;
        d.r_max = base_rtt + q_max;
        d.d_max = q_max - q_min;
        return d;
    }

    double rtt() const { return base_rtt + q; }
    double lambda0() const { return d_max > 0.0 ? (r_0 - r_min) / d_max : 0.0; }
};

namespace detail {

inline void check_rate_inputs(double p, double rtt) {
    require(p > 0.0 && p <= 1.0, "drop probability must lie in (0, 1]");
    require(rtt > 0.0 && std::isfinite(rtt), "RTT must be positive");
}

} // namespace detail

/// Steady-state packet rate of Reno-mode AIMD: (1/R) sqrt(3 / 2p).
inline double rate_creno(double p, double rtt) {
    detail::check_rate_inputs(p, rtt);
    return std::sqrt(3.0 / (2.0 * p)) / rtt;
}

/// Steady-state packet rate of pure Cubic: (C(3+b) / (4(1-b) p^3 R))^(1/4).
inline double rate_cubic(double p, double rtt, const CcParams& params) {
    detail::check_rate_inputs(p, rtt);
    params.validate();
    detail::require(params.mode == CcMode::Cubic, "rate_cubic needs cubic-mode parameters");
    const double b = params.b;
    return std::pow(params.C * (3.0 + b) / (4.0 * (1.0 - b) * p * p * p * rtt), 0.25);
}

/// Drop probability at which Reno-mode AIMD runs at rate r over RTT R.
inline double implied_drop_probability(double rate, double rtt) {
    detail::require(rate > 0.0 && rtt > 0.0, "rate and RTT must be positive");
    return 3.0 / (2.0 * rate * rate * rtt * rtt);
}

/// RTT above which pure Cubic outpaces Reno mode at equal drop probability:
/// (27(1-b) / (2C(3+b) r^2))^(1/5). Uses params.b and params.C.
inline double switchover_rtt(double rate, const CcParams& params = CcParams::cubic()) {
    detail::require(rate > 0.0 && std::isfinite(rate), "packet rate must be positive");
    params.validate();
    const double b = params.b;
    return std::pow(27.0 * (1.0 - b) / (2.0 * params.C * (3.0 + b) * rate * rate), 0.2);
}

/// Rounded form of the switchover curve for b = 0.7, C = 0.4: 1.22 / r^(2/5).
/// Kept as a regression check on switchover_rtt.
inline double switchover_rtt_approx(double rate) {
    detail::require(rate > 0.0 && std::isfinite(rate), "packet rate must be positive");
    return 1.22 / std::pow(rate, 0.4);
}

struct CurvePoint {
    double rate_pps = 0.0;
    double rtt = 0.0; ///< seconds
};

/// Switchover curve sampled at log-spaced rates in [rate_lo, rate_hi].
inline std::vector<CurvePoint> sample_switchover_curve(double rate_lo, double rate_hi, int points,
                                                       const CcParams& params = CcParams::cubic()) {
    detail::require(rate_lo > 0.0 && rate_hi >= rate_lo, "curve needs 0 < rate_lo <= rate_hi");
    detail::require(points >= 2, "curve needs at least two points");
    std::vector<CurvePoint> out;
    out.reserve(static_cast<std::size_t>(points));
    const double step = std::log(rate_hi / rate_lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
        const double r = i == points - 1 ? rate_hi : rate_lo * std::exp(step * i);
        out.push_back({r, switchover_rtt(r, params)});
    }
    return out;
}

/// Time from a reduction until a Cubic window regains W_cmax.
inline double cubic_k(double w_cmax, const CcParams& params) {
    detail::require(w_cmax >= 0.0 && std::isfinite(w_cmax), "W_cmax must be non-negative");
    params.validate();
    return std::cbrt(w_cmax * (1.0 - params.b) / params.C);
}

/// Cubic window t seconds after a reduction from w_cmax: W_cmax + C(t-K)^3.
inline double cubic_window(double t, double w_cmax, const CcParams& params) {
    detail::require(t >= 0.0, "time since reduction must be non-negative");
    const double k = cubic_k(w_cmax, params);
    const double dt = t - k;
    return w_cmax + params.C * dt * dt * dt;
}

/// AIMD window j rounds after a reduction to w_min.
inline double aimd_window(double j, double w_min, const CcParams& params) {
    detail::require(j >= 0.0, "round index must be non-negative");
    detail::require(w_min >= 0.0, "W_min must be non-negative");
    params.validate();
    return w_min + j * params.a;
}

} // namespace pi2lab
