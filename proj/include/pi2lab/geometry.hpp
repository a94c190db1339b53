#pragma once

// Closed-form sawtooth geometry.
//
// The lambda0/scaling/coefficient functions are templates over the number
// type so they can be evaluated either in double or exactly (pi2lab::Rational).

#include <cmath>

#include "pi2lab/aqm_pi2.hpp"
#include "pi2lab/cc_models.hpp"
#include "pi2lab/errors.hpp"
#include "pi2lab/rational.hpp"

namespace pi2lab {

/// Fraction of the amplitude below the AQM target once the sawtooth
/// settles against it. Empirical estimates, not derived.
inline constexpr double kLambdaAimd = 0.90;
inline constexpr double kLambdaCubic = 0.85;

enum class RttKind { Min, Max, Avg };

/// Fraction of an AIMD sawtooth's amplitude below its time average,
/// (2+b) / (3(1+b)), valid when the per-round RTT increment is small.
template <class T>
T lambda0_aimd_approx(T b) {
    detail::require(b > T(0) && b < T(1), "decrease factor b must lie in (0, 1)");
    return (T(2) + b) / (T(3) * (T(1) + b));
}

/// The same fraction including the first- and second-order terms in
/// ratio = R_a / R_min, where R_a = a / r is the RTT added per round.
template <class T>
T lambda0_aimd_full(T b, T ratio) {
    detail::require(b > T(0) && b < T(1), "decrease factor b must lie in (0, 1)");
    detail::require(ratio >= T(0), "R_a/R_min must be non-negative");
    return lambda0_aimd_approx(b) + b / (T(1) + b) * ratio +
           b * b / (T(3) * (T(1) - b * b)) * ratio * ratio;
}

/// A Cubic sawtooth sits 3/4 of its amplitude above its minimum on average,
/// whatever b is.
template <class T = double>
constexpr T lambda0_cubic() {
    return T(3) / T(4);
}

/// Average RTT over one Cubic cycle: R_cmax (3+b)/4.
template <class T>
T cubic_avg_rtt(T r_cmax, T b) {
    detail::require(r_cmax > T(0), "R_cmax must be positive");
    detail::require(b >= T(0) && b <= T(1), "decrease factor b must lie in [0, 1]");
    return r_cmax * (T(3) + b) / T(4);
}

template <class T>
struct RttScaling {
    T r_max;
    T r_min;
    T d_max;
};

/// Max/min RTT and amplitude of a sawtooth with average RTT r0:
/// R_min = b R_max, R_0 = R_max (l0 + b - l0 b), d_max = R_max - R_min.
template <class T>
RttScaling<T> rtt_scaling(T r0, T lambda0, T b) {
    detail::require(r0 > T(0), "average RTT must be positive");
    detail::require(lambda0 > T(0) && lambda0 < T(1), "lambda0 must lie in (0, 1)");
    detail::require(b > T(0) && b <= T(1), "decrease factor b must lie in (0, 1]");
    const T r_max = r0 / (lambda0 + b - lambda0 * b);
    const T r_min = b * r_max;
    return {r_max, r_min, r_max - r_min};
}

/// Rounds between reductions: J = r R_min (1-b) / (a b).
template <class T>
T rounds_per_cycle(T rate, T r_min, T a, T b) {
    detail::require(rate > T(0) && r_min > T(0), "rate and R_min must be positive");
    detail::require(a > T(0), "additive increase must be positive");
    detail::require(b > T(0) && b <= T(1), "decrease factor b must lie in (0, 1]");
    return rate * r_min * (T(1) - b) / (a * b);
}

inline double rounds_per_cycle(double rate, double r_min, const CcParams& params) {
    params.validate();
    detail::require(params.is_aimd(), "rounds_per_cycle applies to AIMD modes; use cubic_cycle_time");
    return rounds_per_cycle<double>(rate, r_min, params.a, params.b);
}

/// c such that an AIMD recovery time is T = c r R^2 for the RTT of the given
/// kind. Min: (1-b^2)/(2ab^2); Max: (1-b^2)/(2a); Avg: uses lambda0_aimd_approx.
template <class T>
T recovery_coefficient(RttKind kind, T a, T b) {
    detail::require(a > T(0), "additive increase must be positive");
    detail::require(b > T(0) && b < T(1), "decrease factor b must lie in (0, 1)");
    const T base = (T(1) - b * b) / (T(2) * a);
    switch (kind) {
    case RttKind::Min: return base / (b * b);
    case RttKind::Max: return base;
    case RttKind::Avg: {
        const T l0 = lambda0_aimd_approx(b);
        const T s = l0 + b - l0 * b;
        return base / (s * s);
    }
    }
    return base;
}

inline double recovery_coefficient(RttKind kind, const CcParams& params) {
    params.validate();
    detail::require(params.is_aimd(), "recovery time of Cubic is its cycle time K; use cubic_cycle_time");
    return recovery_coefficient<double>(kind, params.a, params.b);
}

/// Duration of one AIMD sawtooth cycle.
inline double recovery_time(double rate, double rtt, RttKind kind, const CcParams& params) {
    detail::require(rate > 0.0 && rtt > 0.0, "rate and RTT must be positive");
    return recovery_coefficient(kind, params) * rate * rtt * rtt;
}

/// Inverse of recovery_time in the RTT argument.
inline double rtt_for_recovery_time(double recovery, double rate, RttKind kind, const CcParams& params) {
    detail::require(recovery > 0.0 && rate > 0.0, "recovery time and rate must be positive");
    return std::sqrt(recovery / (recovery_coefficient(kind, params) * rate));
}

/// Cubic cycle duration K = (W_cmax (1-b) / C)^(1/3).
inline double cubic_cycle_time(double w_cmax, const CcParams& params) {
    detail::require(params.mode == CcMode::Cubic, "cubic_cycle_time needs cubic-mode parameters");
    return cubic_k(w_cmax, params);
}

struct SawtoothGeometry {
    double lambda0 = 0.0;
    double lambda = 0.0;
    double b = 0.0;
    double geometry_factor = 0.0;

    static SawtoothGeometry make(double lambda0, double lambda, double b) {
        detail::require(lambda0 > 0.0 && lambda0 < 1.0, "lambda0 must lie in (0, 1)");
        detail::require(lambda > 0.0 && lambda <= 1.0, "lambda must lie in (0, 1]");
        detail::require(b > 0.0 && b < 1.0, "decrease factor b must lie in (0, 1)");
        return {lambda0, lambda, b, lambda * (1.0 - b) / b};
    }

    /// Geometry of a controller using the default empirical lambda.
    static SawtoothGeometry for_params(const CcParams& params) {
        params.validate();
        if (params.mode == CcMode::Cubic) return make(lambda0_cubic(), kLambdaCubic, params.b);
        return make(lambda0_aimd_approx(params.b), kLambdaAimd, params.b);
    }
};

/// Average-RTT boundaries of the band where the AQM moves from holding the
/// sawtooth average at target to holding its tips there.
struct TransitionRegion {
    double rtt_floor = 0.0;  ///< recovery time equals tupdate
    double rtt_center = 0.0; ///< recovery time equals rmax
};

inline TransitionRegion transition_region(double rate, double tupdate, double rmax, const CcParams& params) {
    detail::require(tupdate > 0.0 && rmax > 0.0, "tupdate and rmax must be positive");
    return {rtt_for_recovery_time(tupdate, rate, RttKind::Avg, params),
            rtt_for_recovery_time(rmax, rate, RttKind::Avg, params)};
}

inline TransitionRegion transition_region(double rate, const Pi2Config& pi2, const CcParams& params) {
    pi2.validate();
    return transition_region(rate, pi2.tupdate, pi2.rmax, params);
}

} // namespace pi2lab
