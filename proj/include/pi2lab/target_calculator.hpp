#pragma once

// Default queue-delay target from sawtooth geometry:
//
//   target ~= lambda (1 - b) f / b * R_typ
//
// lambda(1-b)/b is the geometry factor. It is averaged over a weighted mix
// of congestion controllers, then scaled by the safety factor f and the
// typical base RTT.

#include <cmath>
#include <string>
#include <vector>

#include "pi2lab/errors.hpp"
#include "pi2lab/geometry.hpp"
#include "pi2lab/units.hpp"

namespace pi2lab {

template <class T>
T geometry_factor(T lambda, T b) {
    detail::require(lambda > T(0) && lambda <= T(1), "lambda must lie in (0, 1]");
    detail::require(b > T(0) && b < T(1), "decrease factor b must lie in (0, 1)");
    return lambda * (T(1) - b) / b;
}

struct MixEntry {
    std::string controller;
    double weight = 0.0;
    double lambda = 0.0;
    double b = 0.0;
};

/// Reno-mode Cubic at 70%, pure Cubic at 30%.
inline std::vector<MixEntry> default_mix() {
    return {{"creno", 0.7, kLambdaAimd, 0.7}, {"cubic", 0.3, kLambdaCubic, 0.7}};
}

/// The single-controller rows of the geometry-factor table.
inline std::vector<MixEntry> reference_controllers() {
    return {{"reno", 0.0, kLambdaAimd, 0.5}, {"creno", 0.7, kLambdaAimd, 0.7}, {"cubic", 0.3, kLambdaCubic, 0.7}};
}

inline constexpr double kWeightSumTolerance = 1e-9;

inline void validate_mix(const std::vector<MixEntry>& mix) {
    detail::require(!mix.empty(), "controller mix is empty");
    double sum = 0.0;
    for (const auto& m : mix) {
        detail::require(m.weight >= 0.0 && std::isfinite(m.weight), "mix weights must be non-negative");
        sum += m.weight;
    }
    detail::require(std::abs(sum - 1.0) <= kWeightSumTolerance,
                    "mix weights must sum to 1 (got " + fixed(sum, 6) + ")");
}

inline double mixed_geometry_factor(const std::vector<MixEntry>& mix) {
    validate_mix(mix);
    double g = 0.0;
    for (const auto& m : mix) g += m.weight * geometry_factor(m.lambda, m.b);
    return g;
}

struct TargetInputs {
    double r_typ = 0.025; ///< typical base RTT, seconds
    double f = 2.0;       ///< safety factor
    std::vector<MixEntry> mix = default_mix();

    void validate() const {
        detail::require(r_typ > 0.0 && std::isfinite(r_typ), "r_typ must be positive");
        detail::require(f >= 1.0 && std::isfinite(f), "safety factor f must be at least 1");
        validate_mix(mix);
    }
};

/// mixed geometry factor * f * r_typ, in seconds, without intermediate rounding.
inline double recommend_target(const TargetInputs& in) {
    in.validate();
    return mixed_geometry_factor(in.mix) * in.f * in.r_typ;
}

enum class Rounding {
    Full,  ///< full precision throughout; only the report is rounded
    Staged ///< factors to 2 dp, mixed factor to 2 dp, r_typ to whole ms
};

struct ControllerFactor {
    MixEntry entry;
    double factor = 0.0;     ///< as used by the pipeline
    double factor_2dp = 0.0; ///< table precision
};

struct TargetReport {
    TargetInputs inputs;
    Rounding rounding = Rounding::Full;
    std::vector<ControllerFactor> factors;
    double mixed_factor = 0.0;
    double r_typ_used = 0.0; ///< seconds, after any staged rounding
    double target = 0.0;     ///< seconds
    double target_ms = 0.0;  ///< rounded to 0.01 ms
    double target_ms_whole = 0.0;
};

inline TargetReport compute_target(const TargetInputs& in, Rounding rounding = Rounding::Full) {
    in.validate();
    TargetReport rep;
    rep.inputs = in;
    rep.rounding = rounding;
    const bool staged = rounding == Rounding::Staged;

    double mixed = 0.0;
    for (const auto& m : in.mix) {
        const double g = geometry_factor(m.lambda, m.b);
        const double g2 = round_to(g, 2);
        rep.factors.push_back({m, staged ? g2 : g, g2});
        mixed += m.weight * (staged ? g2 : g);
    }
    rep.mixed_factor = staged ? round_to(mixed, 2) : mixed;
    rep.r_typ_used = staged ? round_to(in.r_typ * 1e3, 0) * 1e-3 : in.r_typ;

    const double target_ms = rep.mixed_factor * in.f * rep.r_typ_used * 1e3;
    rep.target = target_ms * 1e-3;
    rep.target_ms = round_to(target_ms, 2);
    rep.target_ms_whole = round_to(target_ms, 0);
    return rep;
}

} // namespace pi2lab
