#pragma once

// PI2 AQM control law. The base probability p' is driven by an incremental
// PI controller on queue delay and squared to give the Classic drop/mark
// probability.

#include <algorithm>
#include <cmath>

#include "pi2lab/errors.hpp"

namespace pi2lab {

/// Output exponent applied to the base probability for Classic traffic.
inline constexpr int kClassicProbabilityExponent = 2;

struct Pi2Gains {
    double alpha = 0.0; ///< integral gain, probability per second of delay error per update
    double beta = 0.0;  ///< proportional gain, probability per second of delay change per update
};

/// alpha = 0.1 * tupdate / rmax^2, beta = 0.3 / rmax.
inline Pi2Gains default_gains(double tupdate, double rmax) {
    detail::require(tupdate > 0.0 && std::isfinite(tupdate), "tupdate must be positive");
    detail::require(rmax > 0.0 && std::isfinite(rmax), "rmax must be positive");
    return {0.1 * tupdate / (rmax * rmax), 0.3 / rmax};
}

struct Pi2Config {
    double target = 0.015;
    double tupdate = 0.016;
    double rmax = 0.100;
    double alpha = 0.16;
    double beta = 3.0;
    double p_max = 1.0;

    /// Config with gains derived from tupdate and rmax.
    static Pi2Config with_default_gains(double target, double tupdate = 0.016, double rmax = 0.100) {
        const auto g = default_gains(tupdate, rmax);
        Pi2Config c;
        c.target = target;
        c.tupdate = tupdate;
        c.rmax = rmax;
        c.alpha = g.alpha;
        c.beta = g.beta;
        return c;
    }

    void validate() const {
        detail::require(target > 0.0 && std::isfinite(target), "target must be positive");
        detail::require(tupdate > 0.0 && std::isfinite(tupdate), "tupdate must be positive");
        detail::require(rmax >= tupdate && std::isfinite(rmax), "rmax must be at least tupdate");
        detail::require(p_max > 0.0 && p_max <= 1.0, "p_max must lie in (0, 1]");
        detail::require(alpha >= 0.0 && beta >= 0.0 && std::isfinite(alpha) && std::isfinite(beta),
                        "gains must be non-negative");
    }
};

struct Pi2State {
    double p_base = 0.0; ///< p', kept in [0, p_max]
    double q_prev = 0.0; ///< queue delay at the previous update, seconds
};

/// One controller step: p' += alpha (q - target) + beta (q - q_prev), clamped.
inline Pi2State pi2_update(const Pi2State& state, double q_now, const Pi2Config& cfg) {
    detail::require(q_now >= 0.0 && std::isfinite(q_now), "queue delay must be non-negative");
    const double delta = cfg.alpha * (q_now - cfg.target) + cfg.beta * (q_now - state.q_prev);
    return {std::clamp(state.p_base + delta, 0.0, cfg.p_max), q_now};
}

/// Drop/mark probability applied to Classic traffic: p'^2.
inline double classic_drop_prob(const Pi2State& state) {
    double p = 1.0;
    for (int i = 0; i < kClassicProbabilityExponent; ++i) p *= state.p_base;
    return std::clamp(p, 0.0, 1.0);
}

/// A PI2 instance: config plus evolving state. Not thread-safe; one owner at a time.
class Pi2Aqm {
public:
    explicit Pi2Aqm(Pi2Config cfg) : cfg_(cfg) { cfg_.validate(); }

    void update(double q_now) { state_ = pi2_update(state_, q_now, cfg_); }

    double base_probability() const { return state_.p_base; }
    double drop_probability() const { return classic_drop_prob(state_); }
    const Pi2State& state() const { return state_; }
    const Pi2Config& config() const { return cfg_; }

private:
    Pi2Config cfg_;
    Pi2State state_;
};

} // namespace pi2lab
