#pragma once

// Deterministic fluid simulator of long-running flows sharing one
// fixed-capacity bottleneck behind a PI2 AQM.
//
// Each step of length dt:
//   * every flow grows its window (AIMD: a/R(t) packets per second of
//     elapsed time, Cubic: along W_cmax + C(t-K)^3);
//   * queue delay tracks the aggregate window instantly,
//     q = max(0, W_tot / link_rate - base_rtt);
//   * the AQM samples q every tupdate;
//   * each flow sends W_i / R packets per second and every packet is marked
//     with probability p'^2. A mark reduces the window by b, at most once
//     per RTT.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "pi2lab/aqm_pi2.hpp"
#include "pi2lab/cc_models.hpp"
#include "pi2lab/errors.hpp"
#include "pi2lab/geometry.hpp"
#include "pi2lab/units.hpp"

namespace pi2lab {

enum class MarkModel {
    Bernoulli,          ///< each packet marked independently with probability p
    DeterministicHazard ///< reduce when expected marks since the last reduction reach 1
};

inline std::string_view to_string(MarkModel m) {
    return m == MarkModel::Bernoulli ? "bernoulli" : "deterministic";
}

inline MarkModel parse_mark_model(std::string_view s) {
    if (s == "bernoulli") return MarkModel::Bernoulli;
    if (s == "deterministic" || s == "hazard" || s == "deterministic_hazard")
        return MarkModel::DeterministicHazard;
    throw ValidationError("unknown mark model '" + std::string(s) + "' (expected bernoulli or deterministic)");
}

/// Fraction of the run discarded before cycle statistics are taken.
inline constexpr double kWarmupFraction = 0.2;
/// Minimum number of complete post-warm-up cycles measure_cycles accepts.
inline constexpr std::size_t kMinCycles = 10;
/// Runs abort when queue delay exceeds this multiple of the AQM target.
inline constexpr double kBlowUpFactor = 100.0;
inline constexpr double kMinWindow = 1.0;

struct FlowConfig {
    CcParams cc = CcParams::creno();
    double initial_window = 0.0; ///< packets; 0 selects a fair share of the BDP at target
    bool hybrid = false;         ///< Cubic flow that also tracks a Reno-friendly window and uses the larger
};

struct SimScenario {
    double link_rate = mbps_to_pps(4.0); ///< packets/s
    double base_rtt = 0.010;
    std::vector<FlowConfig> flows{FlowConfig{}};
    Pi2Config aqm{};
    double duration = 60.0;
    double dt = 0.0;              ///< 0 selects min(tupdate/8, base_rtt/20)
    double sample_interval = 0.0; ///< trace export spacing; 0 selects tupdate
    std::uint64_t seed = 1;
    MarkModel mark_model = MarkModel::Bernoulli;
    bool lagged_queue = false; ///< queue follows the aggregate window one RTT late

    double effective_dt() const {
        return dt > 0.0 ? dt : std::min(aqm.tupdate / 8.0, base_rtt / 20.0);
    }
    double effective_sample_interval() const {
        return sample_interval > 0.0 ? sample_interval : aqm.tupdate;
    }

    /// Throws ValidationError on invalid scenarios; returns non-fatal warnings.
    std::vector<std::string> validate() const {
        detail::require(link_rate > 0.0 && std::isfinite(link_rate), "link_rate must be positive");
        detail::require(base_rtt > 0.0 && std::isfinite(base_rtt), "base_rtt must be positive");
        detail::require(duration > 0.0 && std::isfinite(duration), "duration must be positive");
        detail::require(dt >= 0.0 && sample_interval >= 0.0, "dt and sample_interval must be non-negative");
        aqm.validate();
        const double step = effective_dt();
        detail::require(step <= aqm.tupdate / 4.0 + 1e-15, "dt must not exceed tupdate/4");
        detail::require(step < duration, "dt must be shorter than the run");
        for (std::size_t i = 0; i < flows.size(); ++i) {
            flows[i].cc.validate();
            detail::require(flows[i].initial_window >= 0.0,
                            "flow " + std::to_string(i) + ": initial window must be non-negative");
            detail::require(!flows[i].hybrid || flows[i].cc.mode == CcMode::Cubic,
                            "flow " + std::to_string(i) + ": hybrid mode needs a cubic flow");
        }

        std::vector<std::string> warnings;
        if (!flows.empty()) {
            // Expected cycle length with the flows sharing the link and RTT at base + target.
            const double share = link_rate / static_cast<double>(flows.size());
            const double r0 = base_rtt + aqm.target;
            double longest = 0.0;
            for (const auto& f : flows) {
                double cycle = 0.0;
                if (f.cc.is_aimd())
                    cycle = recovery_time(share, r0, RttKind::Avg, f.cc);
                else
                    cycle = cubic_k(share * r0 / cubic_avg_rtt(1.0, f.cc.b), f.cc);
                longest = std::max(longest, cycle);
            }
            if (duration < 20.0 * longest)
                warnings.push_back("duration " + format_s(duration, 1) +
                                   " is short compared with the expected cycle time " + format_s(longest, 3));
        }
        return warnings;
    }
};

struct FlowSample {
    double window = 0.0;
    std::uint64_t marks_cum = 0;
};

struct TraceSample {
    double t = 0.0;
    double qdelay = 0.0;
    double p_base = 0.0;
    double p_drop = 0.0;
    std::vector<FlowSample> flows;
};

/// One sawtooth cycle: from one window reduction to the next.
struct CycleRecord {
    double start = 0.0;
    double duration = 0.0;
    double q_min = 0.0;
    double q_max = 0.0;
    double q_mean = 0.0; ///< time-weighted
    int flow_id = -1;    ///< flow whose reduction opened the cycle
};

/// Splits a queue-delay series into cycles at reduction events.
class CycleTracker {
public:
    /// Adds a queue-delay sample covering `weight` seconds.
    void sample(double q, double weight) {
        if (!open_) return;
        q_min_ = std::min(q_min_, q);
        q_max_ = std::max(q_max_, q);
        q_integral_ += q * weight;
        weight_ += weight;
    }

    /// A reduction at time t closes the open cycle and opens a new one.
    void boundary(double t, int flow_id) {
        if (open_ && weight_ > 0.0) {
            CycleRecord c;
            c.start = start_;
            c.duration = t - start_;
            c.q_min = q_min_;
            c.q_max = q_max_;
            c.q_mean = q_integral_ / weight_;
            c.flow_id = flow_;
            cycles_.push_back(c);
        }
        open_ = true;
        start_ = t;
        flow_ = flow_id;
        q_min_ = std::numeric_limits<double>::infinity();
        q_max_ = -std::numeric_limits<double>::infinity();
        q_integral_ = 0.0;
        weight_ = 0.0;
    }

    const std::vector<CycleRecord>& cycles() const { return cycles_; }
    std::vector<CycleRecord> take() { return std::move(cycles_); }

private:
    bool open_ = false;
    double start_ = 0.0;
    int flow_ = -1;
    double q_min_ = 0.0;
    double q_max_ = 0.0;
    double q_integral_ = 0.0;
    double weight_ = 0.0;
    std::vector<CycleRecord> cycles_;
};

struct SimTrace {
    double link_rate = 0.0;
    double base_rtt = 0.0;
    double target = 0.0;
    double duration = 0.0;
    double dt = 0.0;
    std::size_t flow_count = 0;
    std::vector<TraceSample> samples;
    std::vector<CycleRecord> cycles;
    std::vector<std::uint64_t> reductions; ///< per flow
    std::vector<std::string> warnings;
};

namespace detail {

/// 53-bit uniform in [0, 1), identical on every platform for a given engine state.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct FlowState {
    FlowConfig cfg;
    double window = 0.0;
    double reno_window = 0.0; ///< Reno-friendly estimate for hybrid flows
    double cubic_clock = 0.0; ///< seconds since the last reduction
    double w_cmax = 0.0;
    double hold_until = -1.0; ///< no further reduction before this time
    double hazard = 0.0;
    std::uint64_t marks = 0;
    std::uint64_t reductions = 0;

    void start(double w0) {
        window = std::max(w0, kMinWindow);
        reno_window = window;
        w_cmax = window;
        // A cubic flow starts on the plateau of its curve.
        cubic_clock = cfg.cc.mode == CcMode::Cubic ? cubic_k(w_cmax, cfg.cc) : 0.0;
    }

    void grow(double dt, double rtt) {
        const auto& cc = cfg.cc;
        if (cc.mode != CcMode::Cubic) {
            window += cc.a * dt / rtt;
            return;
        }
        cubic_clock += dt;
        const double k = cubic_k(w_cmax, cc);
        const double d = cubic_clock - k;
        const double w = w_cmax + cc.C * d * d * d;
        if (cfg.hybrid) {
            reno_window += cc.a * dt / rtt;
            window = std::max(w, reno_window);
        } else {
            window = w;
        }
        window = std::max(window, kMinWindow);
    }

    void reduce() {
        const auto& cc = cfg.cc;
        if (cc.mode == CcMode::Cubic) {
            w_cmax = window;
            cubic_clock = 0.0;
            reno_window = std::max(cc.b * window, kMinWindow);
        }
        window = std::max(cc.b * window, kMinWindow);
        ++reductions;
    }
};

} // namespace detail

/// Runs one scenario. Deterministic for a given scenario (including seed).
inline SimTrace sim_run(const SimScenario& sc) {
    SimTrace trace;
    trace.warnings = sc.validate();
    trace.link_rate = sc.link_rate;
    trace.base_rtt = sc.base_rtt;
    trace.target = sc.aqm.target;
    trace.duration = sc.duration;
    trace.flow_count = sc.flows.size();

    const double dt = sc.effective_dt();
    trace.dt = dt;
    const auto steps = static_cast<std::int64_t>(std::llround(sc.duration / dt));
    const double sample_every = sc.effective_sample_interval();
    const double eps = dt * 1e-6;

    std::mt19937_64 rng(sc.seed);
    Pi2Aqm aqm(sc.aqm);
    CycleTracker tracker;

    std::vector<detail::FlowState> flows;
    flows.reserve(sc.flows.size());
    const double fair_share =
        sc.flows.empty() ? 0.0 : sc.link_rate * (sc.base_rtt + sc.aqm.target) / static_cast<double>(sc.flows.size());
    for (const auto& fc : sc.flows) {
        detail::FlowState fs;
        fs.cfg = fc;
        fs.start(fc.initial_window > 0.0 ? fc.initial_window : fair_share);
        flows.push_back(fs);
    }

    auto total_window = [&] {
        double w = 0.0;
        for (const auto& f : flows) w += f.window;
        return w;
    };
    auto queue_for = [&](double w_tot) { return std::max(0.0, w_tot / sc.link_rate - sc.base_rtt); };

    std::vector<double> history; // aggregate window per step, lagged mode only
    if (sc.lagged_queue) history.reserve(static_cast<std::size_t>(steps) + 1);

    double q = queue_for(total_window());
    if (sc.lagged_queue) history.push_back(total_window());
    std::int64_t next_update = 1;
    std::int64_t next_sample = 0;

    auto record = [&](double t) {
        TraceSample s;
        s.t = t;
        s.qdelay = q;
        s.p_base = aqm.base_probability();
        s.p_drop = aqm.drop_probability();
        s.flows.reserve(flows.size());
        for (const auto& f : flows) s.flows.push_back({f.window, f.marks});
        trace.samples.push_back(std::move(s));
    };

    record(0.0);
    next_sample = 1;

    for (std::int64_t step = 1; step <= steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        const double rtt_before = sc.base_rtt + q;
        for (auto& f : flows) f.grow(dt, rtt_before);

        const double w_tot = total_window();
        if (sc.lagged_queue) {
            history.push_back(w_tot);
            const auto lag = static_cast<std::int64_t>(std::llround(rtt_before / dt));
            const auto idx = std::max<std::int64_t>(0, step - lag);
            q = queue_for(history[static_cast<std::size_t>(idx)]);
        } else {
            q = queue_for(w_tot);
        }
        if (q > kBlowUpFactor * sc.aqm.target)
            throw NumericalError("queue delay " + format_ms(q) + " at t=" + format_s(t, 3) + " exceeds " +
                                 fixed(kBlowUpFactor, 0) + "x target; check link_rate and initial windows");

        while (static_cast<double>(next_update) * sc.aqm.tupdate <= t + eps) {
            aqm.update(q);
            ++next_update;
        }
        const double p = aqm.drop_probability();
        tracker.sample(q, dt);

        const double rtt = sc.base_rtt + q;
        for (std::size_t i = 0; i < flows.size(); ++i) {
            auto& f = flows[i];
            const double packets = f.window / rtt * dt;
            bool marked = false;
            if (p > 0.0) {
                if (sc.mark_model == MarkModel::Bernoulli) {
                    const double p_any = 1.0 - std::pow(1.0 - p, packets);
                    marked = detail::uniform01(rng) < p_any;
                } else if (t >= f.hold_until) {
                    f.hazard += p * packets;
                    marked = f.hazard >= 1.0;
                }
            }
            if (!marked) continue;
            ++f.marks;
            if (t < f.hold_until) continue;
            f.reduce();
            f.hazard = 0.0;
            f.hold_until = t + rtt;
            tracker.boundary(t, static_cast<int>(i));
        }
        // In lagged mode the queue sees reductions one RTT later, via the history.
        if (!sc.lagged_queue) q = queue_for(total_window());

        if (static_cast<double>(next_sample) * sample_every <= t + eps) {
            record(t);
            while (static_cast<double>(next_sample) * sample_every <= t + eps) ++next_sample;
        }
    }

    trace.cycles = tracker.take();
    trace.reductions.reserve(flows.size());
    for (const auto& f : flows) trace.reductions.push_back(f.reductions);
    return trace;
}

struct CycleStats {
    std::size_t cycles = 0;
    double mean_duration = 0.0;
    double sd_duration = 0.0;
    double mean_q_min = 0.0;
    double sd_q_min = 0.0;
    double mean_q_max = 0.0;
    double sd_q_max = 0.0;
    double mean_q = 0.0;
    double target = 0.0;
    double lambda_hat = 0.0;  ///< (target - q_min) / (q_max - q_min)
    double lambda0_hat = 0.0; ///< (mean q - q_min) / (q_max - q_min)

    double amplitude() const { return mean_q_max - mean_q_min; }
};

/// Cycle statistics over the cycles that start after the warm-up period.
inline CycleStats measure_cycles(const SimTrace& trace) {
    const double warmup = kWarmupFraction * trace.duration;
    std::vector<CycleRecord> kept;
    for (const auto& c : trace.cycles)
        if (c.start >= warmup) kept.push_back(c);
    if (kept.size() < kMinCycles)
        throw NumericalError("insufficient cycles: " + std::to_string(kept.size()) +
                             " complete cycles after warm-up, need at least " + std::to_string(kMinCycles));

    auto mean_sd = [&](auto field) {
        double sum = 0.0;
        for (const auto& c : kept) sum += field(c);
        const double mean = sum / static_cast<double>(kept.size());
        double ss = 0.0;
        for (const auto& c : kept) ss += (field(c) - mean) * (field(c) - mean);
        const double sd = kept.size() > 1 ? std::sqrt(ss / static_cast<double>(kept.size() - 1)) : 0.0;
        return std::pair{mean, sd};
    };

    CycleStats s;
    s.cycles = kept.size();
    s.target = trace.target;
    std::tie(s.mean_duration, s.sd_duration) = mean_sd([](const CycleRecord& c) { return c.duration; });
    std::tie(s.mean_q_min, s.sd_q_min) = mean_sd([](const CycleRecord& c) { return c.q_min; });
    std::tie(s.mean_q_max, s.sd_q_max) = mean_sd([](const CycleRecord& c) { return c.q_max; });

    double q_int = 0.0;
    double total = 0.0;
    for (const auto& c : kept) {
        q_int += c.q_mean * c.duration;
        total += c.duration;
    }
    s.mean_q = total > 0.0 ? q_int / total : 0.0;

    const double amp = s.amplitude();
    if (!(amp > 0.0)) throw NumericalError("cycles have zero amplitude; lambda estimates undefined");
    s.lambda_hat = (s.target - s.mean_q_min) / amp;
    s.lambda0_hat = (s.mean_q - s.mean_q_min) / amp;
    return s;
}

/// Runs independent scenarios concurrently and returns traces in input order.
inline std::vector<SimTrace> sim_run_all(const std::vector<SimScenario>& scenarios) {
    std::vector<std::future<SimTrace>> jobs;
    jobs.reserve(scenarios.size());
    for (const auto& sc : scenarios) jobs.push_back(std::async(std::launch::async, [sc] { return sim_run(sc); }));
    std::vector<SimTrace> out;
    out.reserve(jobs.size());
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

struct ScalingEntry {
    double factor = 1.0;
    CycleStats stats;
};

struct ScalingReport {
    std::vector<ScalingEntry> entries;
    double q_min_drift = 0.0;     ///< max relative change of mean q_min against the first factor
    double q_max_drift = 0.0;     ///< same for mean q_max
    double amplitude_drift = 0.0; ///< max relative departure of the amplitude from its expected scaling
};

namespace detail {

/// amplitude_scales: the amplitude is expected to grow in proportion to the
/// factor (RTT sweeps) rather than stay put (capacity sweeps).
inline ScalingReport scaling_report(const std::vector<double>& factors, std::vector<SimTrace> traces,
                                    bool amplitude_scales) {
    ScalingReport rep;
    for (std::size_t i = 0; i < factors.size(); ++i) rep.entries.push_back({factors[i], measure_cycles(traces[i])});
    const auto& ref = rep.entries.front();
    auto norm = [&](const ScalingEntry& e) {
        return amplitude_scales ? e.stats.amplitude() / e.factor : e.stats.amplitude();
    };
    const double ref_amp = norm(ref);
    for (const auto& e : rep.entries) {
        rep.q_min_drift = std::max(rep.q_min_drift, std::abs(e.stats.mean_q_min - ref.stats.mean_q_min) /
                                                        std::abs(ref.stats.mean_q_min));
        rep.q_max_drift = std::max(rep.q_max_drift, std::abs(e.stats.mean_q_max - ref.stats.mean_q_max) /
                                                        std::abs(ref.stats.mean_q_max));
        rep.amplitude_drift =
            std::max(rep.amplitude_drift, std::abs(norm(e) - ref_amp) / ref_amp);
    }
    return rep;
}

inline void check_factors(const std::vector<double>& factors) {
    require(!factors.empty(), "at least one scaling factor is required");
    for (double f : factors) require(f > 0.0 && std::isfinite(f), "scaling factors must be positive");
}

} // namespace detail

/// Runs the scenario at each multiple of link capacity. With the AQM holding
/// the sawtooth position, q_min and q_max should not move with capacity.
inline ScalingReport capacity_invariance_check(const SimScenario& base, const std::vector<double>& factors) {
    detail::check_factors(factors);
    std::vector<SimScenario> runs;
    for (double f : factors) {
        SimScenario sc = base;
        sc.link_rate *= f;
        for (auto& fl : sc.flows) fl.initial_window *= f;
        runs.push_back(sc);
    }
    return detail::scaling_report(factors, sim_run_all(runs), false);
}

/// Runs the scenario with the whole RTT operating point (base RTT and AQM
/// target) multiplied by each factor at fixed capacity. The amplitude should
/// scale in proportion; amplitude_drift measures the departure from that.
inline ScalingReport rtt_scaling_check(const SimScenario& base, const std::vector<double>& factors) {
    detail::check_factors(factors);
    std::vector<SimScenario> runs;
    for (double f : factors) {
        SimScenario sc = base;
        sc.base_rtt *= f;
        sc.aqm.target *= f;
        for (auto& fl : sc.flows) fl.initial_window *= f;
        runs.push_back(sc);
    }
    return detail::scaling_report(factors, sim_run_all(runs), true);
}

} // namespace pi2lab
