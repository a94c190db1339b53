#pragma once

// JSON views of the lab's result types. Times are written in milliseconds
// with an explicit `_ms` key suffix.

#include <string>
#include <vector>

#include "json.hpp"

#include "pi2lab/aqm_pi2.hpp"
#include "pi2lab/cc_models.hpp"
#include "pi2lab/rtt_dataset.hpp"
#include "pi2lab/sim_engine.hpp"
#include "pi2lab/target_calculator.hpp"

namespace pi2lab {

using json = nlohmann::ordered_json;

inline json to_json(const CcParams& p) {
    json j{{"mode", std::string(to_string(p.mode))}, {"a", p.a}, {"b", p.b}};
    if (p.mode == CcMode::Cubic) j["C"] = p.C;
    return j;
}

inline json to_json(const Pi2Config& c) {
    return {{"target_ms", c.target * 1e3}, {"tupdate_ms", c.tupdate * 1e3}, {"rmax_ms", c.rmax * 1e3},
            {"alpha", c.alpha},           {"beta", c.beta},                 {"p_max", c.p_max}};
}

inline json to_json(const SimScenario& sc) {
    json flows = json::array();
    for (const auto& f : sc.flows) {
        json jf = to_json(f.cc);
        jf["initial_window_pkts"] = f.initial_window;
        jf["hybrid"] = f.hybrid;
        flows.push_back(jf);
    }
    return {{"link_rate_pps", sc.link_rate},
            {"link_rate_mbps", pps_to_mbps(sc.link_rate)},
            {"base_rtt_ms", sc.base_rtt * 1e3},
            {"duration_s", sc.duration},
            {"dt_ms", sc.effective_dt() * 1e3},
            {"sample_interval_ms", sc.effective_sample_interval() * 1e3},
            {"seed", sc.seed},
            {"mark_model", std::string(to_string(sc.mark_model))},
            {"lagged_queue", sc.lagged_queue},
            {"aqm", to_json(sc.aqm)},
            {"flows", flows}};
}

inline json to_json(const CycleStats& s) {
    return {{"cycles", s.cycles},
            {"mean_cycle_duration_s", s.mean_duration},
            {"sd_cycle_duration_s", s.sd_duration},
            {"mean_q_min_ms", s.mean_q_min * 1e3},
            {"sd_q_min_ms", s.sd_q_min * 1e3},
            {"mean_q_max_ms", s.mean_q_max * 1e3},
            {"sd_q_max_ms", s.sd_q_max * 1e3},
            {"mean_q_ms", s.mean_q * 1e3},
            {"amplitude_ms", s.amplitude() * 1e3},
            {"target_ms", s.target * 1e3},
            {"lambda_hat", s.lambda_hat},
            {"lambda0_hat", s.lambda0_hat}};
}

inline json to_json(const ScalingReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries) {
        json je = to_json(e.stats);
        je["factor"] = e.factor;
        entries.push_back(je);
    }
    return {{"entries", entries},
            {"q_min_drift", r.q_min_drift},
            {"q_max_drift", r.q_max_drift},
            {"amplitude_drift", r.amplitude_drift}};
}

inline json to_json(const DatasetSummary& s) {
    return {{"weighted_rtt_ms", s.weighted_rtt_ms},
            {"weighted_bw_mbps", s.weighted_bw_mbps},
            {"total_users", s.total_users},
            {"countries", s.countries},
            {"exclusions", s.exclusions}};
}

inline json to_json(const TargetReport& r) {
    json mix = json::array();
    for (const auto& m : r.inputs.mix)
        mix.push_back({{"controller", m.controller}, {"weight", m.weight}, {"lambda", m.lambda}, {"b", m.b}});
    json factors = json::array();
    for (const auto& f : r.factors)
        factors.push_back({{"controller", f.entry.controller}, {"geometry_factor", f.factor},
                           {"geometry_factor_2dp", f.factor_2dp}});
    return {{"inputs", {{"r_typ_ms", r.inputs.r_typ * 1e3}, {"f", r.inputs.f}, {"mix", mix}}},
            {"rounding", r.rounding == Rounding::Staged ? "staged" : "full"},
            {"factors", factors},
            {"mixed_geometry_factor", r.mixed_factor},
            {"r_typ_used_ms", r.r_typ_used * 1e3},
            {"target_ms", r.target_ms},
            {"target_ms_whole", r.target_ms_whole}};
}

} // namespace pi2lab
