// pi2lab: command-line front end for the sawtooth geometry, PI2 simulation,
// dataset and target-derivation tools.
//
// Exit codes: 0 success, 2 validation error, 3 runtime/numerical error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pi2lab/json_io.hpp"
#include "pi2lab/pi2lab.hpp"

#ifndef PI2LAB_DATA_DIR
#define PI2LAB_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace pi2lab;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

std::string default_dataset_path() {
    if (const char* env = std::getenv("PI2LAB_DATASET"); env && *env) return env;
    return std::string(PI2LAB_DATA_DIR) + "/cdn_rtt_by_country.csv";
}

struct Invocation {
    std::vector<std::string> argv;
    std::string subcommand;
};

void write_text_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

json manifest(const Invocation& inv, const json& config, const std::vector<std::string>& outputs,
              const json& seed = nullptr) {
    return {{"tool", "pi2lab"},   {"version", PI2LAB_VERSION}, {"subcommand", inv.subcommand},
            {"argv", inv.argv},   {"seed", seed},              {"config", config},
            {"outputs", outputs}};
}

/// Prints to stdout, or writes `out` plus `<out>.manifest.json`.
void emit(const Invocation& inv, const std::string& out, const std::string& text, const json& config) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    write_text_file(out, text);
    write_text_file(out + ".manifest.json", manifest(inv, config, {out}).dump(2) + "\n");
}

CcParams cc_from_options(const std::string& cc, double b, double C) {
    CcParams p = CcParams::defaults_for(parse_cc_mode(cc));
    if (b > 0.0) {
        p.b = b;
        if (p.mode != CcMode::Reno) p.a = reno_friendly_increase(b);
    }
    if (C > 0.0) p.C = C;
    p.validate();
    return p;
}

RttKind parse_rtt_kind(const std::string& s) {
    if (s == "min") return RttKind::Min;
    if (s == "max") return RttKind::Max;
    if (s == "avg") return RttKind::Avg;
    throw ValidationError("unknown RTT kind '" + s + "' (expected min, max or avg)");
}

std::vector<MixEntry> parse_weights(const std::string& text) {
    std::vector<MixEntry> mix;
    std::stringstream ss(text);
    std::string item;
    const auto refs = reference_controllers();
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ValidationError("weight '" + item + "' must look like controller=weight");
        const std::string name = item.substr(0, eq);
        auto it = std::find_if(refs.begin(), refs.end(), [&](const MixEntry& m) { return m.controller == name; });
        if (it == refs.end()) throw ValidationError("unknown controller '" + name + "' in --weights");
        MixEntry m = *it;
        m.weight = detail::parse_plain(item.substr(eq + 1), "weight of " + name);
        mix.push_back(m);
    }
    return mix;
}

std::vector<double> parse_factors(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(detail::parse_plain(detail::trim(item), "scaling factor"));
    return out;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeOptions {
    std::string kind;
    std::string cc = "creno";
    double b = 0.0;
    double C = 0.0;
    double ra_ratio = -1.0;
    std::string rate;
    std::string rtt;
    std::string rtt_kind = "avg";
    std::string tupdate = "16ms";
    std::string rmax = "100ms";
    std::string curve_out;
    std::string curve_from = "1pps";
    std::string curve_to = "1000000pps";
    int points = 121;
    bool as_json = false;
    std::string out;
};

void run_analyze(const AnalyzeOptions& o, const Invocation& inv) {
    json result{{"kind", o.kind}};
    std::ostringstream text;

    if (o.kind == "lambda0") {
        const CcParams p = cc_from_options(o.cc, o.b, o.C);
        result["cc"] = to_json(p);
        double l0 = 0.0;
        if (p.mode == CcMode::Cubic) {
            l0 = lambda0_cubic();
        } else if (o.ra_ratio >= 0.0) {
            l0 = lambda0_aimd_full(p.b, o.ra_ratio);
            result["ra_over_rmin"] = o.ra_ratio;
        } else {
            l0 = lambda0_aimd_approx(p.b);
        }
        result["lambda0"] = l0;
        text << "lambda0 = " << fixed(l0, 3) << "\n";
    } else if (o.kind == "recovery") {
        const CcParams p = cc_from_options(o.cc, o.b, o.C);
        detail::require(!o.rate.empty(), "recovery needs --rate");
        const double rate = parse_rate(o.rate);
        result["cc"] = to_json(p);
        result["rate_pps"] = rate;
        if (p.mode == CcMode::Cubic) {
            detail::require(!o.rtt.empty(), "cubic recovery needs --rtt (the RTT at the top of the cycle)");
            const double w = rate * parse_time(o.rtt);
            const double k = cubic_cycle_time(w, p);
            result["w_cmax_pkts"] = w;
            result["recovery_time_s"] = k;
            text << "recovery_time = " << format_s(k) << " (cubic, W_cmax " << fixed(w, 1) << " pkts)\n";
        } else {
            detail::require(!o.rtt.empty(), "recovery needs --rtt");
            const double rtt = parse_time(o.rtt);
            const RttKind kind = parse_rtt_kind(o.rtt_kind);
            const double c = recovery_coefficient(kind, p);
            const double t = recovery_time(rate, rtt, kind, p);
            result["rtt_ms"] = rtt * 1e3;
            result["rtt_kind"] = o.rtt_kind;
            result["coefficient"] = c;
            result["rounds_per_cycle"] = kind == RttKind::Min ? json(rounds_per_cycle(rate, rtt, p)) : json(nullptr);
            result["recovery_time_s"] = t;
            text << "coefficient = " << fixed(c, 4) << " (T = c r R_" << o.rtt_kind << "^2)\n"
                 << "recovery_time = " << format_s(t) << "\n";
        }
    } else if (o.kind == "switchover") {
        CcParams p = CcParams::cubic(o.b > 0.0 ? o.b : 0.7, o.C > 0.0 ? o.C : 0.4);
        result["cc"] = to_json(p);
        if (!o.rate.empty()) {
            const double rate = parse_rate(o.rate);
            const double r = switchover_rtt(rate, p);
            result["rate_pps"] = rate;
            result["switchover_rtt_ms"] = r * 1e3;
            result["switchover_rtt_approx_ms"] = switchover_rtt_approx(rate) * 1e3;
            text << "switchover_rtt = " << format_ms(r, 1) << " at " << format_pps(rate) << "\n";
        }
        const double lo = parse_rate(o.curve_from);
        const double hi = parse_rate(o.curve_to);
        const auto curve = sample_switchover_curve(lo, hi, o.points, p);
        if (!o.curve_out.empty()) {
            std::ostringstream csv;
            write_curve_csv(csv, curve);
            write_text_file(o.curve_out, csv.str());
            write_text_file(o.curve_out + ".manifest.json",
                            manifest(inv, result, {o.curve_out}).dump(2) + "\n");
            result["curve_file"] = o.curve_out;
        } else {
            json pts = json::array();
            for (const auto& c : curve) pts.push_back({{"rate_pps", c.rate_pps}, {"rtt_ms", c.rtt * 1e3}});
            result["curve"] = pts;
            if (o.rate.empty()) text << "curve: " << curve.size() << " points (use --json or --curve-out)\n";
        }
    } else if (o.kind == "transition") {
        const CcParams p = cc_from_options(o.cc, o.b, o.C);
        detail::require(!o.rate.empty(), "transition needs --rate");
        const double rate = parse_rate(o.rate);
        const double tupdate = parse_time(o.tupdate);
        const double rmax = parse_time(o.rmax);
        const auto tr = transition_region(rate, tupdate, rmax, p);
        result["cc"] = to_json(p);
        result["rate_pps"] = rate;
        result["tupdate_ms"] = tupdate * 1e3;
        result["rmax_ms"] = rmax * 1e3;
        result["rtt_floor_ms"] = tr.rtt_floor * 1e3;
        result["rtt_center_ms"] = tr.rtt_center * 1e3;
        text << "transition floor = " << format_ms(tr.rtt_floor, 2) << " (recovery time = tupdate)\n"
             << "transition center = " << format_ms(tr.rtt_center, 2) << " (recovery time = rmax)\n";
    } else {
        throw ValidationError("unknown analysis '" + o.kind + "' (lambda0, recovery, switchover, transition)");
    }

    emit(inv, o.out, o.as_json ? result.dump(2) + "\n" : text.str(), result);
}

// ---------------------------------------------------------------- sim

struct SimOptions {
    std::string scenario;
    std::vector<std::string> overrides;
    std::string out;
    std::string sweep_capacity;
    std::string sweep_rtt;
    bool seed_given = false;
    std::uint64_t seed = 0;
};

void run_sim(SimOptions& o, const Invocation& inv) {
    auto entries = load_scenario_file(o.scenario);
    for (const auto& ov : o.overrides) entries.push_back(parse_override(ov));
    if (o.seed_given) entries.push_back({"seed", std::to_string(o.seed), "override"});
    const SimScenario sc = build_scenario(entries);
    const json config = to_json(sc);

    if (!o.sweep_capacity.empty() || !o.sweep_rtt.empty()) {
        detail::require(o.sweep_capacity.empty() || o.sweep_rtt.empty(), "choose one sweep at a time");
        const bool capacity = !o.sweep_capacity.empty();
        const auto factors = parse_factors(capacity ? o.sweep_capacity : o.sweep_rtt);
        const auto rep = capacity ? capacity_invariance_check(sc, factors) : rtt_scaling_check(sc, factors);
        json j = to_json(rep);
        j["sweep"] = capacity ? "capacity" : "rtt";
        const std::string text = j.dump(2) + "\n";
        if (o.out.empty()) {
            std::cout << text;
        } else {
            const fs::path dir(o.out);
            write_text_file(dir / "sweep.json", text);
            write_text_file(dir / "manifest.json",
                            manifest(inv, config, {(dir / "sweep.json").string()}, sc.seed).dump(2) + "\n");
        }
        std::cerr << (capacity ? "capacity" : "rtt") << " sweep: q_min drift " << fixed(100 * rep.q_min_drift, 1)
                  << "%, q_max drift " << fixed(100 * rep.q_max_drift, 1)
                  << (capacity ? "%, amplitude drift " : "%, amplitude/factor drift ")
                  << fixed(100 * rep.amplitude_drift, 1) << "%\n";
        return;
    }

    const SimTrace trace = sim_run(sc);
    for (const auto& w : trace.warnings) std::cerr << "warning: " << w << "\n";

    json stats_json;
    std::string summary;
    try {
        const auto stats = measure_cycles(trace);
        stats_json = to_json(stats);
        summary = "cycles " + std::to_string(stats.cycles) + ", lambda_hat " + fixed(stats.lambda_hat, 3) +
                  ", lambda0_hat " + fixed(stats.lambda0_hat, 3) + ", mean q " + format_ms(stats.mean_q, 2);
    } catch (const NumericalError& e) {
        stats_json = {{"error", e.what()}};
        summary = std::string("no cycle statistics: ") + e.what();
    }
    stats_json["reductions"] = trace.reductions;

    if (o.out.empty()) {
        write_trace_csv(std::cout, trace);
    } else {
        const fs::path dir(o.out);
        std::ostringstream csv;
        write_trace_csv(csv, trace);
        const auto trace_path = (dir / "trace.csv").string();
        const auto stats_path = (dir / "cycles.json").string();
        write_text_file(trace_path, csv.str());
        write_text_file(stats_path, stats_json.dump(2) + "\n");
        write_text_file(dir / "manifest.json", manifest(inv, config, {trace_path, stats_path}, sc.seed).dump(2) + "\n");
    }
    std::cerr << summary << "\n";
}

// ---------------------------------------------------------------- dataset / target

struct DataOptions {
    std::string dataset = default_dataset_path();
    std::vector<std::string> exclude{"China"};
    bool no_exclude = false;
    std::string out;
};

std::vector<std::string> exclusions(const DataOptions& d) {
    return d.no_exclude ? std::vector<std::string>{} : d.exclude;
}

struct TargetOptions {
    DataOptions data;
    double f = 2.0;
    std::string r_typ;
    std::string weights;
    bool staged_rounding = false;
};

void run_target(const TargetOptions& o, const Invocation& inv) {
    TargetInputs in;
    in.f = o.f;
    if (!o.weights.empty()) in.mix = parse_weights(o.weights);

    json provenance;
    if (!o.r_typ.empty()) {
        in.r_typ = parse_time(o.r_typ);
        provenance = {{"source", "explicit"}};
    } else {
        const auto records = load_dataset(o.data.dataset);
        const auto summary = weighted_summary(records, exclusions(o.data));
        in.r_typ = summary.weighted_rtt_ms * 1e-3;
        provenance = {{"source", "dataset"},
                      {"dataset", o.data.dataset},
                      {"fingerprint_fnv1a64", file_fingerprint(o.data.dataset)},
                      {"summary", to_json(summary)}};
    }

    const auto rep = compute_target(in, o.staged_rounding ? Rounding::Staged : Rounding::Full);
    json j = to_json(rep);
    j["r_typ_provenance"] = provenance;
    emit(inv, o.data.out, j.dump(2) + "\n", j["inputs"]);
    std::cerr << "recommended target: " << fixed(rep.target_ms, 2) << " ms (" << fixed(rep.target_ms_whole, 0)
              << " ms)\n";
}

struct DatasetOptions {
    DataOptions data;
    std::string target = "15ms";
    double lambda0_mix = kLambda0Mix;
    std::vector<std::string> share_skip{"China", "Russia"};
    std::string scatter_out;
    std::string curve_out;
};

void run_dataset(const DatasetOptions& o, const Invocation& inv) {
    const auto records = load_dataset(o.data.dataset);
    const auto all = weighted_summary(records);
    const auto selected = weighted_summary(records, exclusions(o.data));
    const double target = parse_time(o.target);
    const auto cls = classify_switchover(records, target, o.lambda0_mix);

    json above = json::array();
    for (const auto& p : cls.points)
        if (p.above) above.push_back(p.name);
    json j{{"dataset", o.data.dataset},
           {"fingerprint_fnv1a64", file_fingerprint(o.data.dataset)},
           {"records", records.size()},
           {"all", to_json(all)},
           {"selected", to_json(selected)},
           {"under_load", {{"target_ms", target * 1e3}, {"lambda0_mix", o.lambda0_mix},
                           {"uplift_ms", 1e3 * o.lambda0_mix * target}}},
           {"switchover",
            {{"above_curve", above},
             {"share_skip", o.share_skip},
             {"users_above", cls.users_above(o.share_skip)},
             {"share_of_world_users", cls.share_above(o.share_skip, kWorldInternetUsers)},
             {"share_of_dataset_users", cls.share_above(o.share_skip, all.total_users)}}}};

    std::vector<std::string> outputs;
    if (!o.scatter_out.empty()) {
        std::ostringstream csv;
        write_scatter_csv(csv, cls);
        write_text_file(o.scatter_out, csv.str());
        outputs.push_back(o.scatter_out);
    }
    if (!o.curve_out.empty()) {
        double lo = 1e300, hi = 0.0;
        for (const auto& p : cls.points) {
            lo = std::min(lo, p.rate_pps);
            hi = std::max(hi, p.rate_pps);
        }
        std::ostringstream csv;
        write_curve_csv(csv, sample_switchover_curve(lo / 2.0, hi * 2.0, 121));
        write_text_file(o.curve_out, csv.str());
        outputs.push_back(o.curve_out);
    }
    for (const auto& path : outputs)
        write_text_file(path + ".manifest.json", manifest(inv, j["under_load"], {path}).dump(2) + "\n");
    emit(inv, o.data.out, j.dump(2) + "\n", j["under_load"]);
}

void run_defaults() {
    const Pi2Config pi2 = Pi2Config::with_default_gains(0.015);
    json ccs = json::array();
    for (auto m : {CcMode::Reno, CcMode::CReno, CcMode::Cubic}) ccs.push_back(to_json(CcParams::defaults_for(m)));
    SimScenario sc;
    json j{{"packet_bytes", kPacketBytes},
           {"pi2", to_json(pi2)},
           {"pi2_gain_rule", "alpha = 0.1 * tupdate / rmax^2, beta = 0.3 / rmax"},
           {"classic_probability_exponent", kClassicProbabilityExponent},
           {"congestion_controls", ccs},
           {"lambda_aimd", kLambdaAimd},
           {"lambda_cubic", kLambdaCubic},
           {"lambda0_mix", kLambda0Mix},
           {"target_inputs", {{"r_typ_ms", 25.0}, {"f", 2.0}}},
           {"target_mix", json::array()},
           {"sim", to_json(sc)},
           {"sim_warmup_fraction", kWarmupFraction},
           {"sim_min_cycles", kMinCycles},
           {"dataset", default_dataset_path()}};
    for (const auto& m : default_mix())
        j["target_mix"].push_back({{"controller", m.controller}, {"weight", m.weight}, {"lambda", m.lambda}, {"b", m.b}});
    std::cout << j.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pi2lab: sawtooth geometry, PI2 fluid simulation and queue-delay target derivation.\n"
                 "Rates take unit suffixes (pps, kbit, mbit, gbit; 1500 B packets); times take s, ms or us."};
    app.require_subcommand(1);
    app.set_version_flag("--version", PI2LAB_VERSION);

    Invocation inv;
    inv.argv.assign(argv + 1, argv + argc);

    // analyze
    AnalyzeOptions ao;
    auto* analyze = app.add_subcommand("analyze", "Closed-form analyses: lambda0, recovery, switchover, transition");
    analyze->add_option("kind", ao.kind, "lambda0 | recovery | switchover | transition")->required();
    analyze->add_option("--cc", ao.cc, "Congestion control: reno, creno, cubic (default creno)");
    analyze->add_option("--b", ao.b, "Override the decrease factor b (dimensionless)");
    analyze->add_option("--C", ao.C, "Override the cubic constant C (segments/s^3, default 0.4)");
    analyze->add_option("--ra-ratio", ao.ra_ratio, "lambda0: use the full form with R_a/R_min = value");
    analyze->add_option("--rate", ao.rate, "Flow packet rate, e.g. 100mbit or 8333pps");
    analyze->add_option("--rtt", ao.rtt, "RTT for recovery, e.g. 20ms");
    analyze->add_option("--rtt-kind", ao.rtt_kind, "Which RTT --rtt is: min, max, avg (default avg)");
    analyze->add_option("--tupdate", ao.tupdate, "PI2 update interval (default 16ms)");
    analyze->add_option("--rmax", ao.rmax, "PI2 maximum design RTT (default 100ms)");
    analyze->add_option("--curve-out", ao.curve_out, "switchover: write sampled curve CSV (rate_pps,rtt_ms)");
    analyze->add_option("--curve-from", ao.curve_from, "switchover: lowest curve rate (default 1pps)");
    analyze->add_option("--curve-to", ao.curve_to, "switchover: highest curve rate (default 1000000pps)");
    analyze->add_option("--points", ao.points, "switchover: curve points, log-spaced (default 121)");
    analyze->add_flag("--json", ao.as_json, "Emit JSON instead of text");
    analyze->add_option("--out", ao.out, "Write to this file (plus a manifest) instead of stdout");

    // sim
    SimOptions so;
    auto* sim = app.add_subcommand("sim", "Run a fluid simulation scenario; writes trace CSV, cycle JSON, manifest");
    sim->add_option("scenario", so.scenario, "Scenario file (key = value lines)")->required()->check(CLI::ExistingFile);
    sim->add_option("--set", so.overrides, "Override a scenario key, e.g. --set link_rate=40mbit (repeatable)");
    sim->footer("Scenario keys (times need s/ms/us, rates need pps/kbit/mbit/gbit):\n"
                "  link_rate [4mbit]  base_rtt [10ms]  duration [60s]  dt [min(tupdate/8, base_rtt/20)]\n"
                "  sample_interval [tupdate]  target [15ms]  tupdate [16ms]  rmax [100ms]\n"
                "  alpha [0.1 tupdate/rmax^2 per s]  beta [0.3/rmax per s]  p_max [1]  seed [1]\n"
                "  mark_model [bernoulli | deterministic]  lagged_queue [false]\n"
                "  flow = <reno|creno|cubic> [a=] [b=] [C=] [window=<pkts>] [hybrid]   (repeat per flow)");
    auto* seed_opt = sim->add_option("--seed", so.seed, "Override the RNG seed");
    sim->add_option("--out", so.out, "Output directory (default: trace CSV to stdout)");
    sim->add_option("--sweep-capacity", so.sweep_capacity, "Capacity multiples, e.g. 1,2,4; reports q_min/q_max drift");
    sim->add_option("--sweep-rtt", so.sweep_rtt, "RTT multiples (base RTT and target scaled), e.g. 1,2");

    // target
    TargetOptions to;
    auto* target = app.add_subcommand("target", "Derive the default PI2 target from geometry, mix and typical RTT");
    target->add_option("--dataset", to.data.dataset, "Dataset CSV (default: bundled, or $PI2LAB_DATASET)");
    target->add_option("--exclude", to.data.exclude, "Countries to leave out of R_typ (default China; repeatable)");
    target->add_flag("--no-exclude", to.data.no_exclude, "Use every country for R_typ");
    target->add_option("--f", to.f, "Safety factor (dimensionless, default 2)");
    target->add_option("--r-typ", to.r_typ, "Typical base RTT, e.g. 25ms (skips the dataset)");
    target->add_option("--weights", to.weights, "Controller weights, e.g. creno=0.7,cubic=0.3 (must sum to 1)");
    target->add_flag("--paper-rounding,--staged-rounding", to.staged_rounding,
                     "Round stage-wise: factors and mix to 2 dp, R_typ to whole ms");
    target->add_option("--out", to.data.out, "Write the JSON report to this file (plus a manifest)");

    // dataset
    DatasetOptions dso;
    auto* dataset = app.add_subcommand("dataset", "Weighted averages and switchover classification of the dataset");
    dataset->add_option("--dataset", dso.data.dataset, "Dataset CSV (default: bundled, or $PI2LAB_DATASET)");
    dataset->add_option("--exclude", dso.data.exclude, "Countries to leave out of the selected summary (default China)");
    dataset->add_flag("--no-exclude", dso.data.no_exclude, "Leave no country out");
    dataset->add_option("--target", dso.target, "AQM target used for the RTT-under-load uplift (default 15ms)");
    dataset->add_option("--lambda0-mix", dso.lambda0_mix, "Fraction of target added to base RTT (default 0.64)");
    dataset->add_option("--share-skip", dso.share_skip, "Countries left out of the share above the curve");
    dataset->add_option("--scatter-out", dso.scatter_out, "Write scatter CSV (country,users,fixed_mbps,rtt_loaded_ms,above_curve)");
    dataset->add_option("--curve-out", dso.curve_out, "Write switchover curve CSV (rate_pps,rtt_ms)");
    dataset->add_option("--out", dso.data.out, "Write the JSON summary to this file (plus a manifest)");

    auto* defaults = app.add_subcommand("defaults", "Print every built-in default as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (analyze->parsed()) {
            inv.subcommand = "analyze";
            run_analyze(ao, inv);
        } else if (sim->parsed()) {
            inv.subcommand = "sim";
            so.seed_given = seed_opt->count() > 0;
            run_sim(so, inv);
        } else if (target->parsed()) {
            inv.subcommand = "target";
            run_target(to, inv);
        } else if (dataset->parsed()) {
            inv.subcommand = "dataset";
            run_dataset(dso, inv);
        } else if (defaults->parsed()) {
            run_defaults();
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
