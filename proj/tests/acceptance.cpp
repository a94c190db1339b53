// Acceptance run: one PASS/FAIL line per criterion.
//
//   pi2lab_acceptance                      exit 0 iff every criterion passes
//   pi2lab_acceptance --known-failures 2   exit 0 iff exactly the listed criteria fail

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pi2lab/pi2lab.hpp"

using namespace pi2lab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

bool within_rel(double got, double want, double rel) { return std::abs(got - want) <= rel * std::abs(want); }

const std::string kDataset = std::string(PI2LAB_DATA_DIR) + "/cdn_rtt_by_country.csv";

SimScenario single_flow(double mbps, double duration = 120.0) {
    SimScenario sc;
    sc.link_rate = mbps_to_pps(mbps);
    sc.base_rtt = 0.010;
    sc.flows = {FlowConfig{CcParams::creno()}};
    sc.aqm = Pi2Config::with_default_gains(0.015);
    sc.duration = duration;
    sc.seed = 1;
    sc.mark_model = MarkModel::DeterministicHazard;
    return sc;
}

// 1. Exact lambda0 values and the cubic average by numerical integration.
Outcome geometry_oracles() {
    bool ok = lambda0_aimd_approx(Rational(1, 2)) == Rational(5, 9) &&
              lambda0_aimd_approx(Rational(7, 10)) == Rational(9, 17) && lambda0_cubic<Rational>() == Rational(3, 4);
    double worst = 0.0;
    for (double b : {0.2, 0.5, 0.7, 0.8, 0.9}) {
        const auto p = CcParams::cubic(b);
        const double w = 1000.0;
        const double k = cubic_k(w, p);
        const double avg = oracle::simpson([&](double t) { return cubic_window(t, w, p); }, 0.0, k) / k / w;
        worst = std::max(worst, std::abs(avg - (3.0 + b) / 4.0) / ((3.0 + b) / 4.0));
    }
    ok = ok && worst < 1e-3;
    return {ok, "5/9, 9/17, 3/4 exact; cubic (3+b)/4 worst rel err " + fmt("%.2e", worst)};
}

// 2. Round-by-round averaging against the closed form with its ratio terms.
Outcome bruteforce_equivalence() {
    std::mt19937_64 rng(20);
    std::uniform_real_distribution<double> ua(0.5, 2.0), ub(0.5, 0.9), urmin(0.005, 0.2), lratio(-4.0, -2.0);
    int within = 0;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double a = ua(rng), b = ub(rng), r_min = urmin(rng);
        const double ratio = std::pow(10.0, lratio(rng));
        const double rate = a / (ratio * r_min);
        const double err = std::abs(oracle::lambda0_bruteforce(a, b, rate, r_min) - lambda0_aimd_full(b, ratio));
        worst = std::max(worst, err);
        if (err <= 1e-3) ++within;
    }
    const double ex = std::abs(oracle::lambda0_bruteforce(1.0, 0.7, 1.0 / (0.001 * 0.05), 0.05) -
                               lambda0_aimd_full(0.7, 0.001));
    return {within == 100, std::to_string(within) + "/100 within 1e-3, worst " + fmt("%.2e", worst) +
                               "; b=0.7 ratio=1e-3 gap " + fmt("%.2e", ex)};
}

// 3. Recovery-time coefficients: library vs a round-stepped chain.
Outcome recovery_coefficients() {
    bool ok = recovery_coefficient(RttKind::Avg, Rational(1), Rational(1, 2)) == Rational(243, 392);
    const auto reno = CcParams::reno();
    const auto creno = CcParams::creno();
    ok = ok && round_to(recovery_coefficient(RttKind::Avg, reno), 2) == 0.62;
    ok = ok && round_to(recovery_coefficient(RttKind::Avg, creno), 2) == 0.65;
    ok = ok && round_to(recovery_coefficient(RttKind::Min, creno), 2) == 0.98;
    ok = ok && round_to(recovery_coefficient(RttKind::Max, creno), 2) == 0.48;
    double worst = 0.0;
    for (const auto& p : {reno, creno}) {
        const RttKind kinds[] = {RttKind::Min, RttKind::Max, RttKind::Avg};
        for (int which = 0; which < 3; ++which) {
            const double lib = recovery_coefficient(kinds[which], p);
            const double chain = oracle::recovery_coefficient_by_rounds(p.a, p.b, which);
            worst = std::max(worst, std::abs(lib - chain) / chain);
        }
    }
    ok = ok && worst < 5e-5; // agreement to 4 significant figures
    return {ok, "Reno avg 243/392; CReno 0.65/0.98/0.48; chain worst rel err " + fmt("%.1e", worst)};
}

// 4. Switchover curve against its rounded form, and equal rates on it.
// Below about 1 pps the implied drop probability exceeds 1, where neither
// response function is defined; the rate comparison skips those points.
Outcome switchover_curve() {
    double worst_fit = 0.0, worst_rate = 0.0;
    int compared = 0;
    const auto cubic = CcParams::cubic();
    const auto curve = sample_switchover_curve(1.0, 1e6, 1201, cubic);
    for (const auto& pt : curve) {
        worst_fit = std::max(worst_fit, std::abs(switchover_rtt_approx(pt.rate_pps) - pt.rtt) / pt.rtt);
        const double p = implied_drop_probability(pt.rate_pps, pt.rtt);
        if (p > 1.0) continue;
        const double rc = rate_creno(p, pt.rtt);
        const double rq = rate_cubic(p, pt.rtt, cubic);
        worst_rate = std::max(worst_rate, std::abs(rc - rq) / rc);
        ++compared;
    }
    return {worst_fit <= 5e-3 && worst_rate <= 1e-9 && compared > 1190,
            "1.22/r^0.4 worst rel err " + fmt("%.2e", worst_fit) + "; rate mismatch " + fmt("%.1e", worst_rate) +
                " over " + std::to_string(compared) + "/" + std::to_string(curve.size()) + " points with p <= 1"};
}

// 5. Dataset weighted averages at table precision.
Outcome dataset_goldens() {
    const auto rows = load_dataset(kDataset);
    const auto all = weighted_summary(rows);
    const auto ex = weighted_summary(rows, {"China"});
    const bool ok = round_to(all.weighted_rtt_ms, 0) == 34.0 && round_to(all.weighted_bw_mbps, 2) == 103.32 &&
                    round_to(ex.weighted_rtt_ms, 0) == 25.0 && round_to(ex.weighted_bw_mbps, 2) == 82.47;
    return {ok, "all " + fixed(all.weighted_rtt_ms, 3) + " ms / " + fixed(all.weighted_bw_mbps, 3) +
                    " Mb/s; excl. China " + fixed(ex.weighted_rtt_ms, 3) + " ms / " + fixed(ex.weighted_bw_mbps, 3) +
                    " Mb/s"};
}

// 6. End-to-end target with stage-wise rounding.
Outcome target_pipeline() {
    const auto rows = load_dataset(kDataset);
    const auto ex = weighted_summary(rows, {"China"});
    const auto rep = compute_target(TargetInputs{ex.weighted_rtt_ms * 1e-3, 2.0, default_mix()}, Rounding::Staged);
    const bool table = round_to(geometry_factor(kLambdaAimd, 0.5), 2) == 0.90 &&
                       round_to(geometry_factor(kLambdaAimd, 0.7), 2) == 0.39 &&
                       round_to(geometry_factor(kLambdaCubic, 0.7), 2) == 0.36;
    return {table && rep.target_ms == 19.0,
            "factors 0.90/0.39/0.36, mix " + fixed(rep.mixed_factor, 2) + ", target " + fixed(rep.target_ms, 2) + " ms"};
}

// 7. The two sawtooth regimes.
Outcome simulation_regimes() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto low = measure_cycles(sim_run(single_flow(4.0)));
    const auto t1 = std::chrono::steady_clock::now();
    const auto high = measure_cycles(sim_run(single_flow(200.0)));
    const auto t2 = std::chrono::steady_clock::now();
    const double s1 = std::chrono::duration<double>(t1 - t0).count();
    const double s2 = std::chrono::duration<double>(t2 - t1).count();
    const bool ok = low.lambda0_hat >= 0.45 && low.lambda0_hat <= 0.65 && high.lambda_hat >= 0.80 &&
                    high.lambda_hat <= 1.00 && s1 < 60.0 && s2 < 60.0;
    return {ok, "4 Mb/s lambda0_hat " + fixed(low.lambda0_hat, 3) + "; 200 Mb/s lambda_hat " +
                    fixed(high.lambda_hat, 3) + " (" + fixed(s1, 2) + " s, " + fixed(s2, 2) + " s)"};
}

// 8. Scaling with RTT and capacity, and the cycle-duration prediction.
Outcome scaling_properties() {
    SimScenario rtt_base = single_flow(100.0, 480.0);
    const auto rtt = rtt_scaling_check(rtt_base, {1.0, 2.0});
    const double amp_ratio = rtt.entries[1].stats.amplitude() / rtt.entries[0].stats.amplitude();

    const auto cap = capacity_invariance_check(single_flow(200.0, 1200.0), {1.0, 2.0, 4.0});

    const auto sc = single_flow(200.0, 1200.0);
    const auto& s = cap.entries[0].stats;
    const double predicted = recovery_time(sc.link_rate, sc.base_rtt + s.mean_q, RttKind::Avg, CcParams::creno());
    const double dur_err = std::abs(s.mean_duration - predicted) / predicted;

    const bool ok = within_rel(amp_ratio, 2.0, 0.15) && cap.q_min_drift < 0.15 && cap.q_max_drift < 0.15 &&
                    dur_err <= 0.10;
    return {ok, "RTT x2 amplitude x" + fixed(amp_ratio, 3) + "; capacity x4 q_min drift " +
                    fixed(100 * cap.q_min_drift, 1) + "%, q_max drift " + fixed(100 * cap.q_max_drift, 1) +
                    "%; cycle " + fixed(s.mean_duration, 3) + " s vs " + fixed(predicted, 3) + " s"};
}

// 9. PI2 invariants over random queue sequences.
Outcome pi2_invariants() {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> uq(0.0, 0.3), ut(0.001, 0.05), up(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 2);
    Pi2Config cfg = Pi2Config::with_default_gains(0.015);
    Pi2State s;
    std::size_t violations = 0;
    for (int i = 0; i < 100000; ++i) {
        if (i % 1000 == 0) cfg = Pi2Config::with_default_gains(ut(rng));
        double q = uq(rng);
        if (pick(rng) == 0) q = cfg.target;
        const auto next = pi2_update(s, q, cfg);
        if (next.p_base < 0.0 || next.p_base > cfg.p_max) ++violations;
        if (pi2_update(s, q + 1e-3, cfg).p_base < next.p_base) ++violations;
        if (pi2_update(s, q, cfg).p_base != next.p_base) ++violations;
        // Sitting at target with no change leaves the probability alone.
        const Pi2State steady{up(rng), cfg.target};
        if (pi2_update(steady, cfg.target, cfg).p_base != steady.p_base) ++violations;
        s = next;
    }
    return {violations == 0, "1e5 updates, " + std::to_string(violations) + " violations"};
}

// 10. Byte-identical traces for a repeated seed.
Outcome determinism() {
    SimScenario sc = single_flow(40.0, 30.0);
    sc.mark_model = MarkModel::Bernoulli;
    sc.seed = 7;
    sc.flows.push_back(FlowConfig{CcParams::cubic()});
    std::ostringstream a, b;
    write_trace_csv(a, sim_run(sc));
    write_trace_csv(b, sim_run(sc));
    return {a.str() == b.str() && !a.str().empty(), std::to_string(a.str().size()) + " bytes, identical"};
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> known;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--known-failures" && i + 1 < argc) {
            std::stringstream ss(argv[++i]);
            std::string item;
            while (std::getline(ss, item, ',')) known.insert(std::stoi(item));
        } else {
            std::fprintf(stderr, "usage: %s [--known-failures N[,N...]]\n", argv[0]);
            return 2;
        }
    }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"geometry oracles", geometry_oracles},
        {"brute-force lambda0 equivalence", bruteforce_equivalence},
        {"recovery-time coefficients", recovery_coefficients},
        {"switchover curve", switchover_curve},
        {"dataset goldens", dataset_goldens},
        {"target pipeline", target_pipeline},
        {"simulation regimes", simulation_regimes},
        {"scaling properties", scaling_properties},
        {"PI2 invariants", pi2_invariants},
        {"determinism", determinism},
    };

    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int n = static_cast<int>(i) + 1;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) failed.insert(n);
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", n, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }

    std::printf("%zu/%zu passed\n", criteria.size() - failed.size(), criteria.size());
    if (!known.empty()) {
        const bool as_expected = failed == known;
        std::printf("known failures: %s\n", as_expected ? "exactly as listed" : "MISMATCH");
        return as_expected ? 0 : 1;
    }
    return failed.empty() ? 0 : 1;
}
