#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pi2lab/geometry.hpp"
#include "pi2lab/rational.hpp"
#include "pi2lab/units.hpp"

using namespace pi2lab;
using Catch::Approx;

TEST_CASE("lambda0 exact values", "[geometry]") {
    CHECK(lambda0_aimd_approx(Rational(1, 2)) == Rational(5, 9));
    CHECK(lambda0_aimd_approx(Rational(7, 10)) == Rational(9, 17));
    CHECK(lambda0_cubic<Rational>() == Rational(3, 4));
    CHECK(lambda0_aimd_approx(0.5) == Approx(0.556).margin(5e-4));
    CHECK(lambda0_aimd_full(Rational(7, 10), Rational(0)) == Rational(9, 17));
    CHECK_THROWS_AS(lambda0_aimd_approx(1.0), ValidationError);
    CHECK_THROWS_AS(lambda0_aimd_full(0.7, -0.1), ValidationError);
}

TEST_CASE("lambda0 approaches 1/2 for gentle decreases", "[geometry]") {
    double prev = lambda0_aimd_approx(0.1);
    for (double b = 0.2; b < 0.99; b += 0.1) {
        const double l = lambda0_aimd_approx(b);
        CHECK(l < prev);
        CHECK(l > 0.5);
        prev = l;
    }
    CHECK(lambda0_aimd_approx(0.999) == Approx(0.5).margin(1e-3));
}

TEST_CASE("brute-force round averaging converges to the approximate lambda0", "[geometry]") {
    for (double b : {0.5, 0.7, 0.85}) {
        const double r_min = 0.05;
        const double rate = 1e7; // R_a / R_min = 2e-6
        CHECK(oracle::lambda0_bruteforce(1.0, b, rate, r_min) == Approx(lambda0_aimd_approx(b)).margin(1e-4));
    }
}

// The full form carries first-order terms that the round-by-round sum does
// not share (the sum's leading correction has the opposite sign). The gap is
// linear in R_a/R_min; this pins its size rather than claiming agreement.
TEST_CASE("full lambda0 form versus the round-by-round sum", "[geometry]") {
    for (double b : {0.5, 0.7, 0.9}) {
        for (double ratio : {1e-3, 1e-2}) {
            const double r_min = 0.04;
            const double rate = 1.0 / (ratio * r_min);
            const double brute = oracle::lambda0_bruteforce(1.0, b, rate, r_min);
            const double full = lambda0_aimd_full(b, ratio);
            const double slope = b / (2.0 * (1.0 - b)) + b / (1.0 + b);
            CHECK(std::abs(full - brute) <= 1.6 * slope * ratio + 1e-4);
            CHECK(std::abs(lambda0_aimd_approx(b) - brute) <= b / (2.0 * (1.0 - b)) * ratio * 1.6 + 1e-4);
        }
    }
}

TEST_CASE("cubic average RTT", "[geometry]") {
    CHECK(cubic_avg_rtt(Rational(1), Rational(7, 10)) == Rational(37, 40));
    CHECK(cubic_avg_rtt(0.04, 0.7) == Approx(0.037));
    CHECK(cubic_avg_rtt(1.0, 0.0) == 0.75);
    CHECK(cubic_avg_rtt(1.0, 1.0) == 1.0);
    for (double b : {0.3, 0.5, 0.7, 0.9}) {
        const auto p = CcParams::cubic(b);
        const double w = 200.0;
        const double k = cubic_k(w, p);
        const double avg = oracle::simpson([&](double t) { return cubic_window(t, w, p); }, 0.0, k) / k;
        CHECK(avg == Approx(cubic_avg_rtt(w, p.b)).epsilon(1e-6));
    }
}

TEST_CASE("sawtooth RTT scaling", "[geometry]") {
    const auto s = rtt_scaling(0.03, 9.0 / 17.0, 0.7);
    CHECK(s.r_min == Approx(0.7 * s.r_max));
    CHECK(s.r_min + 9.0 / 17.0 * s.d_max == Approx(0.03));
    const auto e = rtt_scaling(Rational(30), Rational(9, 17), Rational(7, 10));
    CHECK(e.r_max == Rational(30 * 170, 146));
}

TEST_CASE("recovery coefficients", "[geometry]") {
    // Exact values for Reno.
    CHECK(recovery_coefficient(RttKind::Avg, Rational(1), Rational(1, 2)) == Rational(243, 392));
    CHECK(recovery_coefficient(RttKind::Max, Rational(1), Rational(1, 2)) == Rational(3, 8));
    CHECK(recovery_coefficient(RttKind::Min, Rational(1), Rational(1, 2)) == Rational(3, 2));

    const auto creno = CcParams::creno();
    CHECK(round_to(recovery_coefficient(RttKind::Avg, creno), 2) == Approx(0.65));
    CHECK(round_to(recovery_coefficient(RttKind::Min, creno), 2) == Approx(0.98));
    CHECK(round_to(recovery_coefficient(RttKind::Max, creno), 2) == Approx(0.48));

    for (const auto& p : {CcParams::reno(), creno, CcParams::creno(0.8)}) {
        for (int which = 0; which < 3; ++which) {
            const auto kind = which == 0 ? RttKind::Min : which == 1 ? RttKind::Max : RttKind::Avg;
            CHECK(recovery_coefficient(kind, p) ==
                  Approx(oracle::recovery_coefficient_by_rounds(p.a, p.b, which)).epsilon(1e-5));
        }
    }
    CHECK_THROWS_AS(recovery_coefficient(RttKind::Avg, CcParams::cubic()), ValidationError);
}

TEST_CASE("recovery time and its inverse", "[geometry]") {
    const auto p = CcParams::creno();
    const double rate = mbps_to_pps(100.0);
    const double t = recovery_time(rate, 0.025, RttKind::Avg, p);
    CHECK(t == Approx(0.653 * rate * 0.025 * 0.025).epsilon(1e-3));
    CHECK(rtt_for_recovery_time(t, rate, RttKind::Avg, p) == Approx(0.025));
    // Recovery time scales with r and R^2.
    CHECK(recovery_time(2 * rate, 0.025, RttKind::Avg, p) == Approx(2 * t));
    CHECK(recovery_time(rate, 0.05, RttKind::Avg, p) == Approx(4 * t));
    CHECK_THROWS_AS(recovery_time(0.0, 0.025, RttKind::Avg, p), ValidationError);
}

TEST_CASE("rounds per cycle", "[geometry]") {
    // J R_a = R_min (1-b)/b
    const auto p = CcParams::reno();
    const double j = rounds_per_cycle(1000.0, 0.05, p);
    CHECK(j * p.a / 1000.0 == Approx(0.05 * 0.5 / 0.5));
    CHECK_THROWS_AS(rounds_per_cycle(1000.0, 0.05, CcParams::cubic()), ValidationError);
}

TEST_CASE("cubic cycle time", "[geometry]") {
    const auto p = CcParams::cubic();
    CHECK(cubic_cycle_time(1000.0, p) == Approx(std::cbrt(750.0)));
    CHECK_THROWS_AS(cubic_cycle_time(1000.0, CcParams::creno()), ValidationError);
}

TEST_CASE("geometry factors", "[geometry]") {
    CHECK(round_to(SawtoothGeometry::for_params(CcParams::reno()).geometry_factor, 2) == Approx(0.90));
    CHECK(round_to(SawtoothGeometry::for_params(CcParams::creno()).geometry_factor, 2) == Approx(0.39));
    CHECK(round_to(SawtoothGeometry::for_params(CcParams::cubic()).geometry_factor, 2) == Approx(0.36));
    CHECK(SawtoothGeometry::for_params(CcParams::cubic()).lambda0 == 0.75);
    CHECK_THROWS_AS(SawtoothGeometry::make(0.5, 1.2, 0.5), ValidationError);
}

TEST_CASE("transition region", "[geometry]") {
    const auto tr = transition_region(mbps_to_pps(100.0), 0.016, 0.100, CcParams::creno());
    CHECK(tr.rtt_floor * 1e3 == Approx(1.7).margin(0.05));
    CHECK(tr.rtt_center * 1e3 == Approx(4.3).margin(0.05));
    CHECK(tr.rtt_center / tr.rtt_floor == Approx(std::sqrt(100.0 / 16.0)));
    Pi2Config bad;
    bad.rmax = 0.001;
    CHECK_THROWS_AS(transition_region(1000.0, bad, CcParams::creno()), ValidationError);
}
