#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <geomphase/qstate.hpp>

using namespace geomphase;
using Catch::Matchers::WithinAbs;

namespace {

TwoLevelState random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return {{g(rng), g(rng)}, {g(rng), g(rng)}};
}

}  // namespace

TEST_CASE("inner product is conjugate-linear in the first argument") {
    const TwoLevelState a{{1.0, 2.0}, {0.5, -1.0}};
    const TwoLevelState b{{-0.3, 0.7}, {2.0, 0.1}};
    const complexd ab = inner(a, b);
    CHECK_THAT(ab.real(), WithinAbs((std::conj(a.c_p) * b.c_p + std::conj(a.c_perp) * b.c_perp).real(), 1e-15));
    CHECK(inner(b, a) == std::conj(ab));
    CHECK_THAT(inner(a, a).real(), WithinAbs(a.norm_sq(), 1e-15));
    CHECK_THAT(inner(a, a).imag(), WithinAbs(0.0, 1e-15));
}

TEST_CASE("norm agrees with the inner product") {
    const TwoLevelState s{{3.0, 0.0}, {0.0, 4.0}};
    CHECK_THAT(s.norm_sq(), WithinAbs(25.0, 1e-14));
    CHECK_THAT(s.norm(), WithinAbs(5.0, 1e-14));
}

TEST_CASE("split sends |p> to the balanced superposition") {
    const TwoLevelState s = split(TwoLevelState{1.0, 0.0});
    const double k = 1.0 / std::numbers::sqrt2;
    CHECK_THAT(std::abs(s.c_p - complexd{k, 0.0}), WithinAbs(0.0, 1e-15));
    CHECK_THAT(std::abs(s.c_perp - complexd{k, 0.0}), WithinAbs(0.0, 1e-15));
}

TEST_CASE("splitter phase lands on the lower component") {
    const double delta = 0.7;
    const TwoLevelState s = split(TwoLevelState{1.0, 0.0}, delta);
    CHECK_THAT(std::arg(s.c_perp), WithinAbs(delta, 1e-15));
    CHECK_THAT(std::arg(s.c_p), WithinAbs(0.0, 1e-15));
}

TEST_CASE("split preserves the norm and split_inverse undoes it") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const TwoLevelState s = random_state(rng);
        const double delta = std::uniform_real_distribution<double>(-6.0, 6.0)(rng);
        const TwoLevelState t = split(s, delta);
        CHECK_THAT(t.norm_sq(), WithinAbs(s.norm_sq(), 1e-12 * s.norm_sq()));
        const TwoLevelState back = split_inverse(t, delta);
        CHECK_THAT(std::abs(back.c_p - s.c_p), WithinAbs(0.0, 1e-12));
        CHECK_THAT(std::abs(back.c_perp - s.c_perp), WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("split rejects the zero state and non-finite phases") {
    CHECK_THROWS_AS(split(TwoLevelState{}), InvalidState);
    CHECK_THROWS_AS(split_inverse(TwoLevelState{}), InvalidState);
    CHECK_THROWS_AS(split(TwoLevelState{1.0, 0.0}, std::nan("")), InvalidConfig);
}

TEST_CASE("absorb damps only the lower amplitude, by sqrt(T)") {
    const TwoLevelState s{{0.6, 0.1}, {0.8, -0.2}};
    const TwoLevelState t = absorb(s, 0.25);
    CHECK(t.c_p == s.c_p);
    CHECK_THAT(std::abs(t.c_perp - 0.5 * s.c_perp), WithinAbs(0.0, 1e-15));
    CHECK(absorb(s, 1.0).c_perp == s.c_perp);
    CHECK(absorb(s, 0.0).c_perp == complexd{0.0, 0.0});
    CHECK_THROWS_AS(absorb(s, -0.1), InvalidConfig);
    CHECK_THROWS_AS(absorb(s, 1.5), InvalidConfig);
}

TEST_CASE("phase_shift turns each component independently") {
    const TwoLevelState s{{1.0, 0.0}, {0.0, 1.0}};
    const TwoLevelState t = phase_shift(s, 0.3, -0.4);
    CHECK_THAT(std::arg(t.c_p), WithinAbs(0.3, 1e-15));
    CHECK_THAT(std::arg(t.c_perp) - std::arg(s.c_perp), WithinAbs(-0.4, 1e-15));
    CHECK_THROWS_AS(phase_shift(s, std::nan(""), 0.0), InvalidConfig);
}

TEST_CASE("second loop produces the damped two-path superposition") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uT(0.0, 1.0);
    std::uniform_real_distribution<double> uphi(-8.0, 8.0);
    for (int i = 0; i < 1000; ++i) {
        InterferometerConfig cfg;
        cfg.T = uT(rng);
        cfg.phi1 = uphi(rng);
        cfg.phi2 = uphi(rng);
        cfg.delta = uphi(rng);
        const TwoLevelState s = evolve_second_loop(cfg);
        const double k = 1.0 / std::numbers::sqrt2;
        const complexd want_up = std::polar(k, cfg.phi1);
        const complexd want_down = std::polar(k * std::sqrt(cfg.T), cfg.phi2 + cfg.delta);
        CHECK_THAT(std::abs(s.c_p - want_up), WithinAbs(0.0, 1e-14));
        CHECK_THAT(std::abs(s.c_perp - want_down), WithinAbs(0.0, 1e-14));
    }
}

TEST_CASE("pipeline norm never grows") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> uphi(-8.0, 8.0);
    for (int i = 0; i < 500; ++i) {
        InterferometerConfig cfg;
        cfg.T = u01(rng);
        cfg.phi1 = uphi(rng);
        cfg.phi2 = uphi(rng);
        cfg.contrast = {u01(rng), u01(rng), 1.0};
        const double out = evolve_second_loop(cfg).norm();
        CHECK(out <= 1.0 + 1e-15);  // the pipeline starts from unit-norm |p>
        if (cfg.T < 0.99 || cfg.contrast.c_up < 0.99 || cfg.contrast.c_down < 0.99)
            CHECK(out < 1.0);
    }
    InterferometerConfig lossless;  // T = 1, unit contrast: nothing absorbed
    CHECK_THAT(evolve_second_loop(lossless).norm(), WithinAbs(1.0, 1e-15));
}

TEST_CASE("global phase passes through every operation") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const TwoLevelState s{{u(rng), u(rng)}, {u(rng), u(rng)}};
        if (s.norm() == 0.0) continue;
        const complexd g = std::polar(1.0, u(rng));
        const TwoLevelState gs{g * s.c_p, g * s.c_perp};
        const double delta = u(rng);
        const TwoLevelState a = phase_shift(absorb(split(s, delta), 0.3), 0.7, -1.1);
        const TwoLevelState b = phase_shift(absorb(split(gs, delta), 0.3), 0.7, -1.1);
        CHECK_THAT(std::abs(b.c_p - g * a.c_p), WithinAbs(0.0, 1e-14));
        CHECK_THAT(std::abs(b.c_perp - g * a.c_perp), WithinAbs(0.0, 1e-14));
        const Projection pa = project_q(a);
        const Projection pb = project_q(b);
        CHECK_THAT(std::abs(pb.amplitude - g * pa.amplitude), WithinAbs(0.0, 1e-14));
    }
}

TEST_CASE("contrast factors scale the two arms of the second loop") {
    InterferometerConfig cfg;
    cfg.T = 0.5;
    cfg.contrast = {0.9, 0.4, 1.0};
    const TwoLevelState s = evolve_second_loop(cfg);
    const double k = 1.0 / std::numbers::sqrt2;
    CHECK_THAT(std::abs(s.c_p), WithinAbs(0.9 * k, 1e-14));
    CHECK_THAT(std::abs(s.c_perp), WithinAbs(0.4 * k * std::sqrt(0.5), 1e-14));
}

TEST_CASE("config validation rejects out-of-domain parameters") {
    InterferometerConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    cfg.T = 1.2;
    CHECK_THROWS_AS(validate(cfg), InvalidConfig);
    cfg.T = 0.5;
    cfg.phi1 = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate(cfg), InvalidConfig);
    cfg.phi1 = 0.0;
    cfg.contrast.v = 1.5;
    CHECK_THROWS_AS(validate(cfg), InvalidConfig);
    cfg.contrast.v = 1.0;
    cfg.contrast.c_down = -0.1;
    CHECK_THROWS_AS(validate(cfg), InvalidConfig);
}

TEST_CASE("projection onto the forward direction") {
    SECTION("reference beam projects to amplitude 1/sqrt(2)") {
        const Projection pr = project_q(TwoLevelState{1.0, 0.0});
        CHECK_THAT(std::abs(pr.amplitude), WithinAbs(1.0 / std::numbers::sqrt2, 1e-15));
        CHECK_THAT(pr.projected.norm_sq(), WithinAbs(0.5, 1e-15));
    }
    SECTION("projected state is collinear with the forward direction") {
        std::mt19937_64 rng(5);
        for (int i = 0; i < 100; ++i) {
            const TwoLevelState s = random_state(rng);
            const Projection pr = project_q(s);
            CHECK_THAT(std::abs(pr.projected.c_p - pr.projected.c_perp), WithinAbs(0.0, 1e-13));
            const double k = 1.0 / std::numbers::sqrt2;
            CHECK_THAT(std::abs(pr.amplitude - (s.c_p + s.c_perp) * k), WithinAbs(0.0, 1e-13));
        }
    }
    SECTION("antisymmetric state projects to zero") {
        const Projection pr = project_q(TwoLevelState{{1.0, 0.0}, {-1.0, 0.0}});
        CHECK_THAT(std::abs(pr.amplitude), WithinAbs(0.0, 1e-15));
    }
    SECTION("projection is idempotent") {
        const TwoLevelState s{{0.3, 0.4}, {-0.2, 0.9}};
        const Projection once = project_q(s);
        const Projection twice = project_q(once.projected);
        CHECK_THAT(std::abs(twice.amplitude - once.amplitude), WithinAbs(0.0, 1e-15));
    }
}
