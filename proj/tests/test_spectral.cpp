#include <doctest.h>

#include <numbers>
#include <random>

#include "hybridgas/simulate.hpp"
#include "hybridgas/spectral.hpp"
#include "support.hpp"

using namespace hybridgas;
using support::rel_err;

TEST_CASE("classify examples") {
    const SpectralData f = classify(-2, -2);
    REQUIRE(f.tag() == SpectralKind::F);
    CHECK(f.focus().lambda == -1.0);
    CHECK(f.focus().mu == 1.0);

    const SpectralData n1 = classify(-3, -2);
    REQUIRE(n1.tag() == SpectralKind::N1);
    CHECK(std::get<Node1>(n1.kind).r1 == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::get<Node1>(n1.kind).r2 == doctest::Approx(-2.0).epsilon(1e-15));

    const SpectralData n2 = classify(-2, -1);
    REQUIRE(n2.tag() == SpectralKind::N2);
    CHECK(std::get<Node2>(n2.kind).r == -1.0);

    CHECK_THROWS_AS(classify(0.0, -1), HypothesisError);
    CHECK_THROWS_AS(classify(-1, 0.0), HypothesisError);
    CHECK_THROWS_AS(static_cast<void>(n1.focus()), DomainError);
}

TEST_CASE("discriminant band maps to N2") {
    const double sigma = -4.0;
    const double delta = -4.0;  // disc = 0
    CHECK(classify(sigma, delta + 1e-10).tag() == SpectralKind::N2);
    CHECK(classify(sigma, delta - 1e-10).tag() == SpectralKind::N2);
    CHECK(classify(sigma, delta + 1e-6).tag() == SpectralKind::N1);
    CHECK(classify(sigma, delta - 1e-6).tag() == SpectralKind::F);
}

TEST_CASE("N1 eigenvalues satisfy the characteristic identities") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double sigma = -support::uniform(rng, 0.01, 10);
        const double delta = -support::uniform(rng, 0.0, 0.99) * sigma * sigma / 4.0 - 1e-300;
        const SpectralData d = classify(sigma, delta);
        if (d.tag() != SpectralKind::N1) continue;
        const Node1 n = std::get<Node1>(d.kind);
        CHECK(n.r2 < n.r1);
        CHECK(n.r1 < 0.0);
        CHECK(rel_err(n.r1 + n.r2, sigma) <= 1e-12);
        CHECK(rel_err(n.r1 * n.r2, -delta) <= 1e-12);
    }
}

TEST_CASE("region examples") {
    const SwitchingLine flat(0.0);
    CHECK(region_of({1, 1}, classify(-3, -2), Side::Plus, flat) == Region::R1);
    CHECK(region_of({-1, 1}, classify(-2, -1), Side::Plus, flat) == Region::E);
    CHECK(region_of({-3, 1}, classify(-2, -1), Side::Plus, flat) == Region::S2);
    CHECK(region_of({0.3, 2}, classify(-2, -2), Side::Plus, flat) == Region::Whole);
    CHECK(region_of({-1.5, 1}, classify(-3, -2), Side::Plus, flat) == Region::R2);
    CHECK(region_of({-3, 1}, classify(-3, -2), Side::Plus, flat) == Region::R3);
    CHECK(region_of({-2, 1}, classify(-3, -2), Side::Plus, flat) == Region::E2);
    CHECK_THROWS_AS(region_of({-1, 0}, classify(-2, -2), Side::Plus, flat), DomainError);
    CHECK_THROWS_AS(region_of({1, -1}, classify(-2, -2), Side::Plus, flat), DomainError);
}

TEST_CASE("predicted fate table") {
    CHECK(predicted_fate(Region::R2) == Fate::ConvergesToOrigin);
    CHECK(predicted_fate(Region::R1) == Fate::ConvergesToOrigin);
    CHECK(predicted_fate(Region::E1) == Fate::ConvergesToOrigin);
    CHECK(predicted_fate(Region::E2) == Fate::ConvergesToOrigin);
    CHECK(predicted_fate(Region::R3) == Fate::HitsSigmaForward);
    CHECK(predicted_fate(Region::S1) == Fate::ConvergesToOrigin);
    CHECK(predicted_fate(Region::E) == Fate::ConvergesToOrigin);
    CHECK(predicted_fate(Region::S2) == Fate::HitsSigmaForward);
    CHECK(predicted_fate(Region::Whole) == Fate::Both);
}

TEST_CASE("predicted fate agrees with simulation") {
    std::mt19937_64 rng(23);
    SimConfig cfg;
    cfg.converge_norm = 1e-6;
    cfg.t_max = 1e4;
    cfg.record_samples = false;
    const Matrix2 other = support::companion_focus(-1, 1);
    int tested = 0;
    while (tested < 200) {
        const double sigma = -support::uniform(rng, 1, 6);
        const double delta = -support::uniform(rng, 0.05, 0.95) * sigma * sigma / 4.0;
        const double rho = support::uniform(rng, 0, 3);
        const Side side = tested % 2 ? Side::Plus : Side::Minus;
        const Matrix2 node = companion(sigma, delta);
        const auto spec = side == Side::Plus ? support::make_spec(node, other, rho, JumpMap::identity())
                                             : support::make_spec(other, node, rho, JumpMap::identity());
        const double ang = support::uniform(rng, 0, 2 * std::numbers::pi);
        const Vec2 p{std::cos(ang), std::sin(ang)};
        const double h = spec.line().h(p);
        if (std::abs(h) < 1e-3 || (h > 0) != (side == Side::Plus)) continue;
        const SpectralData d = classify(sigma, delta);
        const Fate fate = predicted_fate(region_of(p, d, side, spec.line()));
        const StepResult step = step_to_sigma(p, side, spec, cfg, cfg.t_max);
        if (fate == Fate::ConvergesToOrigin) {
            CHECK(step.status == StepStatus::Converged);
        } else {
            CHECK(step.status == StepStatus::Hit);
        }
        ++tested;
    }
}

TEST_CASE("side behaviour") {
    const SwitchingLine flat(0.0);
    const HurwitzMatrix comp({-3, -2, 1, 0});
    CHECK(side_behaviour(comp, classify(-3, -2), Side::Plus, flat) == SideBehaviour::Capture);
    CHECK(side_behaviour(comp, classify(-3, -2), Side::Minus, flat) == SideBehaviour::Capture);
    const HurwitzMatrix foc({-2, -2, 1, 0});
    CHECK(side_behaviour(foc, classify(-2, -2), Side::Plus, flat) == SideBehaviour::Transit);

    // eigen-lines at 10 and 30 degrees: inside the upper half-plane's closure
    // at rho = 0 but below Sigma^2_rho at rho = 1
    const double a1 = 10.0 * std::numbers::pi / 180.0, a2 = 30.0 * std::numbers::pi / 180.0;
    const Matrix2 v{std::cos(a1), std::cos(a2), std::sin(a1), std::sin(a2)};
    const Matrix2 b = v * Matrix2{-1, 0, 0, -2} * v.inverse();
    const HurwitzMatrix hb(b);
    const SpectralData d = classify(b.trace(), -b.det());
    REQUIRE(d.tag() == SpectralKind::N1);
    CHECK(side_behaviour(hb, d, Side::Plus, SwitchingLine(0.0)) == SideBehaviour::Capture);
    CHECK(side_behaviour(hb, d, Side::Plus, SwitchingLine(1.0)) == SideBehaviour::Transit);
    CHECK(side_behaviour(hb, d, Side::Minus, SwitchingLine(1.0)) == SideBehaviour::Capture);
}
