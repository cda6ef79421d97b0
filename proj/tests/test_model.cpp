#include <doctest.h>

#include <random>
#include <string>

#include "hybridgas/model.hpp"
#include "support.hpp"

using namespace hybridgas;
using support::rel_err;

TEST_CASE("hurwitz matrix rejects saddles and accepts the worked example") {
    try {
        HurwitzMatrix saddle({1, 0, 0, -1});
        FAIL("saddle accepted");
    } catch (const HypothesisError& e) {
        CHECK(std::string(e.what()).find("H1 violated: trace ≥ 0 or det ≤ 0") != std::string::npos);
    }
    CHECK_THROWS_AS(HurwitzMatrix({-1, 0, 0, 0}), HypothesisError);  // det = 0
    CHECK_THROWS_AS(HurwitzMatrix({0, 1, -1, 0}), HypothesisError);  // center
    const HurwitzMatrix b({-2, -2, 1, 0});
    CHECK(b.trace() == -2.0);
    CHECK(b.neg_det() == -2.0);
}

TEST_CASE("switching line") {
    CHECK_THROWS_AS(SwitchingLine(-0.1), HypothesisError);
    CHECK_THROWS_AS(SwitchingLine(std::nan("")), HypothesisError);
    const SwitchingLine line(2.0);
    CHECK(line.h({-1.0, 3.0}) == 3.0);
    CHECK(line.h({1.0, 3.0}) == 1.0);
    CHECK(line.h({1.0, 2.0}) == 0.0);
}

TEST_CASE("sigma points") {
    const SwitchingLine line(1.5);
    CHECK(SigmaPoint::left(-2).embed(line) == Vec2{-2, 0});
    CHECK(SigmaPoint::right(2).embed(line) == Vec2{2, 3});
    CHECK(SigmaPoint::left(0).branch == Branch::Origin);
    CHECK_THROWS_AS(SigmaPoint::left(1), DomainError);
    CHECK_THROWS_AS(SigmaPoint::right(-1), DomainError);
    CHECK(SigmaPoint::from_coordinate(-3).branch == Branch::Left);
}

TEST_CASE("jump map examples") {
    const SwitchingLine line(1.0);
    const JumpMap cube(1, 1, 3, 3);
    CHECK(jump_apply(SigmaPoint::left(-2), cube, line) == SigmaPoint::left(-8));
    CHECK(jump_invert(SigmaPoint::left(-8), cube, line).coordinate == doctest::Approx(-2).epsilon(1e-15));
    const JumpMap half(1, 0.5, 1, 2);
    const SigmaPoint r = jump_apply(SigmaPoint::right(2), half, line);
    CHECK(r == SigmaPoint::right(2));
    CHECK(r.embed(line) == Vec2{2, 2});
    CHECK(jump_invert(SigmaPoint::right(2), half, line) == SigmaPoint::right(2));
    CHECK(jump_invert(SigmaPoint::origin(), half, line) == SigmaPoint::origin());
    CHECK(jump_apply(SigmaPoint::origin(), cube, line) == SigmaPoint::origin());
    for (double x : {-3.5, -1e-3, 0.25, 7.0}) {
        const SigmaPoint p = SigmaPoint::from_coordinate(x);
        CHECK(jump_apply(p, JumpMap::identity(), line) == p);
    }
    CHECK(JumpMap::identity().is_identity());
    CHECK_FALSE(cube.is_identity());
    CHECK_THROWS_AS(JumpMap(0, 1, 1, 1), HypothesisError);
    CHECK_THROWS_AS(JumpMap(1, 1, -1, 1), HypothesisError);
    CHECK_THROWS_AS(JumpMap(1, std::numeric_limits<double>::infinity(), 1, 1), HypothesisError);
}

TEST_CASE("jump round trip, branch preservation and monotonicity") {
    std::mt19937_64 rng(11);
    const SwitchingLine line(0.7);
    for (int i = 0; i < 5000; ++i) {
        const JumpMap j = support::random_jump(rng);
        const double x = (i % 2 ? 1.0 : -1.0) * std::exp(support::uniform(rng, -5, 5));
        const SigmaPoint p = SigmaPoint::from_coordinate(x);
        const SigmaPoint there = jump_apply(p, j, line);
        const SigmaPoint back = jump_invert(there, j, line);
        REQUIRE(there.branch == p.branch);
        CHECK(rel_err(back.coordinate, x) <= 1e-12);
        CHECK(rel_err(jump_apply(jump_invert(p, j, line), j, line).coordinate, x) <= 1e-12);
        const SigmaPoint further = jump_apply(SigmaPoint::from_coordinate(x * 1.01), j, line);
        CHECK(std::abs(further.coordinate) > std::abs(there.coordinate));
    }
}

TEST_CASE("spec construction validates crossing") {
    CHECK_THROWS_AS(support::make_spec({-1, 0, 0, -1}, {-1, 0, 0, -1}, 1.0, JumpMap::identity()), CrossingError);
    CHECK_NOTHROW(support::worked_example());
}
