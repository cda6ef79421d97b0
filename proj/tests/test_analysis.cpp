#include <doctest.h>

#include <numbers>
#include <random>

#include "hybridgas/analysis.hpp"
#include "hybridgas/simulate.hpp"
#include "support.hpp"

using namespace hybridgas;
using support::rel_err;

namespace {

constexpr double pi = std::numbers::pi;

SimConfig probe_cfg() {
    SimConfig cfg;
    cfg.record_samples = false;
    return cfg;
}

}  // namespace

TEST_CASE("worked example: displacement, cycle and certificate") {
    const auto spec = support::worked_example();
    const NormalFormSystem nf = normalize(spec);
    const StabilityVerdict v = classify_system(spec);
    REQUIRE(v.verdict == VerdictCase::LimitCycle);
    REQUIRE(v.cycle);
    CHECK(rel_err(v.cycle->x0, std::exp(1.5 * pi)) <= 1e-12);
    CHECK(rel_err(v.cycle->delta_prime, 8.0 / 3.0) <= 1e-12);
    CHECK(v.cycle->stability == CycleStability::Unstable);
    CHECK(rel_err(v.params->K, 1.0) <= 1e-15);
    CHECK(rel_err(v.params->C_star, std::exp(4 * pi)) <= 1e-12);

    for (double x : {0.1, 1.0, 10.0, 100.0, 200.0}) {
        const double want = -std::exp(pi) * std::cbrt(x) + std::exp(-3 * pi) * x * x * x;
        CHECK(rel_err(displacement(x, nf), want) <= 1e-12);
        CHECK(rel_err(displacement(x, *v.params), want) <= 1e-12);
    }
    const double x0 = std::exp(1.5 * pi);
    CHECK(std::abs(displacement(x0, nf)) <= 1e-12 * std::exp(pi) * std::cbrt(x0));
    CHECK(rel_err(displacement_derivative(x0, nf), 8.0 / 3.0) <= 1e-12);
}

TEST_CASE("piecewise-linear case is GAS") {
    const auto spec = support::make_spec(support::companion_focus(-1, 1), support::companion_focus(-1, 1), 0.0,
                                         JumpMap::identity());
    const NormalFormSystem nf = normalize(spec);
    for (double x : {0.5, 1.0, 4.0}) {
        CHECK(rel_err(displacement(x, nf), (-std::exp(pi) + std::exp(-pi)) * x) <= 1e-12);
    }
    CHECK(classify_system(spec).verdict == VerdictCase::GAS);
}

TEST_CASE("node on either side gives the node-case verdict") {
    const auto plus_node = support::make_spec(companion(-3, -2), support::companion_focus(-0.5, 2), 0.7,
                                              JumpMap(2, 3, 0.5, 1.5));
    const StabilityVerdict v = classify_system(plus_node);
    CHECK(v.verdict == VerdictCase::GAS_NodeCase);
    CHECK_FALSE(v.params);
    CHECK_FALSE(v.cycle);
    const auto minus_node = support::make_spec(support::companion_focus(-0.5, 2), companion(-2, -1), 0.0,
                                               JumpMap::identity());
    CHECK(classify_system(minus_node).verdict == VerdictCase::GAS_NodeCase);
    CHECK_THROWS_AS(displacement(1.0, normalize(minus_node)), DomainError);
}

TEST_CASE("derivative agrees with central differences") {
    std::mt19937_64 rng(59);
    for (int i = 0; i < 20; ++i) {
        const auto fp = support::random_focus_pair(rng, 5.0);
        const auto spec = support::make_spec(fp.plus, fp.minus, fp.rho, support::random_jump(rng));
        const DisplacementParams p = displacement_params(normalize(spec));
        const double x = std::exp(support::uniform(rng, -2, 2));
        const double h = 1e-6 * x;
        const double fd = (displacement(x + h, p) - displacement(x - h, p)) / (2 * h);
        const double an = displacement_derivative(x, p);
        // the difference quotient carries rounding of the two terms, not of their sum
        const double scale = std::max(std::abs(an), (p.alpha * std::pow(x, p.exp_right) + p.beta * std::pow(x, p.exp_left)) / x);
        CHECK(std::abs(fd - an) <= 1e-6 * scale);
    }
    const auto lin = support::make_spec(support::companion_focus(-1, 2), support::companion_focus(-0.4, 1), 0.3,
                                        JumpMap(2, 0.5, 1, 1));
    const NormalFormSystem nf = normalize(lin);
    const double d1 = displacement_derivative(0.01, nf);
    for (double x : {0.1, 1.0, 10.0, 1000.0}) CHECK(rel_err(displacement_derivative(x, nf), d1) <= 1e-12);
}

TEST_CASE("sign-change law and hyperbolicity") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 60; ++i) {
        const auto fp = support::random_focus_pair(rng, 5.0);
        JumpMap j = support::random_jump(rng);
        const bool balanced = i % 3 == 0;
        if (balanced) j = JumpMap(j.a(), j.b(), j.r(), 1.0 / j.r());
        const auto spec = support::make_spec(fp.plus, fp.minus, fp.rho, j);
        const StabilityVerdict v = classify_system(spec);
        const DisplacementParams& p = *v.params;
        int changes = 0;
        double first_change = 0.0;
        double prev = 0.0;
        const int n = 10000;
        const double step = std::log(1e12) / (n - 1);
        for (int k = 0; k < n; ++k) {
            const double x = 1e-6 * std::exp(step * k);
            const double d = displacement(x, p);
            if (k > 0 && (d > 0) != (prev > 0)) {
                ++changes;
                first_change = x;
            }
            prev = d;
        }
        if (balanced) {
            CHECK(changes == 0);
            CHECK(v.verdict != VerdictCase::LimitCycle);
        } else {
            REQUIRE(v.verdict == VerdictCase::LimitCycle);
            CHECK(std::abs(v.cycle->delta_prime) > 1e-9);
            CHECK(rel_err(v.cycle->x0, std::pow(p.C_star / p.K, 1.0 / (p.exp_left - p.exp_right))) <= 1e-9);
            if (v.cycle->x0 > 1e-6 && v.cycle->x0 < 1e6) {
                CHECK(changes == 1);
                CHECK(std::abs(std::log(first_change / v.cycle->x0)) <= step);
            } else {
                CHECK(changes == 0);
            }
            const bool unstable = v.cycle->stability == CycleStability::Unstable;
            CHECK(unstable == (p.exp_left > p.exp_right));
            CHECK((displacement(0.5 * v.cycle->x0, p) < 0) == unstable);
            CHECK((displacement(2 * v.cycle->x0, p) > 0) == unstable);
        }
    }
}

TEST_CASE("verdicts agree with simulated orbits") {
    std::mt19937_64 rng(67);
    SimConfig cfg;
    cfg.record_samples = false;
    cfg.t_max = 1e6;
    cfg.max_jumps = 1000000;
    cfg.converge_norm = 1e-6;
    cfg.diverge_norm = 1e3;
    int seen[5] = {0, 0, 0, 0, 0};
    int tested = 0;
    while (tested < 100) {
        const auto fp = support::random_focus_pair(rng, 5.0);
        JumpMap j = support::random_jump(rng);
        if (tested % 2 == 0) j = JumpMap(j.a(), j.b(), 1.0, 1.0);
        const auto spec = support::make_spec(fp.plus, fp.minus, fp.rho, j);
        const StabilityVerdict v = classify_system(spec);
        // skip knife-edge pairs whose orbits contract too slowly to observe
        if (v.verdict != VerdictCase::LimitCycle && std::abs(v.params->log_K - v.params->log_C_star) < 0.05) continue;
        ++tested;
        ++seen[static_cast<int>(v.verdict)];
        const Vec2 start = SigmaPoint::right(1.0).embed(spec.line());
        switch (v.verdict) {
            case VerdictCase::GAS: CHECK(run(start, spec, cfg).termination == Termination::Converged); break;
            case VerdictCase::GloballyUnstable:
                CHECK(run(start, spec, cfg).termination == Termination::Diverged);
                break;
            case VerdictCase::LimitCycle: {
                const double x0 = v.cycle->x0;
                if (x0 < 1e-100 || x0 > 1e100) break;
                CHECK(rel_err(empirical_return_map(x0, spec, probe_cfg()), x0) <= 1e-6);
                break;
            }
            default: FAIL("unexpected verdict");
        }
    }
    CHECK(seen[static_cast<int>(VerdictCase::GAS)] > 0);
    CHECK(seen[static_cast<int>(VerdictCase::GloballyUnstable)] > 0);
    CHECK(seen[static_cast<int>(VerdictCase::LimitCycle)] > 0);
}

TEST_CASE("analytic displacement matches the simulated return legs") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 50; ++i) {
        const auto fp = support::random_focus_pair(rng, 5.0);
        const auto spec = support::make_spec(fp.plus, fp.minus, fp.rho, support::random_jump(rng));
        const DisplacementParams p = displacement_params(normalize(spec));
        for (double x : {0.1, 1.0, 10.0, 100.0}) {
            const double g = empirical_half_backward(x, spec, probe_cfg());
            const double f = empirical_half_forward(x, spec, probe_cfg());
            CHECK(std::abs(displacement(x, p) - (g - f)) <= 1e-6 * std::max(std::abs(g), std::abs(f)));
            CHECK(rel_err(empirical_return_map(x, spec, probe_cfg()), return_map(x, p, spec.jump())) <= 1e-6);
        }
    }
}

TEST_CASE("tuned center closes after one period") {
    std::mt19937_64 rng(73);
    for (int i = 0; i < 10; ++i) {
        const auto fp = support::random_focus_pair(rng, 5.0);
        const double b = support::uniform(rng, 0.1, 10);
        const auto probe = support::make_spec(fp.plus, fp.minus, fp.rho, JumpMap(1, b, 1, 1));
        const double c_star = displacement_params(normalize(probe)).C_star;
        const auto spec = support::make_spec(fp.plus, fp.minus, fp.rho, JumpMap(c_star / b, b, 1, 1));
        const StabilityVerdict v = classify_system(spec);
        CHECK(v.verdict == VerdictCase::GlobalCenter);
        CHECK(rel_err(empirical_return_map(1.0, spec, probe_cfg()), 1.0) <= 1e-6);
        for (double x : {0.01, 1.0, 100.0}) CHECK(std::abs(displacement(x, *v.params)) <= 1e-10 * std::abs(empirical_half_forward(x, spec, probe_cfg())));
    }
}

TEST_CASE("near-center band is reported") {
    const auto base = support::make_spec(support::companion_focus(-1, 1), support::companion_focus(-1, 1), 0.0,
                                         JumpMap::identity());
    const double c_star = displacement_params(normalize(base)).C_star;
    const auto near = support::make_spec(support::companion_focus(-1, 1), support::companion_focus(-1, 1), 0.0,
                                         JumpMap(c_star * (1 + 1e-8), 1, 1, 1));
    const StabilityVerdict v = classify_system(near);
    CHECK(v.verdict == VerdictCase::GloballyUnstable);
    CHECK(v.near_center);
    CHECK_FALSE(classify_system(base).near_center);
}

TEST_CASE("rho to infinity") {
    const RhoInfinityRatio one = rho_infinity_ratio(1, -1, 1, -1, 1);
    CHECK(one.kind == RhoInfinityRatio::Kind::Finite);
    CHECK(one.value == 1.0);
    CHECK(rho_infinity_ratio(3, -1, 1, -1, 1).kind == RhoInfinityRatio::Kind::Zero);
    CHECK(rho_infinity_ratio(1.0 / 3, -1, 1, -1, 1).kind == RhoInfinityRatio::Kind::Infinity);
    const RhoInfinityRatio asym = rho_infinity_ratio(1, -1, 1, -2, 1);
    REQUIRE(asym.kind == RhoInfinityRatio::Kind::Finite);
    CHECK(rel_err(asym.value, std::sqrt(5.0 / 2.0)) <= 1e-15);
    CHECK(rel_err(rho_dependent_factor(1e6, 1, -1, 1, -2, 1), std::sqrt(5.0 / 2.0)) <= 1e-3);
    // at rho = 0 both cosines are -1 and the sines vanish
    CHECK(rel_err(rho_dependent_factor(0.0, 2.5, -0.3, 1.7, -1.1, 0.4), 1.0) <= 1e-12);
}
