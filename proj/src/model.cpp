#include "hybridgas/model.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "hybridgas/normal_form.hpp"

namespace hybridgas {

bool Matrix2::is_finite() const {
    return std::isfinite(b11) && std::isfinite(b12) && std::isfinite(b21) && std::isfinite(b22);
}

Matrix2 Matrix2::inverse() const {
    const double d = det();
    if (d == 0.0 || !std::isfinite(d)) {
        throw DomainError("singular 2x2 matrix");
    }
    return {b22 / d, -b12 / d, -b21 / d, b11 / d};
}

double Matrix2::max_abs() const {
    return std::max({std::abs(b11), std::abs(b12), std::abs(b21), std::abs(b22)});
}

HurwitzMatrix::HurwitzMatrix(const Matrix2& m) : m_(m) {
    if (!m.is_finite()) {
        throw HypothesisError("H1 violated: matrix has non-finite entries");
    }
    if (!(m.trace() < 0.0) || !(m.det() > 0.0)) {
        throw HypothesisError(fmt::format(
            "H1 violated: trace ≥ 0 or det ≤ 0 (trace = {}, det = {})", m.trace(), m.det()));
    }
}

std::string_view to_string(Side s) { return s == Side::Plus ? "+" : "-"; }

SwitchingLine::SwitchingLine(double rho) : rho_(rho) {
    if (!std::isfinite(rho) || rho < 0.0) {
        throw HypothesisError(fmt::format("switching slope rho must be finite and ≥ 0, got {}", rho));
    }
}

std::string_view to_string(Branch b) {
    switch (b) {
        case Branch::Left: return "left";
        case Branch::Right: return "right";
        case Branch::Origin: return "origin";
    }
    return "?";
}

SigmaPoint SigmaPoint::from_coordinate(double x) {
    if (x < 0.0) return {Branch::Left, x};
    if (x > 0.0) return {Branch::Right, x};
    return origin();
}

SigmaPoint SigmaPoint::left(double x) {
    if (!(x <= 0.0)) throw DomainError(fmt::format("left-branch coordinate must be ≤ 0, got {}", x));
    return x == 0.0 ? origin() : SigmaPoint{Branch::Left, x};
}

SigmaPoint SigmaPoint::right(double x) {
    if (!(x >= 0.0)) throw DomainError(fmt::format("right-branch coordinate must be ≥ 0, got {}", x));
    return x == 0.0 ? origin() : SigmaPoint{Branch::Right, x};
}

Vec2 SigmaPoint::embed(const SwitchingLine& line) const {
    switch (branch) {
        case Branch::Left: return {coordinate, 0.0};
        case Branch::Right: return {coordinate, line.rho() * coordinate};
        case Branch::Origin: break;
    }
    return {};
}

JumpMap::JumpMap(double a, double b, double r, double s) : a_(a), b_(b), r_(r), s_(s) {
    for (double v : {a, b, r, s}) {
        if (!std::isfinite(v) || !(v > 0.0)) {
            throw HypothesisError(fmt::format(
                "jump parameters must be finite and > 0 (a={}, b={}, r={}, s={})", a, b, r, s));
        }
    }
}

SigmaPoint jump_apply(const SigmaPoint& p, const JumpMap& jump, const SwitchingLine& /*line*/) {
    switch (p.branch) {
        case Branch::Left:
            return SigmaPoint::left(-jump.a() * std::pow(std::abs(p.coordinate), jump.r()));
        case Branch::Right:
            return SigmaPoint::right(jump.b() * std::pow(p.coordinate, jump.s()));
        case Branch::Origin: break;
    }
    return SigmaPoint::origin();
}

SigmaPoint jump_invert(const SigmaPoint& p, const JumpMap& jump, const SwitchingLine& /*line*/) {
    switch (p.branch) {
        case Branch::Left:
            return SigmaPoint::left(-std::pow(std::abs(p.coordinate / jump.a()), 1.0 / jump.r()));
        case Branch::Right:
            return SigmaPoint::right(std::pow(p.coordinate / jump.b(), 1.0 / jump.s()));
        case Branch::Origin: break;
    }
    return SigmaPoint::origin();
}

HybridSystemSpec::HybridSystemSpec(HurwitzMatrix b_plus, HurwitzMatrix b_minus, SwitchingLine line,
                                   JumpMap jump)
    : b_plus_(b_plus), b_minus_(b_minus), line_(line), jump_(jump) {
    if (auto violation = crossing_check(b_plus_, b_minus_, line_.rho())) {
        throw CrossingError(violation->branch, violation->failure, violation->describe());
    }
}

}  // namespace hybridgas
