#include "hybridgas/normal_form.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace hybridgas {

double eta(const HurwitzMatrix& b, double rho) {
    const Matrix2& m = b.matrix();
    return m.b21 + (m.b22 - m.b11) * rho - m.b12 * rho * rho;
}

std::string CrossingViolation::describe() const {
    const char* where = branch == SigmaBranch::Sigma1 ? "Σ¹" : "Σ²_ρ";
    const char* why = failure == CrossingFailure::Tangency
                          ? "a vector field is tangent to the line"
                          : "the vector fields cross in opposite directions";
    return fmt::format("crossing violated on {}: {}", where, why);
}

namespace {

std::optional<CrossingViolation> product_check(double plus, double minus, SigmaBranch branch) {
    if (plus == 0.0 || minus == 0.0) return CrossingViolation{branch, CrossingFailure::Tangency};
    if (plus * minus < 0.0) return CrossingViolation{branch, CrossingFailure::SignMismatch};
    return std::nullopt;
}

}  // namespace

std::optional<CrossingViolation> crossing_check(const HurwitzMatrix& b_plus,
                                                const HurwitzMatrix& b_minus, double rho) {
    // On Sigma^1 grad h = (0, 1) and <B (x, 0), grad h> = b21 x.
    const auto s1 = product_check(b_plus.matrix().b21, b_minus.matrix().b21, SigmaBranch::Sigma1);
    const auto s2 = product_check(eta(b_plus, rho), eta(b_minus, rho), SigmaBranch::Sigma2);
    // Tangencies first (Sigma^2_rho before Sigma^1: eta = 0 also leaves the
    // conjugation undefined), then sign mismatches in branch order.
    for (const auto& v : {s2, s1}) {
        if (v && v->failure == CrossingFailure::Tangency) return v;
    }
    return s1 ? s1 : s2;
}

Matrix2 conjugation_matrix(const HurwitzMatrix& b, double rho) {
    const double e = eta(b, rho);
    if (e == 0.0) {
        throw CrossingError(SigmaBranch::Sigma2, CrossingFailure::Tangency,
                            "conjugation undefined: eta = 0 (field tangent to Σ²_ρ)");
    }
    const Matrix2& m = b.matrix();
    const double delta = b.neg_det();
    const double p = ((delta - m.b12) * rho + m.b22) / e;
    const double q = (m.b12 * rho * rho + m.b11 * rho - 1.0) / e;
    return {1.0 - p * rho, p, rho + q * rho, -q};
}

double conjugation_det(const HurwitzMatrix& b, double rho) {
    const double delta = b.neg_det();
    const double sigma = b.trace();
    return -(delta * rho * rho + sigma * rho - 1.0) / eta(b, rho);
}

std::string_view to_string(Orientation o) {
    switch (o) {
        case Orientation::Counterclockwise: return "counterclockwise";
        case Orientation::Clockwise: return "clockwise";
        case Orientation::Mixed: return "mixed";
    }
    return "?";
}

Orientation orientation_of(const HybridSystemSpec& spec) {
    // Crossing makes the signs agree across the two fields, so B+ decides.
    const double on_sigma1 = spec.b_plus().matrix().b21;
    const double on_sigma2 = eta(spec.b_plus(), spec.line().rho());
    if (on_sigma1 > 0.0 && on_sigma2 > 0.0) return Orientation::Counterclockwise;
    if (on_sigma1 < 0.0 && on_sigma2 < 0.0) return Orientation::Clockwise;
    return Orientation::Mixed;
}

NormalFormSystem::NormalFormSystem(NormalFormSide plus, NormalFormSide minus, SwitchingLine line,
                                   JumpMap jump, Orientation orientation)
    : plus_(plus), minus_(minus), line_(line), jump_(jump), orientation_(orientation) {}

namespace {

NormalFormSide build_side(const HurwitzMatrix& b, double rho) {
    NormalFormSide side;
    side.sigma = b.trace();
    side.delta = b.neg_det();
    side.original = b.matrix();
    side.conjugation = conjugation_matrix(b, rho);

    const Matrix2& c = side.conjugation;
    const Matrix2 a = side.companion_matrix();
    const Matrix2 c_inv = c.inverse();
    const Matrix2 residual = c * b.matrix() * c_inv - a;
    const double scale = std::max(1.0, a.max_abs()) * std::max(1.0, c.max_abs() * c_inv.max_abs());
    if (residual.max_abs() > 1e-10 * scale) {
        throw Error(fmt::format("normal form self-check failed: |C B C⁻¹ - A| = {:.3g}",
                                residual.max_abs()));
    }
    const Vec2 on_ray{1.0, rho};
    const Vec2 image = c * on_ray;
    if (norm(image - on_ray) > 1e-12 * std::max(1.0, c.max_abs()) * norm(on_ray)) {
        throw Error("normal form self-check failed: C does not fix Σ²_ρ");
    }

    side.sigma1_image = c * Vec2{-1.0, 0.0};
    side.preserves_sigma1 =
        norm(side.sigma1_image - Vec2{-1.0, 0.0}) <= 1e-12 * std::max(1.0, c.max_abs());
    if (side.preserves_sigma1) side.sigma1_image = {-1.0, 0.0};
    return side;
}

}  // namespace

NormalFormSystem normalize(const HybridSystemSpec& spec) {
    const double rho = spec.line().rho();
    return {build_side(spec.b_plus(), rho), build_side(spec.b_minus(), rho), spec.line(),
            spec.jump(), orientation_of(spec)};
}

}  // namespace hybridgas
