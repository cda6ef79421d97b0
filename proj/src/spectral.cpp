#include "hybridgas/spectral.hpp"

#include <algorithm>
#include <numbers>

#include <fmt/format.h>

namespace hybridgas {

std::string_view to_string(SpectralKind k) {
    switch (k) {
        case SpectralKind::N1: return "N1";
        case SpectralKind::N2: return "N2";
        case SpectralKind::F: return "F";
    }
    return "?";
}

SpectralKind SpectralData::tag() const {
    if (std::holds_alternative<Node1>(kind)) return SpectralKind::N1;
    if (std::holds_alternative<Node2>(kind)) return SpectralKind::N2;
    return SpectralKind::F;
}

const Focus& SpectralData::focus() const {
    if (const auto* f = std::get_if<Focus>(&kind)) return *f;
    throw DomainError(fmt::format("expected a focus, field is of type {}", to_string(tag())));
}

double discriminant_tolerance(double sigma) { return 1e-9 * std::max(1.0, sigma * sigma); }

SpectralData classify(double sigma, double delta) {
    if (!std::isfinite(sigma) || !std::isfinite(delta) || !(sigma < 0.0) || !(delta < 0.0)) {
        throw HypothesisError(fmt::format(
            "H1 violated: need sigma < 0 and delta < 0 (sigma = {}, delta = {})", sigma, delta));
    }
    const double disc = sigma * sigma + 4.0 * delta;
    SpectralData out;
    out.sigma = sigma;
    out.delta = delta;
    if (std::abs(disc) < discriminant_tolerance(sigma)) {
        out.kind = Node2{sigma / 2.0};
    } else if (disc > 0.0) {
        const double root = std::sqrt(disc);
        // r2 via Vieta to avoid cancellation in sigma/2 + root/2.
        const double r2 = (sigma - root) / 2.0;
        const double r1 = -delta / r2;
        out.kind = Node1{r1, r2};
    } else {
        out.kind = Focus{sigma / 2.0, std::sqrt(-disc) / 2.0};
    }
    return out;
}

std::string_view to_string(Region r) {
    switch (r) {
        case Region::R1: return "R1";
        case Region::E1: return "E1";
        case Region::R2: return "R2";
        case Region::E2: return "E2";
        case Region::R3: return "R3";
        case Region::S1: return "S1";
        case Region::E: return "E";
        case Region::S2: return "S2";
        case Region::Whole: return "Whole";
    }
    return "?";
}

namespace {

// Sign of x - r y with a 1e-12 band mapped to zero (the invariant lines).
int eigenline_side(Vec2 p, double r) {
    const double d = p.x - r * p.y;
    if (std::abs(d) <= 1e-12 * std::max({1.0, std::abs(p.x), std::abs(r * p.y)})) return 0;
    return d > 0.0 ? 1 : -1;
}

}  // namespace

Region region_of(Vec2 p, const SpectralData& spec, Side side, const SwitchingLine& line) {
    const double h = line.h(p);
    if (h == 0.0) throw DomainError("region_of: point lies on Σ_ρ");
    if ((h > 0.0) != (side == Side::Plus)) throw DomainError("region_of: point on the wrong side");

    // Below the line the inequalities flip so that labels keep their meaning.
    const int orient = side == Side::Plus ? 1 : -1;
    if (const auto* n1 = std::get_if<Node1>(&spec.kind)) {
        const int s1 = orient * eigenline_side(p, n1->r1);
        const int s2 = orient * eigenline_side(p, n1->r2);
        if (s1 > 0) return Region::R1;
        if (s1 == 0) return Region::E1;
        if (s2 > 0) return Region::R2;
        if (s2 == 0) return Region::E2;
        return Region::R3;
    }
    if (const auto* n2 = std::get_if<Node2>(&spec.kind)) {
        const int s = orient * eigenline_side(p, n2->r);
        if (s > 0) return Region::S1;
        if (s == 0) return Region::E;
        return Region::S2;
    }
    return Region::Whole;
}

std::string_view to_string(Fate f) {
    switch (f) {
        case Fate::ConvergesToOrigin: return "converges";
        case Fate::HitsSigmaForward: return "hits_sigma";
        case Fate::Both: return "both";
    }
    return "?";
}

Fate predicted_fate(Region region) {
    switch (region) {
        case Region::R1:
        case Region::E1:
        case Region::R2:
        case Region::E2:
        case Region::S1:
        case Region::E: return Fate::ConvergesToOrigin;
        case Region::R3:
        case Region::S2: return Fate::HitsSigmaForward;
        case Region::Whole: return Fate::Both;
    }
    return Fate::Both;
}

std::string_view to_string(SideBehaviour b) {
    return b == SideBehaviour::Capture ? "capture" : "transit";
}

namespace {

Vec2 eigenvector(const Matrix2& m, double r) {
    const Vec2 u{m.b12, r - m.b11};
    const Vec2 v{r - m.b22, m.b21};
    return norm(u) >= norm(v) ? u : v;
}

// Angle of the line spanned by v, in [0, pi).
double line_angle(Vec2 v) {
    double a = std::atan2(v.y, v.x);
    if (a < 0.0) a += std::numbers::pi;
    if (a >= std::numbers::pi) a -= std::numbers::pi;
    return a;
}

}  // namespace

SideBehaviour side_behaviour(const HurwitzMatrix& b, const SpectralData& spec, Side side,
                             const SwitchingLine& line) {
    if (spec.is_focus()) return SideBehaviour::Transit;
    // The lower wedge has opening pi + atan(rho) >= pi, so it always holds a
    // ray of every eigen-line (never on its boundary, by the crossing property).
    if (side == Side::Minus) return SideBehaviour::Capture;

    const double theta = std::atan(line.rho());
    auto inside = [&](double r) {
        const double a = line_angle(eigenvector(b.matrix(), r));
        return a > theta && a < std::numbers::pi;
    };
    if (const auto* n1 = std::get_if<Node1>(&spec.kind)) {
        return inside(n1->r1) || inside(n1->r2) ? SideBehaviour::Capture : SideBehaviour::Transit;
    }
    return inside(std::get<Node2>(spec.kind).r) ? SideBehaviour::Capture : SideBehaviour::Transit;
}

}  // namespace hybridgas
