#include "hybridgas/flow.hpp"

#include <algorithm>
#include <cstdint>
#include <numbers>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

namespace hybridgas {

namespace {

constexpr double pi = std::numbers::pi;

// Root of f on [lo, hi] with f(lo) and f(hi) of opposite signs.
template <class F>
double bracketed_root(F f, double lo, double hi) {
    std::uintmax_t iterations = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iterations);
    return 0.5 * (a + b);
}

SpectralData spectral_of(const NormalFormSide& side) { return classify(side.sigma, side.delta); }

}  // namespace

FocusFlowParams::FocusFlowParams(double lambda_, double mu_) : lambda(lambda_), mu(mu_) {
    if (!(lambda < 0.0) || !(mu > 0.0) || !std::isfinite(lambda) || !std::isfinite(mu)) {
        throw HypothesisError(
            fmt::format("focus parameters need lambda < 0 < mu (lambda = {}, mu = {})", lambda, mu));
    }
}

Vec2 focus_flow(double t, Vec2 p, const FocusFlowParams& params) {
    const double lam = params.lambda;
    const double mu = params.mu;
    const double e = std::exp(lam * t);
    const double c = std::cos(mu * t);
    const double s = std::sin(mu * t);
    return {e * (p.x * c + (lam * p.x - params.prod() * p.y) * s / mu),
            e * (p.y * c + (p.x - lam * p.y) * s / mu)};
}

Vec2 node_flow(double t, Vec2 p, const SpectralData& spec) {
    if (const auto* n1 = std::get_if<Node1>(&spec.kind)) {
        // Eigenvectors of [[sigma, delta], [1, 0]] are (r, 1).
        const double r1 = n1->r1;
        const double r2 = n1->r2;
        const double c1 = (p.x - r2 * p.y) / (r1 - r2);
        const double c2 = (r1 * p.y - p.x) / (r1 - r2);
        const double e1 = c1 * std::exp(r1 * t);
        const double e2 = c2 * std::exp(r2 * t);
        return {e1 * r1 + e2 * r2, e1 + e2};
    }
    if (const auto* n2 = std::get_if<Node2>(&spec.kind)) {
        // A - rI = [[r, delta], [1, -r]], nilpotent when delta = -r^2.
        const double r = n2->r;
        const double e = std::exp(r * t);
        return {e * (p.x + t * (r * p.x + spec.delta * p.y)), e * (p.y + t * (p.x - r * p.y))};
    }
    throw DomainError("node_flow called on a focus");
}

Vec2 companion_flow(double t, Vec2 p, const SpectralData& spec) {
    if (spec.is_focus()) return focus_flow(t, p, FocusFlowParams(spec.focus()));
    return node_flow(t, p, spec);
}

double crossing_residual(double t, double rho, double lambda, double mu, Side side) {
    const FocusFlowParams params(lambda, mu);
    const double signed_t = side == Side::Plus ? t : -t;
    return focus_flow(signed_t, {1.0, rho}, params).y;
}

namespace {

double crossing_x(double t, double rho, const FocusFlowParams& params, Side side) {
    return focus_flow(side == Side::Plus ? t : -t, {1.0, rho}, params).x;
}

bool is_first_sigma1_hit(double t, double rho, const FocusFlowParams& params, Side side) {
    if (!(t > 0.0) || !std::isfinite(t)) return false;
    const Vec2 start{1.0, rho};
    const double residual = crossing_residual(t, rho, params.lambda, params.mu, side);
    const double scale = norm(focus_flow(side == Side::Plus ? t : -t, start, params)) + norm(start);
    if (std::abs(residual) > 1e-10 * (1.0 + scale)) return false;
    if (!(crossing_x(t, rho, params, side) < 0.0)) return false;
    // Zeros of the y-component are exactly pi / mu apart and alternate in x.
    const double previous = t - pi / params.mu;
    return previous <= 1e-12 * t || crossing_x(previous, rho, params, side) > 0.0;
}

}  // namespace

double crossing_time_by_root_finding(double rho, double lambda, double mu, Side side) {
    const FocusFlowParams params(lambda, mu);
    auto y = [&](double t) { return crossing_residual(t, rho, lambda, mu, side); };
    constexpr int grid = 4096;
    const double step = 2.0 * pi / mu / grid;
    double t_prev = step;
    double y_prev = y(t_prev);
    for (int i = 2; i <= grid; ++i) {
        const double t = i * step;
        const double y_now = y(t);
        if (y_now == 0.0 && crossing_x(t, rho, params, side) < 0.0) return t;
        if ((y_prev < 0.0) != (y_now < 0.0) && y_prev != 0.0) {
            const double root = bracketed_root(y, t_prev, t);
            if (crossing_x(root, rho, params, side) < 0.0) return root;
        }
        t_prev = t;
        y_prev = y_now;
    }
    throw Error(fmt::format("no Σ¹ crossing found for lambda = {}, mu = {}, rho = {}", lambda, mu, rho));
}

double crossing_time(double rho, double lambda, double mu, Side side) {
    if (!(rho >= 0.0) || !std::isfinite(rho)) {
        throw DomainError(fmt::format("crossing_time needs rho ≥ 0, got {}", rho));
    }
    const FocusFlowParams params(lambda, mu);
    const double branch = side == Side::Plus ? 1.0 : -1.0;
    const double t = (branch * std::atan(mu * rho / (lambda * rho - 1.0)) + pi) / mu;
    if (is_first_sigma1_hit(t, rho, params, side)) return t;
    return crossing_time_by_root_finding(rho, lambda, mu, side);
}

ReturnCoefficients return_coefficients(const NormalFormSystem& nf) {
    const double rho = nf.line().rho();
    const FocusFlowParams plus(spectral_of(nf.plus()).focus());
    const FocusFlowParams minus(spectral_of(nf.minus()).focus());
    return {(plus.lambda - plus.prod() * rho) / plus.mu, (minus.lambda - minus.prod() * rho) / minus.mu,
            crossing_time(rho, plus.lambda, plus.mu, Side::Plus),
            crossing_time(rho, minus.lambda, minus.mu, Side::Minus)};
}

namespace {

Transit focus_transit(const Focus& f, Vec2 entry, Vec2 exit) {
    const FocusFlowParams params(f);
    // flow(t, u) = e^{lambda t} (cos(mu t) u + sin(mu t) M u)
    const Vec2 mu_entry{(params.lambda * entry.x - params.prod() * entry.y) / params.mu,
                        (entry.x - params.lambda * entry.y) / params.mu};
    const double p = cross(entry, exit);
    const double q = cross(mu_entry, exit);
    // p cos(tau) + q sin(tau) vanishes at tau = atan2(q, p) + pi/2 + k pi.
    double tau = std::atan2(q, p) + pi / 2.0;
    while (tau <= 0.0) tau += pi;
    while (tau > pi) tau -= pi;
    auto direction = [&](double at) {
        return std::cos(at) * entry + std::sin(at) * mu_entry;
    };
    if (dot(direction(tau), exit) < 0.0) tau += pi;
    const double time = tau / params.mu;
    const Vec2 end = std::exp(params.lambda * time) * direction(tau);
    return {time, dot(end, exit) / dot(exit, exit)};
}

// A vector parallel to node_flow(t, u) that does not underflow for large t.
Vec2 node_direction(double t, Vec2 u, const SpectralData& spec) {
    if (const auto* n1 = std::get_if<Node1>(&spec.kind)) {
        const double c1 = (u.x - n1->r2 * u.y) / (n1->r1 - n1->r2);
        const double c2 = (n1->r1 * u.y - u.x) / (n1->r1 - n1->r2);
        const double decay = std::exp((n1->r2 - n1->r1) * t);
        return {c1 * n1->r1 + c2 * decay * n1->r2, c1 + c2 * decay};
    }
    const double r = std::get<Node2>(spec.kind).r;
    const double w = 1.0 / (1.0 + t);
    return {w * u.x + (1.0 - w) * (r * u.x + spec.delta * u.y),
            w * u.y + (1.0 - w) * (u.x - r * u.y)};
}

Transit node_transit(const SpectralData& spec, Vec2 entry, Vec2 exit) {
    const Matrix2 a = companion(spec.sigma, spec.delta);
    const double rotation = cross(entry, a * entry) > 0.0 ? 1.0 : -1.0;
    const double target = std::atan2(cross(entry, exit), dot(entry, exit));
    if (!(rotation * target > 0.0)) {
        throw DomainError("node field rotates away from the exit ray");
    }
    auto gap = [&](double t) {
        const Vec2 d = node_direction(t, entry, spec);
        return rotation * (std::atan2(cross(entry, d), dot(entry, d)) - target);
    };
    const double rate = std::max(std::abs(spec.sigma), 1e-3);
    double lo = 0.0;
    double hi = 1.0 / rate;
    while (gap(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6 / rate) {
            throw DomainError("node field captures the orbit before it reaches the exit ray");
        }
    }
    const double time = bracketed_root(gap, lo, hi);
    const Vec2 end = node_flow(time, entry, spec);
    return {time, dot(end, exit) / dot(exit, exit)};
}

}  // namespace

Transit transit(const SpectralData& spec, Vec2 entry, Vec2 exit) {
    if (const auto* f = std::get_if<Focus>(&spec.kind)) return focus_transit(*f, entry, exit);
    return node_transit(spec, entry, exit);
}

Side leg_side(const NormalFormSystem& nf, Leg leg) {
    switch (nf.orientation()) {
        case Orientation::Counterclockwise: return leg == Leg::Outbound ? Side::Plus : Side::Minus;
        case Orientation::Clockwise: return leg == Leg::Outbound ? Side::Minus : Side::Plus;
        case Orientation::Mixed: break;
    }
    throw DomainError("mixed orientation: one half-plane absorbs every orbit, no return map");
}

namespace {

void require_transit(const NormalFormSystem& nf, Side side) {
    const NormalFormSide& s = nf.side(side);
    const SpectralData spec = spectral_of(s);
    if (side_behaviour(HurwitzMatrix(s.original), spec, side, nf.line()) == SideBehaviour::Capture) {
        throw DomainError(fmt::format(
            "the {} field (type {}) captures every orbit entering its half-plane; no return map",
            to_string(side), to_string(spec.tag())));
    }
}

}  // namespace

HalfReturnGains half_return_gains_general(const NormalFormSystem& nf) {
    const Side out = leg_side(nf, Leg::Outbound);
    const Side in = opposite(out);
    require_transit(nf, out);
    require_transit(nf, in);
    const Vec2 ray2 = nf.line().right_direction();
    const NormalFormSide& s_out = nf.side(out);
    const NormalFormSide& s_in = nf.side(in);
    const Transit t_out = transit(spectral_of(s_out), ray2, s_out.sigma1_image);
    const Transit t_in = transit(spectral_of(s_in), s_in.sigma1_image, ray2);
    return {out, t_out.gain, 1.0 / t_in.gain, t_out.time, t_in.time, false};
}

HalfReturnGains half_return_gains(const NormalFormSystem& nf) {
    if (!nf.canonical() || !classify(nf.plus().sigma, nf.plus().delta).is_focus() ||
        !classify(nf.minus().sigma, nf.minus().delta).is_focus()) {
        return half_return_gains_general(nf);
    }
    const double rho = nf.line().rho();
    const ReturnCoefficients rc = return_coefficients(nf);
    const FocusFlowParams plus(spectral_of(nf.plus()).focus());
    const FocusFlowParams minus(spectral_of(nf.minus()).focus());

    const double forward =
        std::exp(plus.lambda * rc.t_plus) *
        (std::cos(plus.mu * rc.t_plus) + rc.phi_plus * std::sin(plus.mu * rc.t_plus));
    const double backward =
        std::exp(-minus.lambda * rc.t_minus) *
        (std::cos(minus.mu * rc.t_minus) - rc.phi_minus * std::sin(minus.mu * rc.t_minus));
    // Counterclockwise rotation lands both on the negative x-axis.
    if (!(forward < 0.0) || !(backward < 0.0)) {
        throw Error(fmt::format("half-return sign check failed (rho = {}): x+ = {}, x- = {}", rho,
                                forward, backward));
    }
    return {Side::Plus, -forward, -backward, rc.t_plus, rc.t_minus, true};
}

double half_return_forward(double x, const NormalFormSystem& nf) {
    if (!(x > 0.0)) throw DomainError(fmt::format("half_return_forward needs x > 0, got {}", x));
    const HalfReturnGains g = half_return_gains(nf);
    const SigmaPoint hit = SigmaPoint::left(-g.outbound * x);
    return jump_apply(hit, nf.jump(), nf.line()).coordinate;
}

double half_return_backward(double x, const NormalFormSystem& nf) {
    if (!(x > 0.0)) throw DomainError(fmt::format("half_return_backward needs x > 0, got {}", x));
    const HalfReturnGains g = half_return_gains(nf);
    const SigmaPoint pre = jump_invert(SigmaPoint::right(x), nf.jump(), nf.line());
    return -g.inbound_backward * pre.coordinate;
}

}  // namespace hybridgas
