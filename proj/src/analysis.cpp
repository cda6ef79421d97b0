#include "hybridgas/analysis.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

namespace hybridgas {

namespace {

bool same_exponent(double r, double inv_s) {
    return std::abs(r - inv_s) <= 1e-12 * std::max(r, inv_s);
}

}  // namespace

DisplacementParams displacement_params(const NormalFormSystem& nf) {
    const JumpMap& jump = nf.jump();
    const HalfReturnGains gains = half_return_gains(nf);
    const double r = jump.r();
    const double inv_s = 1.0 / jump.s();

    DisplacementParams p{};
    p.gains = gains;
    p.exp_left = r;
    p.exp_right = inv_s;
    p.log_K = std::log(jump.a()) + std::log(jump.b()) * inv_s;
    p.K = std::exp(p.log_K);

    if (gains.closed_form) {
        // e^{|lambda- t- + lambda+ t+ r|} |cos - Phi- sin| / |cos + Phi+ sin|^r
        const ReturnCoefficients rc = return_coefficients(nf);
        const Focus fp = classify(nf.plus().sigma, nf.plus().delta).focus();
        const Focus fm = classify(nf.minus().sigma, nf.minus().delta).focus();
        const double c_minus =
            std::cos(fm.mu * rc.t_minus) - rc.phi_minus * std::sin(fm.mu * rc.t_minus);
        const double c_plus =
            std::cos(fp.mu * rc.t_plus) + rc.phi_plus * std::sin(fp.mu * rc.t_plus);
        p.log_C_star = std::abs(fm.lambda * rc.t_minus + fp.lambda * rc.t_plus * r) +
                       std::log(std::abs(c_minus)) - r * std::log(std::abs(c_plus));
    } else {
        p.log_C_star = std::log(gains.inbound_backward) - r * std::log(gains.outbound);
    }
    p.C_star = std::exp(p.log_C_star);
    p.alpha = gains.inbound_backward * std::pow(jump.b(), -inv_s);
    p.beta = jump.a() * std::pow(gains.outbound, r);
    return p;
}

double displacement(double x, const NormalFormSystem& nf) {
    return half_return_backward(x, nf) - half_return_forward(x, nf);
}

double displacement(double x, const DisplacementParams& p) {
    if (!(x > 0.0)) throw DomainError(fmt::format("displacement needs x > 0, got {}", x));
    return -p.alpha * std::pow(x, p.exp_right) + p.beta * std::pow(x, p.exp_left);
}

double displacement_derivative(double x, const DisplacementParams& p) {
    if (!(x > 0.0)) throw DomainError(fmt::format("displacement needs x > 0, got {}", x));
    return -p.exp_right * p.alpha * std::pow(x, p.exp_right - 1.0) +
           p.exp_left * p.beta * std::pow(x, p.exp_left - 1.0);
}

double displacement_derivative(double x, const NormalFormSystem& nf) {
    return displacement_derivative(x, displacement_params(nf));
}

double return_map(double x, const DisplacementParams& p, const JumpMap& jump) {
    const double landed = jump.a() * std::pow(p.gains.outbound * x, jump.r());
    const double arrived = landed / p.gains.inbound_backward;
    return jump.b() * std::pow(arrived, jump.s());
}

std::string_view to_string(VerdictCase v) {
    switch (v) {
        case VerdictCase::GAS_NodeCase: return "GAS_NodeCase";
        case VerdictCase::GAS: return "GAS";
        case VerdictCase::GloballyUnstable: return "GloballyUnstable";
        case VerdictCase::GlobalCenter: return "GlobalCenter";
        case VerdictCase::LimitCycle: return "LimitCycle";
    }
    return "?";
}

std::string_view to_string(CycleStability s) {
    return s == CycleStability::Stable ? "stable" : "unstable";
}

StabilityVerdict classify_system(const HybridSystemSpec& spec) { return classify_system(normalize(spec)); }

StabilityVerdict classify_system(const NormalFormSystem& nf) {
    StabilityVerdict v{};
    v.orientation = nf.orientation();
    v.plus = classify(nf.plus().sigma, nf.plus().delta);
    v.minus = classify(nf.minus().sigma, nf.minus().delta);
    v.plus_behaviour =
        side_behaviour(HurwitzMatrix(nf.plus().original), v.plus, Side::Plus, nf.line());
    v.minus_behaviour =
        side_behaviour(HurwitzMatrix(nf.minus().original), v.minus, Side::Minus, nf.line());

    if (v.orientation == Orientation::Mixed || v.plus_behaviour == SideBehaviour::Capture ||
        v.minus_behaviour == SideBehaviour::Capture) {
        v.verdict = VerdictCase::GAS_NodeCase;
        return v;
    }
    v.node_transit = v.plus.is_node() || v.minus.is_node();
    if (v.node_transit) {
        spdlog::debug("node field without an eigen-ray in its wedge: using the return map");
    }

    const DisplacementParams p = displacement_params(nf);
    v.params = p;
    const double log_gap = p.log_K - p.log_C_star;
    if (same_exponent(p.exp_left, p.exp_right)) {
        // |K - C| <= tol max(K, C)  <=>  |log K - log C| <= -log(1 - tol)
        if (std::abs(log_gap) <= -std::log1p(-center_tolerance)) {
            v.verdict = VerdictCase::GlobalCenter;
        } else {
            v.verdict = log_gap < 0.0 ? VerdictCase::GAS : VerdictCase::GloballyUnstable;
            v.near_center = std::abs(log_gap) <= -std::log1p(-near_center_band);
        }
        return v;
    }

    // K x^r = C x^{1/s} has the single root x0; computed in log space.
    const double spread = p.exp_left - p.exp_right;
    const double log_x0 = -log_gap / spread;
    LimitCycle cycle{};
    cycle.x0 = std::exp(log_x0);
    // At x0 both terms equal V = beta x0^r, so Delta'(x0) = (r - 1/s) V / x0.
    cycle.delta_prime = spread * std::exp(std::log(p.beta) + (p.exp_left - 1.0) * log_x0);
    // r > 1/s: Delta < 0 below x0 and > 0 above, so orbits leave the cycle.
    cycle.stability = spread > 0.0 ? CycleStability::Unstable : CycleStability::Stable;
    v.verdict = VerdictCase::LimitCycle;
    v.cycle = cycle;
    return v;
}

double rho_dependent_factor(double rho, double r, double lambda_p, double mu_p, double lambda_m,
                            double mu_m) {
    const FocusFlowParams plus(lambda_p, mu_p);
    const FocusFlowParams minus(lambda_m, mu_m);
    const double t_plus = crossing_time(rho, lambda_p, mu_p, Side::Plus);
    const double t_minus = crossing_time(rho, lambda_m, mu_m, Side::Minus);
    const double phi_plus = (lambda_p - plus.prod() * rho) / mu_p;
    const double phi_minus = (lambda_m - minus.prod() * rho) / mu_m;
    const double num = std::abs(std::cos(mu_m * t_minus) - phi_minus * std::sin(mu_m * t_minus));
    const double den = std::abs(std::cos(mu_p * t_plus) + phi_plus * std::sin(mu_p * t_plus));
    return num / std::pow(den, r);
}

RhoInfinityRatio rho_infinity_ratio(double r, double lambda_p, double mu_p, double lambda_m,
                                    double mu_m) {
    const FocusFlowParams plus(lambda_p, mu_p);
    const FocusFlowParams minus(lambda_m, mu_m);
    if (!(r > 0.0)) throw HypothesisError(fmt::format("jump exponent r must be > 0, got {}", r));
    if (std::abs(r - 1.0) <= 1e-12) {
        return {RhoInfinityRatio::Kind::Finite, std::sqrt(minus.prod() / plus.prod())};
    }
    if (r > 1.0) return {RhoInfinityRatio::Kind::Zero, 0.0};
    return {RhoInfinityRatio::Kind::Infinity, 0.0};
}

}  // namespace hybridgas
