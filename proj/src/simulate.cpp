#include "hybridgas/simulate.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numbers>
#include <ostream>

#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <spdlog/spdlog.h>

namespace hybridgas {

std::string_view to_string(IntegratorKind k) {
    return k == IntegratorKind::ClosedForm ? "closed_form" : "rk45";
}

std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::Converged: return "Converged";
        case Termination::Diverged: return "Diverged";
        case Termination::MaxTime: return "MaxTime";
        case Termination::MaxJumps: return "MaxJumps";
        case Termination::ReachedOrigin: return "ReachedOrigin";
    }
    return "?";
}

void SimConfig::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || std::isnan(v)) {
            throw HypothesisError(fmt::format("sim config: {} must be > 0, got {}", name, v));
        }
    };
    positive(t_max, "t_max");
    positive(converge_norm, "converge_norm");
    positive(diverge_norm, "diverge_norm");
    positive(event_tol, "event_tol");
    positive(abs_tol, "abs_tol");
    positive(rel_tol, "rel_tol");
    if (max_jumps < 0) throw HypothesisError(fmt::format("sim config: max_jumps must be ≥ 0, got {}", max_jumps));
}

Matrix2 matrix_exponential(const Matrix2& b, double t) {
    // exp(Bt) = e^{lt} (c I + s (B - l I)),  l = tr/2, d = l^2 - det
    const double l = b.trace() / 2.0;
    const double d = l * l - b.det();
    double c = 0.0;
    double s = 0.0;
    if (d > 0.0) {
        const double w = std::sqrt(d);
        if (std::abs(w * t) < 1.0) {
            const double e = std::exp(l * t);
            c = e * std::cosh(w * t);
            s = e * std::sinh(w * t) / w;
        } else {
            // separate exponentials so e^{lt} cosh(wt) never overflows alone
            const double ep = std::exp((l + w) * t);
            const double em = std::exp((l - w) * t);
            c = (ep + em) / 2.0;
            s = (ep - em) / (2.0 * w);
        }
    } else if (d < 0.0) {
        const double w = std::sqrt(-d);
        const double e = std::exp(l * t);
        c = e * std::cos(w * t);
        s = e * std::sin(w * t) / w;
    } else {
        const double e = std::exp(l * t);
        c = e;
        s = e * t;
    }
    return {c + s * (b.b11 - l), s * b.b12, s * b.b21, c + s * (b.b22 - l)};
}

namespace {

using State = std::array<double, 2>;

// Maps (t_from, state at t_from, t) to the state at t along one arc.
class Propagator {
public:
    Propagator(const Matrix2& m, Vec2 start, const SimConfig& cfg)
        : m_(m), start_(start), cfg_(cfg) {}

    [[nodiscard]] Vec2 at(double t_from, Vec2 from, double t) const {
        if (cfg_.integrator == IntegratorKind::ClosedForm) return matrix_exponential(m_, t) * start_;
        namespace ode = boost::numeric::odeint;
        State x{from.x, from.y};
        if (t == t_from) return from;
        auto rhs = [this](const State& s, State& ds, double) {
            ds[0] = m_.b11 * s[0] + m_.b12 * s[1];
            ds[1] = m_.b21 * s[0] + m_.b22 * s[1];
        };
        auto stepper = ode::make_controlled(cfg_.abs_tol, cfg_.rel_tol, ode::runge_kutta_dopri5<State>());
        ode::integrate_adaptive(stepper, rhs, x, t_from, t, (t - t_from) / 8.0);
        return {x[0], x[1]};
    }

private:
    Matrix2 m_;
    Vec2 start_;
    const SimConfig& cfg_;
};

Matrix2 scaled(const Matrix2& m, double k) { return {k * m.b11, k * m.b12, k * m.b21, k * m.b22}; }

}  // namespace

Side continuing_side(Vec2 q, const HybridSystemSpec& spec, bool backward) {
    if (q.x == 0.0 && q.y == 0.0) throw DomainError("continuing_side: point is the corner of Σ_ρ");
    double c = dot(spec.b_plus().matrix() * q, spec.line().gradient(q));
    if (backward) c = -c;
    if (c == 0.0) throw DomainError("continuing_side: field tangent to Σ_ρ");
    return c > 0.0 ? Side::Plus : Side::Minus;
}

StepResult step_to_sigma(Vec2 p, Side side, const HybridSystemSpec& spec, const SimConfig& cfg,
                         double t_budget, bool backward, std::vector<Sample>* samples,
                         double t_offset) {
    const SwitchingLine& line = spec.line();
    const double sgn = side_sign(side);
    if (sgn * line.h(p) < 0.0) {
        throw DomainError(fmt::format("step_to_sigma: ({}, {}) is not on the {} side", p.x, p.y,
                                      to_string(side)));
    }
    const Matrix2 m = scaled(spec.field(side).matrix(), backward ? -1.0 : 1.0);
    const Propagator prop(m, p, cfg);
    const double tdir = backward ? -1.0 : 1.0;
    auto record = [&](double t, Vec2 q) {
        if (samples != nullptr) samples->push_back({t_offset + tdir * t, q});
    };

    record(0.0, p);
    if (norm(p) < cfg.converge_norm) return {StepStatus::Converged, 0.0, p, std::nullopt};
    if (!(t_budget > 0.0)) return {StepStatus::MaxTime, 0.0, p, std::nullopt};

    // Angular speed is at most the spectral norm (<= 2 max|b_ij|), so a step
    // turns the state by less than pi/16 and cannot skip a whole wedge.
    const double dt = std::numbers::pi / (32.0 * std::max(m.max_abs(), 1e-300));
    double t_prev = 0.0;
    Vec2 q_prev = p;
    while (true) {
        const bool last = t_prev + dt >= t_budget;
        const double t = last ? t_budget : t_prev + dt;
        const Vec2 q = prop.at(t_prev, q_prev, t);
        if (!std::isfinite(q.x) || !std::isfinite(q.y)) {
            return {StepStatus::Diverged, t, q_prev, std::nullopt};
        }
        if (sgn * line.h(q) <= 0.0) {
            // bisection on [t_prev, t]: lo stays inside, hi on or past the line
            double lo = t_prev;
            double hi = t;
            Vec2 q_lo = q_prev;
            Vec2 q_hi = q;
            for (int i = 0; i < 200; ++i) {
                if (std::abs(line.h(q_hi)) <= cfg.event_tol * norm(q_hi)) break;
                if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
                const double mid = 0.5 * (lo + hi);
                const Vec2 q_mid = prop.at(lo, q_lo, mid);
                if (sgn * line.h(q_mid) > 0.0) {
                    lo = mid;
                    q_lo = q_mid;
                } else {
                    hi = mid;
                    q_hi = q_mid;
                }
            }
            record(hi, q_hi);
            return {StepStatus::Hit, hi, q_hi, SigmaPoint::from_coordinate(q_hi.x)};
        }
        record(t, q);
        const double n = norm(q);
        if (n < cfg.converge_norm) return {StepStatus::Converged, t, q, std::nullopt};
        if (n > cfg.diverge_norm) return {StepStatus::Diverged, t, q, std::nullopt};
        if (last) return {StepStatus::MaxTime, t, q, std::nullopt};
        t_prev = t;
        q_prev = q;
    }
}

Trajectory run(Vec2 q0, const HybridSystemSpec& spec, const SimConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(q0.x) || !std::isfinite(q0.y)) {
        throw HypothesisError(fmt::format("start point ({}, {}) is not finite", q0.x, q0.y));
    }
    const SwitchingLine& line = spec.line();
    Trajectory traj;
    double t = 0.0;
    Vec2 p = q0;
    auto finish = [&](Termination why) {
        traj.termination = why;
        traj.t_end = t;
        traj.final_point = p;
        spdlog::debug("run: {} at t = {} after {} jumps", to_string(why), t, traj.events.size());
        return traj;
    };

    if (norm(p) < cfg.converge_norm) {
        if (p.x == 0.0 && p.y == 0.0) return finish(Termination::ReachedOrigin);
        return finish(Termination::Converged);
    }
    // A start on Sigma_rho is treated like a point just produced by a jump.
    Side side = line.h(p) == 0.0 ? continuing_side(p, spec)
                                 : (line.h(p) > 0.0 ? Side::Plus : Side::Minus);
    while (true) {
        Arc arc{side, {}};
        const StepResult step = step_to_sigma(p, side, spec, cfg, cfg.t_max - t, false,
                                              cfg.record_samples ? &arc.samples : nullptr, t);
        t += step.elapsed;
        p = step.last;
        traj.arcs.push_back(std::move(arc));
        switch (step.status) {
            case StepStatus::Converged: return finish(Termination::Converged);
            case StepStatus::Diverged: return finish(Termination::Diverged);
            case StepStatus::MaxTime: return finish(Termination::MaxTime);
            case StepStatus::Hit: break;
        }
        const SigmaPoint hit = *step.hit;
        if (std::abs(hit.coordinate) < cfg.event_tol) return finish(Termination::ReachedOrigin);
        if (static_cast<long>(traj.events.size()) >= cfg.max_jumps) {
            return finish(Termination::MaxJumps);
        }
        const SigmaPoint image = jump_apply(hit, spec.jump(), line);
        traj.events.push_back({t, step.last, hit, image});
        if (image.branch == Branch::Origin || std::abs(image.coordinate) < cfg.event_tol) {
            p = {};
            return finish(Termination::ReachedOrigin);
        }
        p = image.embed(line);
        const double n = norm(p);
        if (n > cfg.diverge_norm) return finish(Termination::Diverged);
        if (n < cfg.converge_norm) return finish(Termination::Converged);
        side = continuing_side(p, spec);
    }
}

namespace {

// Probe settings: follow arbitrarily small states, localize to machine precision.
SimConfig probe_config(const SimConfig& cfg) {
    SimConfig out = cfg;
    out.converge_norm = std::numeric_limits<double>::min();
    out.event_tol = std::numeric_limits<double>::min();
    out.diverge_norm = std::max(cfg.diverge_norm, 1e300);
    out.record_samples = false;
    return out;
}

SigmaPoint probe_hit(Vec2 p, Side side, const HybridSystemSpec& spec, const SimConfig& cfg,
                     bool backward) {
    const StepResult step = step_to_sigma(p, side, spec, cfg, cfg.t_max, backward);
    switch (step.status) {
        case StepStatus::Hit: return *step.hit;
        case StepStatus::Diverged:
            throw SimulationError(Termination::Diverged, "return probe diverged");
        case StepStatus::Converged:
            throw SimulationError(Termination::Converged, "return probe converged without a hit");
        case StepStatus::MaxTime:
            throw SimulationError(Termination::MaxTime, "return probe ran out of time");
    }
    throw SimulationError(Termination::MaxTime, "unreachable");
}

void require_positive(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(fmt::format("return probe needs a finite x > 0, got {}", x));
    }
}

}  // namespace

double empirical_return_map(double x, const HybridSystemSpec& spec, const SimConfig& cfg) {
    require_positive(x);
    const SimConfig probe = probe_config(cfg);
    const SwitchingLine& line = spec.line();
    Vec2 p = SigmaPoint::right(x).embed(line);
    for (int jumps = 0; jumps < 8; ++jumps) {
        const SigmaPoint hit = probe_hit(p, continuing_side(p, spec), spec, probe, false);
        const SigmaPoint image = jump_apply(hit, spec.jump(), line);
        if (image.branch == Branch::Right) return image.coordinate;
        if (image.branch == Branch::Origin) {
            throw SimulationError(Termination::ReachedOrigin, "return probe reached the corner");
        }
        p = image.embed(line);
    }
    throw SimulationError(Termination::MaxJumps, "orbit did not return to Σ²_ρ");
}

double empirical_half_forward(double x, const HybridSystemSpec& spec, const SimConfig& cfg) {
    require_positive(x);
    const SimConfig probe = probe_config(cfg);
    const Vec2 p = SigmaPoint::right(x).embed(spec.line());
    const SigmaPoint hit = probe_hit(p, continuing_side(p, spec), spec, probe, false);
    if (hit.branch != Branch::Left) {
        throw SimulationError(Termination::MaxJumps, "forward half-return did not reach Σ¹");
    }
    return jump_apply(hit, spec.jump(), spec.line()).coordinate;
}

double empirical_half_backward(double x, const HybridSystemSpec& spec, const SimConfig& cfg) {
    require_positive(x);
    const SimConfig probe = probe_config(cfg);
    const SigmaPoint pre = jump_invert(SigmaPoint::right(x), spec.jump(), spec.line());
    const Vec2 p = pre.embed(spec.line());
    const SigmaPoint hit = probe_hit(p, continuing_side(p, spec, true), spec, probe, true);
    if (hit.branch != Branch::Left) {
        throw SimulationError(Termination::MaxJumps, "backward half-return did not reach Σ¹");
    }
    return hit.coordinate;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "arc_index,side,t,x,y\n";
    for (std::size_t i = 0; i < traj.arcs.size(); ++i) {
        const Arc& arc = traj.arcs[i];
        for (const Sample& s : arc.samples) {
            fmt::print(os, "{},{},{:.17g},{:.17g},{:.17g}\n", i, to_string(arc.side), s.t, s.p.x,
                       s.p.y);
        }
    }
}

void write_events_csv(std::ostream& os, const Trajectory& traj) {
    os << "event_index,t,hit_x,hit_branch,jump_x\n";
    for (std::size_t i = 0; i < traj.events.size(); ++i) {
        const JumpEvent& e = traj.events[i];
        fmt::print(os, "{},{:.17g},{:.17g},{},{:.17g}\n", i, e.t, e.hit.x,
                   to_string(e.hit_point.branch), e.image.coordinate);
    }
}

}  // namespace hybridgas
