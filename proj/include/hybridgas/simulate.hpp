#pragma once

// Event-detected integration of the hybrid system in its original
// coordinates. Used as an oracle for the analytic side, so it only relies on
// the model types: no normal forms, no closed-form crossing times.

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "hybridgas/model.hpp"

namespace hybridgas {

enum class IntegratorKind { ClosedForm, RK45 };
std::string_view to_string(IntegratorKind k);

struct SimConfig {
    double t_max = 1000.0;
    long max_jumps = 10000;
    double converge_norm = 1e-8;
    double diverge_norm = 1e9;
    double event_tol = 1e-12;
    IntegratorKind integrator = IntegratorKind::ClosedForm;
    double abs_tol = 1e-13;
    double rel_tol = 1e-13;
    /// Keep the scan samples of every arc. Off for return-map probes.
    bool record_samples = true;

    /// Throws HypothesisError on a non-positive tolerance or t_max, or max_jumps < 0.
    void validate() const;
};

enum class Termination { Converged, Diverged, MaxTime, MaxJumps, ReachedOrigin };
std::string_view to_string(Termination t);

struct Sample {
    double t;
    Vec2 p;
};

struct Arc {
    Side side;
    std::vector<Sample> samples;
};

struct JumpEvent {
    double t;
    Vec2 hit;
    SigmaPoint hit_point;
    SigmaPoint image;
};

struct Trajectory {
    std::vector<Arc> arcs;
    std::vector<JumpEvent> events;
    Termination termination = Termination::MaxTime;
    double t_end = 0.0;
    Vec2 final_point;
};

/// exp(B t) for any real t, from the 2x2 Cayley-Hamilton form.
Matrix2 matrix_exponential(const Matrix2& b, double t);

enum class StepStatus { Hit, Converged, MaxTime, Diverged };

struct StepResult {
    StepStatus status;
    /// Time elapsed on this arc (absolute value when integrating backward).
    double elapsed;
    /// Last integrated state: the hit point for Hit.
    Vec2 last;
    std::optional<SigmaPoint> hit;
};

/// Flows p under the field of `side` (backward in time when `backward`) until
/// h_rho changes sign, then bisects the crossing. A start point on Sigma_rho is
/// allowed. `t_budget` bounds the elapsed time; samples, when given, receive
/// the scanned points with times offset by `t_offset`.
StepResult step_to_sigma(Vec2 p, Side side, const HybridSystemSpec& spec, const SimConfig& cfg,
                         double t_budget, bool backward = false,
                         std::vector<Sample>* samples = nullptr, double t_offset = 0.0);

/// Side an orbit continues into from a point of Sigma_rho, decided by the
/// plus field's normal component (the crossing property makes both agree).
/// Throws DomainError at the corner.
Side continuing_side(Vec2 q, const HybridSystemSpec& spec, bool backward = false);

Trajectory run(Vec2 q0, const HybridSystemSpec& spec, const SimConfig& cfg);

/// Raised by the return-map probes when an orbit does not come back.
class SimulationError : public Error {
public:
    SimulationError(Termination t, const std::string& what) : Error(what), termination_(t) {}
    [[nodiscard]] Termination termination() const noexcept { return termination_; }

private:
    Termination termination_;
};

/// First-return Sigma^2_rho coordinate of the orbit leaving (x, rho x):
/// flow, jump, flow, jump. Convergence and corner checks are disabled so that
/// small images are followed and the divergence bound is lifted to 1e300;
/// failures to return throw SimulationError.
double empirical_return_map(double x, const HybridSystemSpec& spec, const SimConfig& cfg);

/// Jumped Sigma^1 coordinate reached from (x, rho x) (negative).
double empirical_half_forward(double x, const HybridSystemSpec& spec, const SimConfig& cfg);

/// Sigma^1 coordinate whose orbit, after the jump, lands at (x, rho x):
/// backward flow from phi^-1(x, rho x) (negative).
double empirical_half_backward(double x, const HybridSystemSpec& spec, const SimConfig& cfg);

inline double empirical_displacement(double x, const HybridSystemSpec& spec, const SimConfig& cfg) {
    return empirical_half_backward(x, spec, cfg) - empirical_half_forward(x, spec, cfg);
}

/// arc_index,side,t,x,y
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
/// event_index,t,hit_x,hit_branch,jump_x
void write_events_csv(std::ostream& os, const Trajectory& traj);

}  // namespace hybridgas
