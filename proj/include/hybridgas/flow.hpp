#pragma once

// Closed-form linear flows in normal-form coordinates, first crossing times
// of the switching line and the half-return maps built from them.
//
// A half-return "leg" carries a point of one branch of Sigma_rho through one
// half-plane to the other branch. With counterclockwise rotation the plus
// field runs the outbound leg (Sigma^2_rho -> Sigma^1) and the minus field
// the inbound leg (Sigma^1 -> Sigma^2_rho); clockwise rotation swaps them.
// By homogeneity each leg multiplies the branch coordinate magnitude by a
// constant gain.

#include "hybridgas/model.hpp"
#include "hybridgas/normal_form.hpp"
#include "hybridgas/spectral.hpp"

namespace hybridgas {

struct FocusFlowParams {
    double lambda;
    double mu;

    FocusFlowParams(double lambda, double mu);
    explicit FocusFlowParams(const Focus& f) : FocusFlowParams(f.lambda, f.mu) {}

    /// r1 r2 = lambda^2 + mu^2
    [[nodiscard]] double prod() const noexcept { return lambda * lambda + mu * mu; }
};

/// Solution of [[2 lambda, -(lambda^2 + mu^2)], [1, 0]] at time t (any sign).
Vec2 focus_flow(double t, Vec2 p, const FocusFlowParams& params);

/// Solution of the companion system of a node (N1 eigenbasis form,
/// N2 (I + tN) e^{rt} form). Throws DomainError for a focus.
Vec2 node_flow(double t, Vec2 p, const SpectralData& spec);

/// Dispatches to focus_flow or node_flow.
Vec2 companion_flow(double t, Vec2 p, const SpectralData& spec);

/// First time the orbit through (1, rho) meets Sigma^1: forward under the
/// plus field, backward under the minus field. Closed form
/// t = (+-atan(mu rho / (lambda rho - 1)) + pi) / mu, accepted after checking
/// that it zeros the y-component and is the first Sigma^1 hit; otherwise
/// falls back to crossing_time_by_root_finding.
double crossing_time(double rho, double lambda, double mu, Side side);

/// Bracketed root search for the same time over (0, 2 pi / mu].
double crossing_time_by_root_finding(double rho, double lambda, double mu, Side side);

/// y-component of the orbit through (1, rho) after time t, flowing forward
/// for Plus and backward for Minus.
double crossing_residual(double t, double rho, double lambda, double mu, Side side);

struct ReturnCoefficients {
    double phi_plus;
    double phi_minus;
    double t_plus;
    double t_minus;
};

/// Phi^{+-} = (lambda - r1 r2 rho) / mu and t^{+-}. Both sides must be foci.
ReturnCoefficients return_coefficients(const NormalFormSystem& nf);

/// Result of carrying the entry direction to the exit direction.
struct Transit {
    double time;
    /// flow(time, entry) = gain * exit
    double gain;
};

/// General transit between two rays in normal-form coordinates. For a focus
/// this is closed form; for a node it is a bracketed search on the angle and
/// throws DomainError when the orbit is captured before reaching the exit.
Transit transit(const SpectralData& spec, Vec2 entry, Vec2 exit);

enum class Leg { Outbound, Inbound };

/// Which field runs a leg. Throws DomainError for Mixed orientation.
Side leg_side(const NormalFormSystem& nf, Leg leg);

struct HalfReturnGains {
    Side outbound_side;
    /// Sigma^2 coordinate x -> Sigma^1 coordinate -outbound * x (before the jump).
    double outbound;
    /// Sigma^2 coordinate z -> Sigma^1 coordinate -inbound_backward * z, backward in time.
    double inbound_backward;
    double t_outbound;
    double t_inbound;
    /// True when computed from the companion closed forms (canonical systems).
    bool closed_form;
};

/// Throws DomainError when either leg is not a transit (a capturing node, or
/// mixed orientation).
HalfReturnGains half_return_gains(const NormalFormSystem& nf);

/// Same gains computed with the general ray solver even on canonical systems.
HalfReturnGains half_return_gains_general(const NormalFormSystem& nf);

/// Outbound leg then jump: the (negative) Sigma^1 coordinate reached from
/// (x, rho x), x > 0.
double half_return_forward(double x, const NormalFormSystem& nf);

/// The (negative) Sigma^1 coordinate whose inbound orbit, after the jump,
/// arrives at (x, rho x): backward inbound flow from phi^-1(x, rho x).
double half_return_backward(double x, const NormalFormSystem& nf);

}  // namespace hybridgas
