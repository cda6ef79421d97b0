#pragma once

// Classification of a normal-form field as N1 / N2 / F and the invariant
// region partitions of the half-planes it lives in.

#include <string_view>
#include <variant>

#include "hybridgas/model.hpp"

namespace hybridgas {

/// Attracting node with distinct eigenvalues r2 < r1 < 0.
struct Node1 {
    double r1;
    double r2;
};
/// Attracting non-diagonalizable node, eigenvalue r = sigma / 2.
struct Node2 {
    double r;
};
/// Attracting focus with eigenvalues lambda +- i mu.
struct Focus {
    double lambda;
    double mu;
};

enum class SpectralKind { N1, N2, F };
std::string_view to_string(SpectralKind k);

struct SpectralData {
    std::variant<Node1, Node2, Focus> kind;
    double sigma = 0.0;
    double delta = 0.0;

    [[nodiscard]] SpectralKind tag() const;
    [[nodiscard]] bool is_focus() const { return std::holds_alternative<Focus>(kind); }
    [[nodiscard]] bool is_node() const { return !is_focus(); }
    /// Throws DomainError unless the kind is F.
    [[nodiscard]] const Focus& focus() const;
};

/// |sigma^2 + 4 delta| below this is treated as a repeated eigenvalue.
double discriminant_tolerance(double sigma);

/// Throws HypothesisError unless sigma < 0 and delta < 0.
SpectralData classify(double sigma, double delta);

enum class Region { R1, E1, R2, E2, R3, S1, E, S2, Whole };
std::string_view to_string(Region r);

/// Region of a normal-form point strictly inside the half-plane of `side`.
/// The minus-side sets mirror the plus-side ones: R1/S1 is the part
/// entered from the switching line, R3/S2 the part that leaves it again.
/// Throws DomainError for points on Sigma_rho or on the wrong side.
Region region_of(Vec2 p, const SpectralData& spec, Side side, const SwitchingLine& line);

enum class Fate { ConvergesToOrigin, HitsSigmaForward, Both };
std::string_view to_string(Fate f);

Fate predicted_fate(Region region);

/// Whether a field, restricted to the closed wedge above (plus) or below
/// (minus) the switching line, traps every orbit that enters it.
enum class SideBehaviour { Capture, Transit };
std::string_view to_string(SideBehaviour b);

/// Decided in original coordinates: a node captures iff one of its
/// eigen-rays lies strictly inside its wedge. A focus always transits.
SideBehaviour side_behaviour(const HurwitzMatrix& b, const SpectralData& spec, Side side,
                             const SwitchingLine& line);

}  // namespace hybridgas
