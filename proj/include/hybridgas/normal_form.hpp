#pragma once

// Crossing-property validation and the piecewise-linear conjugation of each
// Hurwitz field to companion form [[sigma, delta], [1, 0]].

#include <optional>
#include <string>

#include "hybridgas/errors.hpp"
#include "hybridgas/model.hpp"

namespace hybridgas {

/// eta = b21 + (b22 - b11) rho - b12 rho^2, the normal component of B(1, rho)
/// against grad h on Sigma^2_rho.
double eta(const HurwitzMatrix& b, double rho);

struct CrossingViolation {
    SigmaBranch branch;
    CrossingFailure failure;

    [[nodiscard]] std::string describe() const;
};

/// nullopt when both fields cross Sigma^1 and Sigma^2_rho with the same
/// orientation. When several checks fail, a tangency is reported before a
/// sign mismatch; tangencies on Sigma^2_rho before Sigma^1.
std::optional<CrossingViolation> crossing_check(const HurwitzMatrix& b_plus,
                                                const HurwitzMatrix& b_minus, double rho);

/// C with C B C^-1 = [[sigma, delta], [1, 0]] and C (1, rho) = (1, rho).
/// Throws CrossingError when eta(B, rho) = 0.
Matrix2 conjugation_matrix(const HurwitzMatrix& b, double rho);

/// Closed form of det C: -(delta rho^2 + sigma rho - 1) / eta.
double conjugation_det(const HurwitzMatrix& b, double rho);

/// Direction in which orbits circulate around the origin.
/// Mixed means the two branches of Sigma_rho are crossed towards the same
/// side, which only node fields can produce.
enum class Orientation { Counterclockwise, Clockwise, Mixed };
std::string_view to_string(Orientation o);

struct NormalFormSide {
    double sigma = 0.0;
    double delta = 0.0;
    Matrix2 conjugation;
    Matrix2 original;
    /// C (-1, 0): where the unit point of Sigma^1 lands in normal-form
    /// coordinates. Equals (-1, 0) at rho = 0 and for companion input.
    Vec2 sigma1_image;
    bool preserves_sigma1 = false;

    [[nodiscard]] Matrix2 companion_matrix() const { return companion(sigma, delta); }
};

class NormalFormSystem {
public:
    NormalFormSystem(NormalFormSide plus, NormalFormSide minus, SwitchingLine line, JumpMap jump,
                     Orientation orientation);

    [[nodiscard]] const NormalFormSide& side(Side s) const noexcept {
        return s == Side::Plus ? plus_ : minus_;
    }
    [[nodiscard]] const NormalFormSide& plus() const noexcept { return plus_; }
    [[nodiscard]] const NormalFormSide& minus() const noexcept { return minus_; }
    [[nodiscard]] const SwitchingLine& line() const noexcept { return line_; }
    [[nodiscard]] const JumpMap& jump() const noexcept { return jump_; }
    [[nodiscard]] Orientation orientation() const noexcept { return orientation_; }

    /// True when the companion-form closed forms apply literally: both
    /// conjugations keep Sigma^1 in place and rotation is counterclockwise.
    [[nodiscard]] bool canonical() const noexcept {
        return plus_.preserves_sigma1 && minus_.preserves_sigma1 &&
               orientation_ == Orientation::Counterclockwise;
    }

private:
    NormalFormSide plus_;
    NormalFormSide minus_;
    SwitchingLine line_;
    JumpMap jump_;
    Orientation orientation_;
};

/// Builds the normal form and checks C B C^-1 = A and C (1, rho) = (1, rho)
/// as postconditions; throws Error if either fails.
NormalFormSystem normalize(const HybridSystemSpec& spec);

Orientation orientation_of(const HybridSystemSpec& spec);

}  // namespace hybridgas
