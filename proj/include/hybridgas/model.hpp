#pragma once

// Domain types for the planar hybrid system (X+, X-; Sigma_rho; phi_rho):
// two linear Hurwitz fields, the broken switching line and the power-law jump.

#include <cmath>
#include <string_view>

#include "hybridgas/errors.hpp"

namespace hybridgas {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Row-major 2x2 real matrix.
struct Matrix2 {
    double b11 = 0.0, b12 = 0.0, b21 = 0.0, b22 = 0.0;

    static constexpr Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    [[nodiscard]] constexpr double trace() const { return b11 + b22; }
    [[nodiscard]] constexpr double det() const { return b11 * b22 - b12 * b21; }
    [[nodiscard]] bool is_finite() const;
    /// Throws DomainError when singular.
    [[nodiscard]] Matrix2 inverse() const;
    [[nodiscard]] double max_abs() const;

    friend constexpr Vec2 operator*(const Matrix2& m, Vec2 v) {
        return {m.b11 * v.x + m.b12 * v.y, m.b21 * v.x + m.b22 * v.y};
    }
    friend constexpr Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
        return {a.b11 * b.b11 + a.b12 * b.b21, a.b11 * b.b12 + a.b12 * b.b22,
                a.b21 * b.b11 + a.b22 * b.b21, a.b21 * b.b12 + a.b22 * b.b22};
    }
    friend constexpr Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
        return {a.b11 - b.b11, a.b12 - b.b12, a.b21 - b.b21, a.b22 - b.b22};
    }
    friend constexpr bool operator==(const Matrix2&, const Matrix2&) = default;
};

/// Companion matrix [[sigma, delta], [1, 0]].
constexpr Matrix2 companion(double sigma, double delta) { return {sigma, delta, 1.0, 0.0}; }

/// A 2x2 matrix with trace < 0 and det > 0. Construction throws
/// HypothesisError otherwise.
class HurwitzMatrix {
public:
    explicit HurwitzMatrix(const Matrix2& m);

    [[nodiscard]] const Matrix2& matrix() const noexcept { return m_; }
    /// sigma = tr B < 0
    [[nodiscard]] double trace() const noexcept { return m_.trace(); }
    /// delta = -det B < 0
    [[nodiscard]] double neg_det() const noexcept { return -m_.det(); }

private:
    Matrix2 m_;
};

enum class Side { Plus, Minus };

constexpr double side_sign(Side s) { return s == Side::Plus ? 1.0 : -1.0; }
constexpr Side opposite(Side s) { return s == Side::Plus ? Side::Minus : Side::Plus; }
std::string_view to_string(Side s);

/// The broken line Sigma^1 (negative x-axis) joined with Sigma^2_rho (ray y = rho x, x >= 0).
class SwitchingLine {
public:
    explicit SwitchingLine(double rho);

    [[nodiscard]] double rho() const noexcept { return rho_; }
    /// h_rho: y on x <= 0, y - rho x on x >= 0. Positive above the line.
    [[nodiscard]] double h(Vec2 p) const noexcept { return p.x <= 0.0 ? p.y : p.y - rho_ * p.x; }
    /// Gradient of h_rho at a point of the line away from the corner.
    [[nodiscard]] Vec2 gradient(Vec2 p) const noexcept {
        return p.x <= 0.0 ? Vec2{0.0, 1.0} : Vec2{-rho_, 1.0};
    }
    /// Unit-coordinate point of Sigma^2_rho, i.e. (1, rho).
    [[nodiscard]] Vec2 right_direction() const noexcept { return {1.0, rho_}; }

private:
    double rho_;
};

enum class Branch { Left, Right, Origin };
std::string_view to_string(Branch b);

/// A point of Sigma_rho in (branch, signed x-coordinate) form.
struct SigmaPoint {
    Branch branch = Branch::Origin;
    double coordinate = 0.0;

    /// Branch from the sign of x (0 -> Origin).
    static SigmaPoint from_coordinate(double x);
    static SigmaPoint left(double x);
    static SigmaPoint right(double x);
    static SigmaPoint origin() { return {}; }

    [[nodiscard]] Vec2 embed(const SwitchingLine& line) const;

    friend bool operator==(const SigmaPoint&, const SigmaPoint&) = default;
};

/// phi_rho: Left x -> -a|x|^r, Right x -> b x^s.
class JumpMap {
public:
    JumpMap(double a, double b, double r, double s);
    static JumpMap identity() { return {1.0, 1.0, 1.0, 1.0}; }

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] double r() const noexcept { return r_; }
    [[nodiscard]] double s() const noexcept { return s_; }
    [[nodiscard]] bool is_identity() const noexcept {
        return a_ == 1.0 && b_ == 1.0 && r_ == 1.0 && s_ == 1.0;
    }

private:
    double a_, b_, r_, s_;
};

SigmaPoint jump_apply(const SigmaPoint& p, const JumpMap& jump, const SwitchingLine& line);
SigmaPoint jump_invert(const SigmaPoint& p, const JumpMap& jump, const SwitchingLine& line);

/// The full system. Construction validates the crossing property and throws
/// CrossingError when it fails, so every holder may rely on it.
class HybridSystemSpec {
public:
    HybridSystemSpec(HurwitzMatrix b_plus, HurwitzMatrix b_minus, SwitchingLine line, JumpMap jump);

    [[nodiscard]] const HurwitzMatrix& b_plus() const noexcept { return b_plus_; }
    [[nodiscard]] const HurwitzMatrix& b_minus() const noexcept { return b_minus_; }
    [[nodiscard]] const HurwitzMatrix& field(Side s) const noexcept {
        return s == Side::Plus ? b_plus_ : b_minus_;
    }
    [[nodiscard]] const SwitchingLine& line() const noexcept { return line_; }
    [[nodiscard]] const JumpMap& jump() const noexcept { return jump_; }

private:
    HurwitzMatrix b_plus_;
    HurwitzMatrix b_minus_;
    SwitchingLine line_;
    JumpMap jump_;
};

}  // namespace hybridgas
