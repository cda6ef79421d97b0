#pragma once

// Random system generators and small numeric helpers shared by the tests.

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "hybridgas/model.hpp"
#include "hybridgas/normal_form.hpp"
#include "hybridgas/spectral.hpp"

namespace support {

using namespace hybridgas;

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Matrix2 random_matrix(std::mt19937_64& rng) {
    return {uniform(rng, -3, 3), uniform(rng, -3, 3), uniform(rng, -3, 3), uniform(rng, -3, 3)};
}

inline Matrix2 random_hurwitz(std::mt19937_64& rng) {
    while (true) {
        const Matrix2 m = random_matrix(rng);
        if (m.trace() < 0.0 && m.det() > 0.0) return m;
    }
}

inline double discriminant(const Matrix2& m) {
    return m.trace() * m.trace() - 4.0 * m.det();
}

/// Hurwitz focus, kept away from the node boundary and from very slow
/// decay or rotation so simulated legs finish quickly.
inline Matrix2 random_focus(std::mt19937_64& rng) {
    while (true) {
        const Matrix2 m = random_hurwitz(rng);
        const double lambda = m.trace() / 2.0;
        const double mu = std::sqrt(std::max(0.0, -discriminant(m))) / 2.0;
        if (discriminant(m) < -0.2 && lambda < -0.05 && mu > 0.1) return m;
    }
}

/// Hurwitz node with distinct eigenvalues (N2 has measure zero).
inline Matrix2 random_node(std::mt19937_64& rng) {
    while (true) {
        const Matrix2 m = random_hurwitz(rng);
        if (discriminant(m) > 0.05) return m;
    }
}

/// Crossing with a margin: |b21| and |eta| at least `margin` on both sides.
inline bool crossing_with_margin(const Matrix2& p, const Matrix2& m, double rho, double margin = 0.05) {
    const HurwitzMatrix hp(p), hm(m);
    const double ep = eta(hp, rho), em = eta(hm, rho);
    return p.b21 * m.b21 > 0.0 && ep * em > 0.0 && std::abs(p.b21) > margin && std::abs(m.b21) > margin &&
           std::abs(ep) > margin && std::abs(em) > margin;
}

struct FocusPair {
    Matrix2 plus;
    Matrix2 minus;
    double rho;
};

inline FocusPair random_focus_pair(std::mt19937_64& rng, double rho_max) {
    while (true) {
        FocusPair fp{random_focus(rng), random_focus(rng), uniform(rng, 0.0, rho_max)};
        if (crossing_with_margin(fp.plus, fp.minus, fp.rho)) return fp;
    }
}

inline JumpMap random_jump(std::mt19937_64& rng) {
    return {uniform(rng, 0.1, 10.0), uniform(rng, 0.1, 10.0), uniform(rng, 0.25, 4.0),
            uniform(rng, 0.25, 4.0)};
}

inline HybridSystemSpec make_spec(const Matrix2& p, const Matrix2& m, double rho, const JumpMap& j) {
    return HybridSystemSpec{HurwitzMatrix{p}, HurwitzMatrix{m}, SwitchingLine{rho}, j};
}

/// Companion focus with eigenvalues lambda +- i mu.
inline Matrix2 companion_focus(double lambda, double mu) {
    return companion(2.0 * lambda, -(lambda * lambda + mu * mu));
}

/// The worked example: B+- = [[-2,-2],[1,0]], rho = 0, a = b = 1, r = s = 3.
inline HybridSystemSpec worked_example() {
    return make_spec({-2, -2, 1, 0}, {-2, -2, 1, 0}, 0.0, JumpMap{1, 1, 3, 3});
}

}  // namespace support
