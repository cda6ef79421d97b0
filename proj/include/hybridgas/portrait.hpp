#pragma once

// Self-contained SVG phase portraits.

#include <string>
#include <vector>

#include "hybridgas/analysis.hpp"
#include "hybridgas/model.hpp"
#include "hybridgas/simulate.hpp"

namespace hybridgas {

struct PortraitOptions {
    std::vector<Vec2> seeds;
    /// Plot window [-window, window]^2.
    double window = 10.0;
    /// Per-orbit jump limit while drawing.
    long max_jumps = 200;
    int size_px = 720;
};

/// Sigma_rho as the broken line, orbits coloured by side, jump pairs joined by
/// dashed segments, the limit cycle (when there is one) drawn heavy, and the
/// verdict as a caption.
std::string render_portrait(const HybridSystemSpec& spec, const StabilityVerdict& verdict,
                            const PortraitOptions& opts, const SimConfig& sim);

/// Points spread on two circles inside the window.
std::vector<Vec2> default_seeds(double window);

}  // namespace hybridgas
