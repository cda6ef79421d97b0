#include "hybridgas/portrait.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace hybridgas {

namespace {

constexpr const char* plus_colour = "#b03a2e";
constexpr const char* minus_colour = "#1f618d";

class Canvas {
public:
    Canvas(double window, int size) : w_(window), size_(size) {}

    [[nodiscard]] double px(double x) const { return clamp((x + w_) / (2.0 * w_) * size_); }
    [[nodiscard]] double py(double y) const { return clamp((w_ - y) / (2.0 * w_) * size_); }

    std::string polyline(const std::vector<Sample>& pts, const std::string& attrs) const {
        std::string s = "<polyline fill=\"none\" " + attrs + " points=\"";
        for (const Sample& p : pts) s += fmt::format("{:.2f},{:.2f} ", px(p.p.x), py(p.p.y));
        s += "\"/>\n";
        return s;
    }

private:
    // keep far-away samples from producing absurd coordinates
    [[nodiscard]] double clamp(double v) const { return std::clamp(v, -10.0 * size_, 11.0 * size_); }

    double w_;
    int size_;
};

std::string caption(const StabilityVerdict& v) {
    std::string text = fmt::format("verdict: {}", to_string(v.verdict));
    if (v.cycle) {
        text += fmt::format(" (x0 = {:.6g}, {}, Δ′(x0) = {:.6g})", v.cycle->x0,
                            to_string(v.cycle->stability), v.cycle->delta_prime);
    }
    if (v.near_center) text += " near-center";
    return text;
}

}  // namespace

std::vector<Vec2> default_seeds(double window) {
    std::vector<Vec2> seeds;
    for (double radius : {0.35 * window, 0.75 * window}) {
        for (int k = 0; k < 6; ++k) {
            const double a = (k + 0.5) * std::numbers::pi / 3.0;
            seeds.push_back({radius * std::cos(a), radius * std::sin(a)});
        }
    }
    return seeds;
}

std::string render_portrait(const HybridSystemSpec& spec, const StabilityVerdict& verdict,
                            const PortraitOptions& opts, const SimConfig& sim) {
    if (!(opts.window > 0.0)) throw HypothesisError(fmt::format("window must be > 0, got {}", opts.window));
    const Canvas cv(opts.window, opts.size_px);
    const int n = opts.size_px;
    const double rho = spec.line().rho();
    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
        "<defs><clipPath id=\"frame\"><rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{0}\"/></clipPath></defs>\n"
        "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{1}\" style=\"fill:#ffffff\"/>\n",
        n, n + 40);

    svg += "<g clip-path=\"url(#frame)\">\n";
    // axes, faint
    svg += fmt::format(
        "<line x1=\"0\" y1=\"{0:.2f}\" x2=\"{1}\" y2=\"{0:.2f}\" style=\"stroke:#dddddd;stroke-width:1\"/>\n"
        "<line x1=\"{2:.2f}\" y1=\"0\" x2=\"{2:.2f}\" y2=\"{1}\" style=\"stroke:#dddddd;stroke-width:1\"/>\n",
        cv.py(0.0), n, cv.px(0.0));

    // Sigma^1 then Sigma^2_rho up to the frame
    const double w = opts.window;
    const double x_end = rho > 1.0 ? w / rho : w;
    svg += fmt::format(
        "<polyline class=\"sigma\" points=\"{:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f}\" "
        "style=\"fill:none;stroke:#222222;stroke-width:2\"/>\n",
        cv.px(-w), cv.py(0.0), cv.px(0.0), cv.py(0.0), cv.px(x_end), cv.py(rho * x_end));

    SimConfig cfg = sim;
    cfg.record_samples = true;
    cfg.max_jumps = opts.max_jumps;
    cfg.diverge_norm = std::min(cfg.diverge_norm, 50.0 * w);

    for (const Vec2& seed : opts.seeds) {
        const Trajectory traj = run(seed, spec, cfg);
        svg += "<g class=\"orbit\">\n";
        for (const Arc& arc : traj.arcs) {
            const char* colour = arc.side == Side::Plus ? plus_colour : minus_colour;
            svg += cv.polyline(arc.samples, fmt::format("class=\"arc-{}\" style=\"stroke:{};stroke-width:1.2\"",
                                                        arc.side == Side::Plus ? "plus" : "minus", colour));
        }
        for (const JumpEvent& e : traj.events) {
            const Vec2 img = e.image.embed(spec.line());
            svg += fmt::format(
                "<line class=\"jump\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
                "style=\"stroke:#7d3c98;stroke-width:1;stroke-dasharray:3,3\"/>\n"
                "<circle class=\"jump-hit\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\" style=\"fill:#7d3c98\"/>\n"
                "<circle class=\"jump-image\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\" "
                "style=\"fill:none;stroke:#7d3c98\"/>\n",
                cv.px(e.hit.x), cv.py(e.hit.y), cv.px(img.x), cv.py(img.y), cv.px(e.hit.x),
                cv.py(e.hit.y), cv.px(img.x), cv.py(img.y));
        }
        if (traj.termination == Termination::Converged || traj.termination == Termination::ReachedOrigin) {
            svg += fmt::format("<circle class=\"end-origin\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" "
                               "style=\"fill:#117a65\"/>\n",
                               cv.px(0.0), cv.py(0.0));
        }
        svg += "</g>\n";
    }

    if (verdict.cycle) {
        // one hybrid period from the cycle point on Sigma^2_rho
        SimConfig one = cfg;
        one.max_jumps = 2;
        one.converge_norm = std::numeric_limits<double>::min();
        one.diverge_norm = 1e300;
        const Trajectory cyc = run(SigmaPoint::right(verdict.cycle->x0).embed(spec.line()), spec, one);
        svg += "<g class=\"limit-cycle\">\n";
        const std::size_t arcs = std::min<std::size_t>(cyc.arcs.size(), 2);
        for (std::size_t i = 0; i < arcs; ++i) {
            svg += cv.polyline(cyc.arcs[i].samples, "style=\"stroke:#f39c12;stroke-width:3.5;stroke-opacity:0.85\"");
        }
        for (std::size_t i = 0; i < std::min<std::size_t>(cyc.events.size(), 2); ++i) {
            const JumpEvent& e = cyc.events[i];
            const Vec2 img = e.image.embed(spec.line());
            svg += fmt::format(
                "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
                "style=\"stroke:#f39c12;stroke-width:2;stroke-dasharray:6,3\"/>\n",
                cv.px(e.hit.x), cv.py(e.hit.y), cv.px(img.x), cv.py(img.y));
        }
        svg += fmt::format("<circle class=\"cycle-point\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" "
                           "style=\"fill:#f39c12\"/>\n",
                           cv.px(verdict.cycle->x0), cv.py(rho * verdict.cycle->x0));
        svg += "</g>\n";
    }

    svg += fmt::format("<circle class=\"origin\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" style=\"fill:#000000\"/>\n",
                       cv.px(0.0), cv.py(0.0));
    svg += "</g>\n";
    svg += fmt::format(
        "<text class=\"verdict\" x=\"10\" y=\"{}\" style=\"font-family:monospace;font-size:14px;fill:#000000\">"
        "{}</text>\n",
        n + 25, caption(verdict));
    svg += "</svg>\n";
    return svg;
}

}  // namespace hybridgas
