#include "hybridgas/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <spdlog/spdlog.h>

#include "hybridgas/analysis.hpp"
#include "hybridgas/io.hpp"
#include "hybridgas/portrait.hpp"
#include "hybridgas/simulate.hpp"

namespace hybridgas::cli {

namespace {

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const UsageError& e) {
        fmt::print(err, "usage error: {}\n", e.what());
        return Usage;
    } catch (const FileError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return e.not_found() ? FileNotFound : Io;
    } catch (const ParseError& e) {
        fmt::print(err, "parse error: {}\n", e.what());
        return Parse;
    } catch (const HypothesisError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return Hypothesis;
    } catch (const CrossingError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return Crossing;
    } catch (const Error& e) {
        fmt::print(err, "error: {}\n", e.what());
        return Domain;
    }
}

std::ofstream open_out(const std::string& path) {
    if (path.empty()) throw UsageError("an output path is required");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw FileError(false, fmt::format("cannot write {}", path));
    return f;
}

void close_out(std::ofstream& f, const std::string& path) {
    f.close();
    if (!f) throw FileError(false, fmt::format("error writing {}", path));
}

std::string opt_number(const std::optional<double>& v) {
    return v ? fmt::format("{:.17g}", *v) : std::string();
}

void warn_flags(const StabilityVerdict& v, std::ostream& err) {
    if (v.near_center) {
        fmt::print(err, "warning: K and C_star agree to within {} relative; verdict is near-center\n",
                   near_center_band);
    }
    if (v.node_transit) {
        fmt::print(err, "note: a node field carries orbits across its half-plane (no eigen-ray inside)\n");
    }
}

}  // namespace

std::vector<Vec2> parse_seeds(const std::string& text) {
    std::vector<Vec2> out;
    std::stringstream all(text);
    std::string item;
    while (std::getline(all, item, ';')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        std::stringstream one(item);
        Vec2 p;
        char comma = 0;
        if (!(one >> p.x >> comma >> p.y) || comma != ',' || !(one >> std::ws).eof()) {
            throw UsageError(fmt::format("bad seed \"{}\", expected x,y", item));
        }
        out.push_back(p);
    }
    return out;
}

int cmd_classify(const std::string& spec_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const LoadedSpec loaded = load_spec(spec_path);
        const StabilityVerdict v = classify_system(loaded.spec);
        const VerdictReport rep = make_report(loaded.spec, v);
        warn_flags(v, err);
        out << to_json(rep).dump(2) << '\n';
        return Ok;
    });
}

int cmd_displacement(const std::string& spec_path, const DisplacementOptions& opts, std::ostream& out,
                     std::ostream& err) {
    return guarded(err, [&] {
        if (!(opts.x_min > 0.0) || !(opts.x_min < opts.x_max) || !std::isfinite(opts.x_max)) {
            throw UsageError(fmt::format("need 0 < x_min < x_max, got [{}, {}]", opts.x_min, opts.x_max));
        }
        if (opts.samples < 2) throw UsageError(fmt::format("need samples ≥ 2, got {}", opts.samples));
        const LoadedSpec loaded = load_spec(spec_path);
        const StabilityVerdict v = classify_system(loaded.spec);
        if (!v.params) {
            throw DomainError(fmt::format(
                "no displacement map: verdict {} (a node field captures every orbit or the two "
                "branches of Σ_ρ are crossed towards the same side)",
                to_string(v.verdict)));
        }
        std::ofstream f = open_out(opts.out_csv);
        f << "x,delta,delta_prime\n";
        const double l0 = std::log(opts.x_min);
        const double l1 = std::log(opts.x_max);
        int sign_changes = 0;
        double prev = 0.0;
        for (int i = 0; i < opts.samples; ++i) {
            double x = std::exp(l0 + (l1 - l0) * i / (opts.samples - 1));
            if (i == 0) x = opts.x_min;
            if (i == opts.samples - 1) x = opts.x_max;
            const double d = displacement(x, *v.params);
            if (i > 0 && (d > 0.0) != (prev > 0.0) && d != 0.0 && prev != 0.0) ++sign_changes;
            prev = d;
            fmt::print(f, "{:.17g},{:.17g},{:.17g}\n", x, d, displacement_derivative(x, *v.params));
        }
        close_out(f, opts.out_csv);
        fmt::print(out, "verdict {}: wrote {} rows to {} ({} sign change{})\n", to_string(v.verdict),
                   opts.samples, opts.out_csv, sign_changes, sign_changes == 1 ? "" : "s");
        return Ok;
    });
}

int cmd_simulate(const std::string& spec_path, const SimulateOptions& opts, std::ostream& out,
                 std::ostream& err) {
    return guarded(err, [&] {
        const LoadedSpec loaded = load_spec(spec_path);
        SimConfig cfg = loaded.sim;
        if (opts.t_max) cfg.t_max = *opts.t_max;
        if (opts.max_jumps) cfg.max_jumps = *opts.max_jumps;
        if (opts.integrator) {
            if (*opts.integrator == "closed_form") {
                cfg.integrator = IntegratorKind::ClosedForm;
            } else if (*opts.integrator == "rk45") {
                cfg.integrator = IntegratorKind::RK45;
            } else {
                throw UsageError(fmt::format("unknown integrator \"{}\"", *opts.integrator));
            }
        }
        try {
            cfg.validate();
        } catch (const HypothesisError& e) {
            throw UsageError(e.what());
        }
        std::string events_path = opts.events_csv;
        if (events_path.empty()) {
            if (opts.out_csv.empty()) throw UsageError("an output path is required");
            std::filesystem::path p(opts.out_csv);
            events_path = (p.parent_path() / (p.stem().string() + "_events.csv")).string();
        }
        const Trajectory traj = run({opts.x0, opts.y0}, loaded.spec, cfg);
        std::ofstream f = open_out(opts.out_csv);
        write_trajectory_csv(f, traj);
        close_out(f, opts.out_csv);
        std::ofstream g = open_out(events_path);
        write_events_csv(g, traj);
        close_out(g, events_path);
        fmt::print(out, "{}\n", to_string(traj.termination));
        spdlog::info("{} jumps, t_end = {}, final point ({}, {})", traj.events.size(), traj.t_end,
                     traj.final_point.x, traj.final_point.y);
        return Ok;
    });
}

int cmd_portrait(const std::string& spec_path, const PortraitCliOptions& opts, std::ostream& out,
                 std::ostream& err) {
    return guarded(err, [&] {
        const LoadedSpec loaded = load_spec(spec_path);
        const StabilityVerdict v = classify_system(loaded.spec);
        PortraitOptions po;
        if (opts.window) {
            if (!(*opts.window > 0.0)) throw UsageError(fmt::format("window must be > 0, got {}", *opts.window));
            po.window = *opts.window;
        } else if (v.cycle) {
            // fit the points the cycle visits on both branches
            const double x0 = v.cycle->x0;
            const double rho = loaded.spec.line().rho();
            const JumpMap& jump = loaded.spec.jump();
            const double hit1 = v.params->gains.outbound * x0;
            const double land1 = jump.a() * std::pow(hit1, jump.r());
            const double hit2 = std::pow(x0 / jump.b(), 1.0 / jump.s());
            const double slant = std::sqrt(1.0 + rho * rho);
            po.window = 1.5 * std::max({x0 * slant, hit1, land1, hit2 * slant});
        }
        po.seeds = opts.seeds ? *opts.seeds : default_seeds(po.window);
        const std::string svg = render_portrait(loaded.spec, v, po, loaded.sim);
        std::ofstream f = open_out(opts.out_svg);
        f << svg;
        close_out(f, opts.out_svg);
        warn_flags(v, err);
        fmt::print(out, "verdict {}: wrote {} ({} orbits, window {})\n", to_string(v.verdict), opts.out_svg,
                   po.seeds.size(), po.window);
        return Ok;
    });
}

namespace {

std::optional<HybridSystemSpec> with_parameter(const HybridSystemSpec& base, const std::string& name,
                                               double value, std::string& why) {
    try {
        const JumpMap& j = base.jump();
        double rho = base.line().rho();
        double a = j.a(), b = j.b(), r = j.r(), s = j.s();
        if (name == "rho") rho = value;
        else if (name == "a") a = value;
        else if (name == "b") b = value;
        else if (name == "r") r = value;
        else s = value;
        return HybridSystemSpec(base.b_plus(), base.b_minus(), SwitchingLine(rho), JumpMap(a, b, r, s));
    } catch (const Error& e) {
        why = e.what();
        return std::nullopt;
    }
}

}  // namespace

int cmd_sweep(const std::string& spec_path, const SweepOptions& opts, std::ostream& out,
              std::ostream& err) {
    return guarded(err, [&] {
        static const std::vector<std::string> names{"rho", "a", "b", "r", "s"};
        if (std::find(names.begin(), names.end(), opts.parameter) == names.end()) {
            throw UsageError(fmt::format("parameter must be one of rho, a, b, r, s; got \"{}\"", opts.parameter));
        }
        if (opts.samples < 1) throw UsageError(fmt::format("need samples ≥ 1, got {}", opts.samples));
        if (!std::isfinite(opts.from) || !std::isfinite(opts.to)) throw UsageError("sweep range must be finite");
        const LoadedSpec loaded = load_spec(spec_path);

        std::ofstream f = open_out(opts.out_csv);
        f << "param_value,verdict,x0,K,C_star\n";
        int invalid = 0;
        for (int i = 0; i < opts.samples; ++i) {
            const double value =
                opts.samples == 1 ? opts.from
                                  : (i == opts.samples - 1 ? opts.to
                                                           : opts.from + (opts.to - opts.from) * i / (opts.samples - 1));
            std::string why;
            std::optional<HybridSystemSpec> spec = with_parameter(loaded.spec, opts.parameter, value, why);
            std::optional<StabilityVerdict> v;
            if (spec) {
                try {
                    v = classify_system(*spec);
                } catch (const Error& e) {
                    why = e.what();
                }
            }
            if (!v) {
                ++invalid;
                spdlog::debug("sweep {} = {}: invalid ({})", opts.parameter, value, why);
                fmt::print(f, "{:.17g},invalid,,,\n", value);
                continue;
            }
            fmt::print(f, "{:.17g},{},{},{},{}\n", value, to_string(v->verdict),
                       v->cycle ? fmt::format("{:.17g}", v->cycle->x0) : std::string(),
                       opt_number(v->params ? std::optional<double>(v->params->K) : std::nullopt),
                       opt_number(v->params ? std::optional<double>(v->params->C_star) : std::nullopt));
        }
        close_out(f, opts.out_csv);
        fmt::print(out, "wrote {} rows to {} ({} invalid)\n", opts.samples, opts.out_csv, invalid);
        return Ok;
    });
}

}  // namespace hybridgas::cli
