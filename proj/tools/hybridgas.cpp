// hybridgas classify|displacement|simulate|portrait|sweep <spec> [flags]
//
// Exit codes: 0 ok, 1 usage, 2 file not found, 3 parse error,
// 4 hypothesis violated (H1, jump, slope), 5 crossing violated,
// 6 domain/simulation error, 7 write error.
// Log level from SPDLOG_LEVEL (e.g. SPDLOG_LEVEL=debug).

#include <iostream>

#include <CLI11.hpp>
#include <spdlog/cfg/env.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "hybridgas/cli.hpp"

namespace cli = hybridgas::cli;

int main(int argc, char** argv) {
    spdlog::set_default_logger(spdlog::stderr_color_mt("hybridgas"));
    spdlog::set_level(spdlog::level::warn);
    spdlog::cfg::load_env_levels();

    CLI::App app{"Global dynamics of planar hybrid systems built from two Hurwitz fields"};
    app.require_subcommand(1);

    std::string spec;
    auto* classify = app.add_subcommand("classify", "print the JSON verdict report");
    classify->add_option("spec", spec, "spec file")->required();

    cli::DisplacementOptions dopt;
    auto* disp = app.add_subcommand("displacement", "tabulate the displacement map on a log grid");
    disp->add_option("spec", spec, "spec file")->required();
    disp->add_option("--x-min", dopt.x_min, "smallest x")->capture_default_str();
    disp->add_option("--x-max", dopt.x_max, "largest x")->capture_default_str();
    disp->add_option("--samples", dopt.samples, "grid size")->capture_default_str();
    disp->add_option("-o,--out", dopt.out_csv, "output CSV")->required();

    cli::SimulateOptions sopt;
    double t_max = 0.0;
    long max_jumps = 0;
    std::string integrator;
    auto* sim = app.add_subcommand("simulate", "integrate one hybrid orbit");
    sim->add_option("spec", spec, "spec file")->required();
    sim->add_option("x0", sopt.x0, "start x")->required();
    sim->add_option("y0", sopt.y0, "start y")->required();
    auto* t_max_opt = sim->add_option("--t-max", t_max, "time limit");
    auto* jumps_opt = sim->add_option("--max-jumps", max_jumps, "jump limit");
    auto* integ_opt = sim->add_option("--integrator", integrator, "closed_form or rk45");
    sim->add_option("-o,--out", sopt.out_csv, "trajectory CSV")->required();
    sim->add_option("--events", sopt.events_csv, "events CSV (default <out>_events.csv)");

    cli::PortraitCliOptions popt;
    std::string seeds;
    double window = 0.0;
    auto* portrait = app.add_subcommand("portrait", "draw an SVG phase portrait");
    portrait->add_option("spec", spec, "spec file")->required();
    portrait->add_option("-o,--out", popt.out_svg, "output SVG")->required();
    auto* seeds_opt = portrait->add_option("--seeds", seeds, "start points \"x,y;x,y\" (\"\" for none)");
    auto* window_opt = portrait->add_option("--window", window, "half-width of the plot window");

    cli::SweepOptions wopt;
    auto* sweep = app.add_subcommand("sweep", "classify along one parameter");
    sweep->add_option("spec", spec, "spec file")->required();
    sweep->add_option("--param", wopt.parameter, "rho, a, b, r or s")->required();
    sweep->add_option("--from", wopt.from, "first value")->required();
    sweep->add_option("--to", wopt.to, "last value")->required();
    sweep->add_option("--samples", wopt.samples, "number of values")->capture_default_str();
    sweep->add_option("-o,--out", wopt.out_csv, "output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::Usage;
    }

    if (*classify) return cli::cmd_classify(spec, std::cout, std::cerr);
    if (*disp) return cli::cmd_displacement(spec, dopt, std::cout, std::cerr);
    if (*sim) {
        if (*t_max_opt) sopt.t_max = t_max;
        if (*jumps_opt) sopt.max_jumps = max_jumps;
        if (*integ_opt) sopt.integrator = integrator;
        return cli::cmd_simulate(spec, sopt, std::cout, std::cerr);
    }
    if (*portrait) {
        if (*seeds_opt) {
            try {
                popt.seeds = cli::parse_seeds(seeds);
            } catch (const cli::UsageError& e) {
                std::cerr << "usage error: " << e.what() << '\n';
                return cli::Usage;
            }
        }
        if (*window_opt) popt.window = window;
        return cli::cmd_portrait(spec, popt, std::cout, std::cerr);
    }
    return cli::cmd_sweep(spec, wopt, std::cout, std::cerr);
}
