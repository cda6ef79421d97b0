#pragma once

// Command implementations behind the hybridgas tool. Each returns the process
// exit code and writes human/JSON output to `out`, diagnostics to `err`.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hybridgas/errors.hpp"
#include "hybridgas/model.hpp"

namespace hybridgas::cli {

enum ExitCode : int {
    Ok = 0,
    Usage = 1,
    FileNotFound = 2,
    Parse = 3,
    Hypothesis = 4,
    Crossing = 5,
    Domain = 6,
    Io = 7,
};

/// Bad flag values (e.g. x_min >= x_max).
class UsageError : public Error {
public:
    using Error::Error;
};

int cmd_classify(const std::string& spec_path, std::ostream& out, std::ostream& err);

struct DisplacementOptions {
    double x_min = 1e-2;
    double x_max = 1e2;
    int samples = 100;
    std::string out_csv;
};
int cmd_displacement(const std::string& spec_path, const DisplacementOptions& opts, std::ostream& out,
                     std::ostream& err);

struct SimulateOptions {
    double x0 = 1.0;
    double y0 = 1.0;
    std::optional<double> t_max;
    std::optional<long> max_jumps;
    std::optional<std::string> integrator;
    std::string out_csv;
    /// Defaults to <out_csv stem>_events.csv next to out_csv.
    std::string events_csv;
};
int cmd_simulate(const std::string& spec_path, const SimulateOptions& opts, std::ostream& out,
                 std::ostream& err);

struct PortraitCliOptions {
    std::string out_svg;
    /// nullopt: default seeds. An empty list draws no orbits.
    std::optional<std::vector<Vec2>> seeds;
    /// nullopt: sized to fit the limit cycle (or 10).
    std::optional<double> window;
};
int cmd_portrait(const std::string& spec_path, const PortraitCliOptions& opts, std::ostream& out,
                 std::ostream& err);

struct SweepOptions {
    std::string parameter;  ///< rho | a | b | r | s
    double from = 0.0;
    double to = 1.0;
    int samples = 11;
    std::string out_csv;
};
int cmd_sweep(const std::string& spec_path, const SweepOptions& opts, std::ostream& out,
              std::ostream& err);

/// "x,y;x,y;..." (empty string -> empty list). Throws UsageError.
std::vector<Vec2> parse_seeds(const std::string& text);

}  // namespace hybridgas::cli
