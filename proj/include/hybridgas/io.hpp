#pragma once

// Spec files (JSON with comments) and the JSON verdict report.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hybridgas/analysis.hpp"
#include "hybridgas/errors.hpp"
#include "hybridgas/model.hpp"
#include "hybridgas/simulate.hpp"

namespace hybridgas {

/// Malformed or incomplete spec/report text. The message names the location.
class ParseError : public Error {
public:
    using Error::Error;
};

class FileError : public Error {
public:
    FileError(bool not_found, const std::string& what) : Error(what), not_found_(not_found) {}
    [[nodiscard]] bool not_found() const noexcept { return not_found_; }

private:
    bool not_found_;
};

struct LoadedSpec {
    HybridSystemSpec spec;
    /// Defaults overridden by the optional "sim" object.
    SimConfig sim;
};

/// Parses
///   { "B_plus": [[.,.],[.,.]], "B_minus": ..., "rho": .,
///     "jump": {"a": ., "b": ., "r": ., "s": .}, "sim": {...} }
/// Shape problems throw ParseError; hypothesis and crossing failures throw
/// the model's own errors.
LoadedSpec parse_spec(std::string_view text, std::string_view origin = "<spec>");
LoadedSpec load_spec(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

struct SideReport {
    double sigma;
    double delta;
    std::string kind;
    std::string behaviour;
    double eta;
    double b21;

    friend bool operator==(const SideReport&, const SideReport&) = default;
};

struct CycleReport {
    double x0;
    double delta_prime;
    std::string stability;

    friend bool operator==(const CycleReport&, const CycleReport&) = default;
};

struct VerdictReport {
    std::string verdict;
    std::string orientation;
    bool near_center = false;
    bool node_transit = false;
    SideReport plus;
    SideReport minus;
    double rho;
    double r;
    double inv_s;
    std::optional<double> K;
    std::optional<double> C_star;
    std::optional<double> log_K;
    std::optional<double> log_C_star;
    std::optional<CycleReport> cycle;

    friend bool operator==(const VerdictReport&, const VerdictReport&) = default;
};

VerdictReport make_report(const HybridSystemSpec& spec, const StabilityVerdict& verdict);

nlohmann::json to_json(const VerdictReport& report);
/// Throws ParseError on missing or mistyped fields.
VerdictReport report_from_json(const nlohmann::json& j);

/// Shortest text that parses back to the same double.
std::string format_double(double v);

}  // namespace hybridgas
