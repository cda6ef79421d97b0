#include "hybridgas/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "hybridgas/normal_form.hpp"

namespace hybridgas {

using nlohmann::json;

std::string format_double(double v) { return fmt::format("{}", v); }

std::string read_file(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
        throw FileError(true, fmt::format("file not found: {}", path.string()));
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError(false, fmt::format("cannot open {}", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw FileError(false, fmt::format("error reading {}", path.string()));
    return ss.str();
}

namespace {

class Reader {
public:
    explicit Reader(std::string_view origin) : origin_(origin) {}

    [[noreturn]] void fail(const std::string& where, const std::string& msg) const {
        throw ParseError(fmt::format("{}: {}: {}", origin_, where.empty() ? "/" : where, msg));
    }

    const json& field(const json& obj, const std::string& where, const char* key) const {
        auto it = obj.find(key);
        if (it == obj.end()) fail(where, fmt::format("missing field \"{}\"", key));
        return *it;
    }

    double number(const json& j, const std::string& where) const {
        if (!j.is_number()) fail(where, fmt::format("expected a number, got {}", j.type_name()));
        return j.get<double>();
    }

    long integer(const json& j, const std::string& where) const {
        if (!j.is_number_integer()) fail(where, fmt::format("expected an integer, got {}", j.dump()));
        return j.get<long>();
    }

    void only_keys(const json& obj, const std::string& where, std::set<std::string> allowed) const {
        if (!obj.is_object()) fail(where, fmt::format("expected an object, got {}", obj.type_name()));
        for (const auto& [key, value] : obj.items()) {
            if (!allowed.contains(key)) fail(where, fmt::format("unknown field \"{}\"", key));
        }
    }

    Matrix2 matrix(const json& j, const std::string& where) const {
        if (!j.is_array() || j.size() != 2) fail(where, "expected a 2x2 array [[b11, b12], [b21, b22]]");
        double v[2][2];
        for (std::size_t i = 0; i < 2; ++i) {
            const std::string row = fmt::format("{}/{}", where, i);
            if (!j[i].is_array() || j[i].size() != 2) fail(row, "expected a row of 2 numbers");
            for (std::size_t k = 0; k < 2; ++k) v[i][k] = number(j[i][k], fmt::format("{}/{}", row, k));
        }
        return {v[0][0], v[0][1], v[1][0], v[1][1]};
    }

private:
    std::string origin_;
};

SimConfig parse_sim(const json& j, const Reader& rd) {
    rd.only_keys(j, "/sim",
                 {"t_max", "max_jumps", "converge_norm", "diverge_norm", "event_tol", "integrator",
                  "abs_tol", "rel_tol"});
    SimConfig cfg;
    auto num = [&](const char* key, double& out) {
        if (j.contains(key)) out = rd.number(j[key], fmt::format("/sim/{}", key));
    };
    num("t_max", cfg.t_max);
    num("converge_norm", cfg.converge_norm);
    num("diverge_norm", cfg.diverge_norm);
    num("event_tol", cfg.event_tol);
    num("abs_tol", cfg.abs_tol);
    num("rel_tol", cfg.rel_tol);
    if (j.contains("max_jumps")) cfg.max_jumps = rd.integer(j["max_jumps"], "/sim/max_jumps");
    if (j.contains("integrator")) {
        const json& k = j["integrator"];
        if (k == "closed_form") {
            cfg.integrator = IntegratorKind::ClosedForm;
        } else if (k == "rk45") {
            cfg.integrator = IntegratorKind::RK45;
        } else {
            rd.fail("/sim/integrator", fmt::format("expected \"closed_form\" or \"rk45\", got {}", k.dump()));
        }
    }
    cfg.validate();
    return cfg;
}

}  // namespace

LoadedSpec parse_spec(std::string_view text, std::string_view origin) {
    json root;
    try {
        root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ParseError(fmt::format("{}: byte {}: {}", origin, e.byte, e.what()));
    }
    const Reader rd(origin);
    rd.only_keys(root, "", {"B_plus", "B_minus", "rho", "jump", "sim"});
    const Matrix2 bp = rd.matrix(rd.field(root, "", "B_plus"), "/B_plus");
    const Matrix2 bm = rd.matrix(rd.field(root, "", "B_minus"), "/B_minus");
    const double rho = rd.number(rd.field(root, "", "rho"), "/rho");
    const json& jj = rd.field(root, "", "jump");
    rd.only_keys(jj, "/jump", {"a", "b", "r", "s"});
    const double a = rd.number(rd.field(jj, "/jump", "a"), "/jump/a");
    const double b = rd.number(rd.field(jj, "/jump", "b"), "/jump/b");
    const double r = rd.number(rd.field(jj, "/jump", "r"), "/jump/r");
    const double s = rd.number(rd.field(jj, "/jump", "s"), "/jump/s");
    SimConfig sim;
    if (root.contains("sim")) sim = parse_sim(root["sim"], rd);

    return {HybridSystemSpec(HurwitzMatrix(bp), HurwitzMatrix(bm), SwitchingLine(rho), JumpMap(a, b, r, s)),
            sim};
}

LoadedSpec load_spec(const std::filesystem::path& path) {
    return parse_spec(read_file(path), path.string());
}

VerdictReport make_report(const HybridSystemSpec& spec, const StabilityVerdict& v) {
    auto side = [&](Side s, const SpectralData& d, SideBehaviour b) {
        const HurwitzMatrix& m = spec.field(s);
        return SideReport{d.sigma,
                          d.delta,
                          std::string(to_string(d.tag())),
                          std::string(to_string(b)),
                          eta(m, spec.line().rho()),
                          m.matrix().b21};
    };
    VerdictReport rep;
    rep.verdict = std::string(to_string(v.verdict));
    rep.orientation = std::string(to_string(v.orientation));
    rep.near_center = v.near_center;
    rep.node_transit = v.node_transit;
    rep.plus = side(Side::Plus, v.plus, v.plus_behaviour);
    rep.minus = side(Side::Minus, v.minus, v.minus_behaviour);
    rep.rho = spec.line().rho();
    rep.r = spec.jump().r();
    rep.inv_s = 1.0 / spec.jump().s();
    if (v.params) {
        rep.K = v.params->K;
        rep.C_star = v.params->C_star;
        rep.log_K = v.params->log_K;
        rep.log_C_star = v.params->log_C_star;
    }
    if (v.cycle) {
        rep.cycle = CycleReport{v.cycle->x0, v.cycle->delta_prime, std::string(to_string(v.cycle->stability))};
    }
    return rep;
}

namespace {

json side_json(const SideReport& s) {
    return {{"sigma", s.sigma}, {"delta", s.delta}, {"kind", s.kind},
            {"behaviour", s.behaviour}, {"eta", s.eta}, {"b21", s.b21}};
}

SideReport side_from(const json& j, const std::string& where, const Reader& rd) {
    auto str = [&](const char* key) {
        const json& v = rd.field(j, where, key);
        if (!v.is_string()) rd.fail(where + "/" + key, "expected a string");
        return v.get<std::string>();
    };
    auto num = [&](const char* key) { return rd.number(rd.field(j, where, key), where + "/" + key); };
    return {num("sigma"), num("delta"), str("kind"), str("behaviour"), num("eta"), num("b21")};
}

}  // namespace

json to_json(const VerdictReport& r) {
    json j;
    j["case"] = r.verdict;
    j["orientation"] = r.orientation;
    j["near_center"] = r.near_center;
    j["node_transit"] = r.node_transit;
    j["plus"] = side_json(r.plus);
    j["minus"] = side_json(r.minus);
    j["rho"] = r.rho;
    j["r"] = r.r;
    j["inv_s"] = r.inv_s;
    // doubles are written as the shortest text that reads back exactly
    auto opt = [&](const char* key, const std::optional<double>& v) {
        j[key] = v ? json(*v) : json(nullptr);
    };
    opt("K", r.K);
    opt("C_star", r.C_star);
    opt("log_K", r.log_K);
    opt("log_C_star", r.log_C_star);
    if (r.cycle) {
        j["cycle"] = {{"x0", r.cycle->x0}, {"delta_prime", r.cycle->delta_prime},
                      {"stability", r.cycle->stability}};
    } else {
        j["cycle"] = nullptr;
    }
    return j;
}

VerdictReport report_from_json(const json& j) {
    const Reader rd("<report>");
    if (!j.is_object()) rd.fail("", "expected an object");
    auto str = [&](const char* key) {
        const json& v = rd.field(j, "", key);
        if (!v.is_string()) rd.fail(std::string("/") + key, "expected a string");
        return v.get<std::string>();
    };
    auto boolean = [&](const char* key) {
        const json& v = rd.field(j, "", key);
        if (!v.is_boolean()) rd.fail(std::string("/") + key, "expected a boolean");
        return v.get<bool>();
    };
    auto num = [&](const char* key) { return rd.number(rd.field(j, "", key), std::string("/") + key); };
    auto opt = [&](const char* key) -> std::optional<double> {
        const json& v = rd.field(j, "", key);
        if (v.is_null()) return std::nullopt;
        return rd.number(v, std::string("/") + key);
    };

    VerdictReport r;
    r.verdict = str("case");
    r.orientation = str("orientation");
    r.near_center = boolean("near_center");
    r.node_transit = boolean("node_transit");
    r.plus = side_from(rd.field(j, "", "plus"), "/plus", rd);
    r.minus = side_from(rd.field(j, "", "minus"), "/minus", rd);
    r.rho = num("rho");
    r.r = num("r");
    r.inv_s = num("inv_s");
    r.K = opt("K");
    r.C_star = opt("C_star");
    r.log_K = opt("log_K");
    r.log_C_star = opt("log_C_star");
    const json& c = rd.field(j, "", "cycle");
    if (!c.is_null()) {
        const json& st = rd.field(c, "/cycle", "stability");
        if (!st.is_string()) rd.fail("/cycle/stability", "expected a string");
        r.cycle = CycleReport{rd.number(rd.field(c, "/cycle", "x0"), "/cycle/x0"),
                              rd.number(rd.field(c, "/cycle", "delta_prime"), "/cycle/delta_prime"),
                              st.get<std::string>()};
    }
    return r;
}

}  // namespace hybridgas
