#include "degenhyp/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

namespace degenhyp::cli {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::Validation, msg); }

void allow_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) invalid(where + ": expected an object");
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : obj.items())
        if (!ok.contains(k)) invalid(where + ": unknown key '" + k + "'");
}

double number(const Json& obj, const char* key, double def, const std::string& where) {
    if (!obj.contains(key)) return def;
    const auto& v = obj.at(key);
    if (!v.is_number()) invalid(where + "." + key + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) invalid(where + "." + key + ": not finite");
    return d;
}

long long integer(const Json& obj, const char* key, long long def, const std::string& where) {
    if (!obj.contains(key)) return def;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) invalid(where + "." + key + ": expected an integer");
    return v.get<long long>();
}

Json section(const Json& root, const char* key) {
    return root.contains(key) ? root.at(key) : Json::object();
}

Matrix square(const Json& j, const std::string& where, int N = -1) {
    Matrix M = json_matrix(j, where);
    if (M.rows() != M.cols()) invalid(where + ": matrix must be square");
    if (N >= 0 && M.rows() != N) invalid(where + ": expected " + std::to_string(N) + " rows");
    return M;
}

/// Validates the problem payload and fills its defaults.
Json resolve_problem(const Json& p, int l_star) {
    const std::string where = "problem";
    if (!p.is_object()) invalid("problem: expected an object");
    Json out = p;
    if (p.contains("builtin")) {
        if (!p.at("builtin").is_string()) invalid("problem.builtin: expected a string");
        const auto name = p.at("builtin").get<std::string>();
        auto need_l1 = [&] {
            if (l_star != 1) invalid("problem " + name + " is defined for l_star = 1");
        };
        if (name == "qi") {
            allow_keys(p, where, {"builtin", "k"});
            if (!p.contains("k")) invalid("problem.k: required for qi");
            out["k"] = number(p, "k", 0.0, where);
            need_l1();
        } else if (name == "wave") {
            allow_keys(p, where, {"builtin", "c"});
            out["c"] = number(p, "c", 0.0, where);
        } else if (name == "transport") {
            allow_keys(p, where, {"builtin", "a"});
            if (!p.contains("a")) invalid("problem.a: required for transport");
            out["a"] = number(p, "a", 0.0, where);
        } else if (name == "differential-system") {
            allow_keys(p, where, {"builtin", "A0"});
            if (!p.contains("A0")) out["A0"] = Json::array({Json::array({0, 1}), Json::array({1, 0})});
            const Matrix A0 = square(out["A0"], "problem.A0");
            if ((A0 - A0.adjoint()).norm() > 1e-12 * (1.0 + A0.norm())) invalid("problem.A0: must be Hermitian");
        } else if (name == "single-block") {
            allow_keys(p, where, {"builtin", "A1", "cos_amplitude"});
            if (!p.contains("A1")) invalid("problem.A1: required for single-block");
            (void)square(p.at("A1"), "problem.A1");
            out["cos_amplitude"] = number(p, "cos_amplitude", 0.0, where);
        } else if (name == "qi-energy") {
            allow_keys(p, where, {"builtin", "k", "c"});
            if (!p.contains("k")) invalid("problem.k: required for qi-energy");
            out["k"] = number(p, "k", 0.0, where);
            out["c"] = number(p, "c", 1.0, where);
            need_l1();
        } else if (name == "hermitian-test") {
            allow_keys(p, where, {"builtin"});
            need_l1();
        } else {
            invalid("problem.builtin: unknown built-in '" + name + "'");
        }
        return out;
    }
    if (p.contains("operator")) {
        allow_keys(p, where, {"operator"});
        const auto& op = p.at("operator");
        allow_keys(op, "problem.operator", {"m", "terms"});
        const auto m = integer(op, "m", -1, "problem.operator");
        if (m < 1 || m > 8) invalid("problem.operator.m: expected 1 <= m <= 8");
        if (!op.contains("terms") || !op.at("terms").is_array()) invalid("problem.operator.terms: expected an array");
        for (std::size_t i = 0; i < op.at("terms").size(); ++i) {
            const auto& t = op.at("terms")[i];
            const std::string w = "problem.operator.terms[" + std::to_string(i) + "]";
            allow_keys(t, w, {"j", "alpha", "coeff"});
            const auto j = integer(t, "j", -1, w);
            const auto a = integer(t, "alpha", -1, w);
            if (j < 0 || a < 0 || j >= m || j + a > m) invalid(w + ": need 0 <= j < m and j + alpha <= m");
            if (!t.contains("coeff")) invalid(w + ".coeff: required");
            const auto& c = t.at("coeff");
            if (c.is_object()) {
                allow_keys(c, w + ".coeff", {"fourier"});
                if (!c.contains("fourier") || !c.at("fourier").is_array()) invalid(w + ".coeff.fourier: expected an array");
                for (const auto& f : c.at("fourier"))
                    if (!f.is_array() || f.size() != 3 || !f[0].is_number_integer() || !f[1].is_number() ||
                        !f[2].is_number())
                        invalid(w + ".coeff.fourier: entries are [k, re, im]");
            } else {
                (void)json_complex(c, w + ".coeff");
            }
        }
        return out;
    }
    if (p.contains("system")) {
        allow_keys(p, where, {"system"});
        const auto& s = p.at("system");
        allow_keys(s, "problem.system", {"A0", "A0_minus", "A1", "A1_minus", "multiplicities"});
        if (!s.contains("A0")) invalid("problem.system.A0: required");
        const Matrix A0 = square(s.at("A0"), "problem.system.A0");
        const int N = static_cast<int>(A0.rows());
        if (s.contains("A0_minus")) (void)square(s.at("A0_minus"), "problem.system.A0_minus", N);
        if (s.contains("A1")) (void)square(s.at("A1"), "problem.system.A1", N);
        if (s.contains("A1_minus")) (void)square(s.at("A1_minus"), "problem.system.A1_minus", N);
        if (s.contains("multiplicities")) {
            const auto& mu = s.at("multiplicities");
            if (!mu.is_array()) invalid("problem.system.multiplicities: expected an array");
            int total = 0;
            for (const auto& v : mu) {
                if (!v.is_number_integer() || v.get<int>() < 1) invalid("problem.system.multiplicities: positive integers");
                total += v.get<int>();
            }
            if (total != N) invalid("problem.system.multiplicities: must add up to N");
        }
        return out;
    }
    invalid("problem: expected 'builtin', 'operator' or 'system'");
}

Json resolve_symbol(const Json& s) {
    allow_keys(s, "symbol", {"builtin", "m", "eta", "k", "declared", "max_orders"});
    if (!s.contains("builtin") || !s.at("builtin").is_string()) invalid("symbol.builtin: expected a string");
    Json out = s;
    const auto name = s.at("builtin").get<std::string>();
    double m = 0.0, eta = 0.0;
    if (name == "weight-power") {
        m = number(s, "m", 0.0, "symbol");
        eta = number(s, "eta", 0.0, "symbol");
        out["m"] = m;
        out["eta"] = eta;
    } else if (name == "lambda-xi") {
        m = 1.0;
        eta = 1.0;
    } else if (name == "chi-minus-power") {
        m = -1.0;
        eta = 1.0;
    } else if (name == "qi-system") {
        if (!s.contains("k")) invalid("symbol.k: required for qi-system");
        out["k"] = number(s, "k", 0.0, "symbol");
        m = 1.0;
        eta = 1.0;
    } else {
        invalid("symbol.builtin: unknown built-in '" + name + "'");
    }
    if (s.contains("declared")) {
        const auto& d = s.at("declared");
        if (!d.is_array() || d.size() != 2 || !d[0].is_number() || !d[1].is_number())
            invalid("symbol.declared: expected [m, eta]");
    } else {
        out["declared"] = Json::array({m, eta});
    }
    const Json mo = section(s, "max_orders");
    allow_keys(mo, "symbol.max_orders", {"J", "A", "B"});
    Json mo_out;
    for (const char* k : {"J", "A", "B"}) {
        const auto v = integer(mo, k, k[0] == 'A' ? 0 : 1, "symbol.max_orders");
        if (v < 0 || v > 2) invalid(std::string("symbol.max_orders.") + k + ": expected 0..2");
        mo_out[k] = v;
    }
    out["max_orders"] = mo_out;
    return out;
}

bool needs_problem(Command c) { return c != Command::CheckSymbol; }

} // namespace

std::optional<Command> parse_command(std::string_view name) {
    if (name == "analyze-system") return Command::AnalyzeSystem;
    if (name == "analyze-operator") return Command::AnalyzeOperator;
    if (name == "solve") return Command::Solve;
    if (name == "loss-experiment") return Command::LossExperiment;
    if (name == "check-symbol") return Command::CheckSymbol;
    if (name == "sweep") return Command::Sweep;
    return std::nullopt;
}

std::string to_string(Command c) {
    switch (c) {
        case Command::AnalyzeSystem: return "analyze-system";
        case Command::AnalyzeOperator: return "analyze-operator";
        case Command::Solve: return "solve";
        case Command::LossExperiment: return "loss-experiment";
        case Command::CheckSymbol: return "check-symbol";
        case Command::Sweep: return "sweep";
    }
    return "?";
}

cplx json_complex(const Json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    invalid(where + ": expected a number or [re, im]");
}

Matrix json_matrix(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) invalid(where + ": expected a non-empty array of rows");
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) invalid(where + ": rows must be non-empty arrays");
    Matrix M(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (!j[r].is_array() || j[r].size() != cols) invalid(where + ": ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                json_complex(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return M;
}

RunConfig parse_config(const Json& input, Command command, std::optional<std::uint64_t> seed) {
    allow_keys(input, "config",
               {"command", "degeneracy", "problem", "symbol", "grids", "tolerances", "seed", "experiment", "data",
                "energy", "sweep"});
    if (input.contains("command")) {
        if (!input.at("command").is_string()) invalid("command: expected a string");
        const auto c = parse_command(input.at("command").get<std::string>());
        if (!c) invalid("command: unknown command '" + input.at("command").get<std::string>() + "'");
        if (*c != command) invalid("command: file says '" + to_string(*c) + "' but '" + to_string(command) + "' was run");
    }
    RunConfig cfg;
    cfg.command = command;
    Json res;
    res["command"] = to_string(command);

    const Json deg = section(input, "degeneracy");
    allow_keys(deg, "degeneracy", {"l_star", "T"});
    const auto l = integer(deg, "l_star", 1, "degeneracy");
    if (l < 1 || l > 16) invalid("degeneracy.l_star: expected 1 <= l_star <= 16");
    cfg.l_star = static_cast<int>(l);
    cfg.T = number(deg, "T", 1.0, "degeneracy");
    if (!(cfg.T > 0.0)) invalid("degeneracy.T: must be > 0");
    res["degeneracy"] = {{"l_star", cfg.l_star}, {"T", cfg.T}};

    if (command == Command::Sweep) {
        if (!input.contains("sweep")) invalid("sweep: required for the sweep command");
        const auto& s = input.at("sweep");
        allow_keys(s, "sweep", {"command", "axis", "values"});
        SweepConfig sw;
        if (!s.contains("command") || !s.at("command").is_string()) invalid("sweep.command: expected a string");
        const auto c = parse_command(s.at("command").get<std::string>());
        if (!c || *c == Command::Sweep) invalid("sweep.command: must name a single-run command");
        sw.command = *c;
        if (!s.contains("axis") || !s.at("axis").is_string()) invalid("sweep.axis: expected a string");
        sw.axis = s.at("axis").get<std::string>();
        static const std::set<std::string> axes{"k", "a", "c", "l_star", "sigma", "t_probe", "eps", "n_modes", "seed", "C"};
        if (!axes.contains(sw.axis)) invalid("sweep.axis: unknown axis '" + sw.axis + "'");
        if (!s.contains("values") || !s.at("values").is_array()) invalid("sweep.values: expected an array");
        for (const auto& v : s.at("values")) {
            if (!v.is_number() || !std::isfinite(v.get<double>())) invalid("sweep.values: expected finite numbers");
            sw.values.push_back(v.get<double>());
        }
        if (sw.values.empty()) invalid("sweep.values: empty axis");
        res["sweep"] = {{"command", to_string(sw.command)}, {"axis", sw.axis}, {"values", sw.values}};
        cfg.sweep = sw;
    } else if (input.contains("sweep")) {
        invalid("sweep: only valid for the sweep command");
    }
    const Command effective = cfg.sweep ? cfg.sweep->command : command;

    if (needs_problem(effective)) {
        if (!input.contains("problem")) invalid("problem: required for " + to_string(effective));
        cfg.problem = resolve_problem(input.at("problem"), cfg.l_star);
        res["problem"] = cfg.problem;
    }
    if (effective == Command::CheckSymbol) {
        if (!input.contains("symbol")) invalid("symbol: required for check-symbol");
        cfg.symbol = resolve_symbol(input.at("symbol"));
        res["symbol"] = cfg.symbol;
    }

    const Json grids = section(input, "grids");
    allow_keys(grids, "grids", {"x_points", "n_modes", "t_out"});
    if (grids.contains("x_points") && grids.at("x_points").is_array()) {
        for (const auto& v : grids.at("x_points")) {
            if (!v.is_number()) invalid("grids.x_points: expected numbers");
            cfg.x_points.push_back(v.get<double>());
        }
        if (cfg.x_points.empty()) invalid("grids.x_points: empty");
    } else {
        const auto count = integer(grids, "x_points", 8, "grids");
        if (count < 1 || count > 4096) invalid("grids.x_points: expected 1..4096 points");
        for (long long i = 0; i < count; ++i)
            cfg.x_points.push_back(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count));
    }
    const auto n = integer(grids, "n_modes", 512, "grids");
    if (n < 16 || n > (1 << 20) || (n & (n - 1)) != 0) invalid("grids.n_modes: power of two in [16, 2^20]");
    cfg.n_modes = static_cast<int>(n);
    if (grids.contains("t_out")) {
        if (!grids.at("t_out").is_array()) invalid("grids.t_out: expected an array");
        for (const auto& v : grids.at("t_out")) {
            if (!v.is_number()) invalid("grids.t_out: expected numbers");
            cfg.t_out.push_back(v.get<double>());
        }
    } else {
        for (int i = 0; i <= 10; ++i) cfg.t_out.push_back(cfg.T * i / 10.0);
    }
    for (std::size_t i = 0; i < cfg.t_out.size(); ++i) {
        if (cfg.t_out[i] < 0.0 || cfg.t_out[i] > cfg.T) invalid("grids.t_out: times must lie in [0, T]");
        if (i > 0 && !(cfg.t_out[i] > cfg.t_out[i - 1])) invalid("grids.t_out: times must increase");
    }
    if (cfg.t_out.empty()) invalid("grids.t_out: empty");
    res["grids"] = {{"x_points", cfg.x_points}, {"n_modes", cfg.n_modes}, {"t_out", cfg.t_out}};

    const Json tol = section(input, "tolerances");
    allow_keys(tol, "tolerances", {"rtol", "atol", "eps"});
    cfg.rtol = number(tol, "rtol", 1e-10, "tolerances");
    cfg.atol = number(tol, "atol", 1e-300, "tolerances");
    cfg.eps = number(tol, "eps", 0.0, "tolerances");
    if (!(cfg.rtol > 0.0) || cfg.atol < 0.0 || cfg.eps < 0.0) invalid("tolerances: rtol > 0, atol >= 0, eps >= 0");
    res["tolerances"] = {{"rtol", cfg.rtol}, {"atol", cfg.atol}, {"eps", cfg.eps}};

    if (input.contains("seed")) {
        if (!input.at("seed").is_number_unsigned()) invalid("seed: expected a non-negative integer");
        cfg.seed = input.at("seed").get<std::uint64_t>();
    }
    if (seed) cfg.seed = *seed;
    res["seed"] = cfg.seed;

    const Json ex = section(input, "experiment");
    allow_keys(ex, "experiment", {"sigma", "t_probe"});
    cfg.sigma = number(ex, "sigma", 6.0, "experiment");
    cfg.t_probe = number(ex, "t_probe", cfg.T, "experiment");
    if (!(cfg.t_probe > 0.0) || cfg.t_probe > cfg.T) invalid("experiment.t_probe: must lie in (0, T]");
    res["experiment"] = {{"sigma", cfg.sigma}, {"t_probe", cfg.t_probe}};

    const Json data = section(input, "data");
    allow_keys(data, "data", {"kind", "k_max"});
    if (data.contains("kind")) {
        if (!data.at("kind").is_string()) invalid("data.kind: expected a string");
        cfg.data_kind = data.at("kind").get<std::string>();
    }
    if (cfg.data_kind != "decay" && cfg.data_kind != "band-limited") invalid("data.kind: 'decay' or 'band-limited'");
    cfg.k_max = static_cast<int>(integer(data, "k_max", 32, "data"));
    if (cfg.data_kind == "band-limited" && (cfg.k_max < 1 || cfg.k_max >= cfg.n_modes / 2))
        invalid("data.k_max: must lie in [1, n_modes/2)");
    res["data"] = {{"kind", cfg.data_kind}, {"k_max", cfg.k_max}};

    const Json en = section(input, "energy");
    allow_keys(en, "energy", {"enabled", "C"});
    if (en.contains("enabled")) {
        if (!en.at("enabled").is_boolean()) invalid("energy.enabled: expected a boolean");
        cfg.energy = en.at("enabled").get<bool>();
    }
    cfg.energy_C = number(en, "C", 1.0, "energy");
    if (cfg.energy_C < 0.0) invalid("energy.C: must be >= 0");
    res["energy"] = {{"enabled", cfg.energy}, {"C", cfg.energy_C}};
    if (cfg.energy && cfg.t_out.front() != 0.0) invalid("energy: grids.t_out must start at 0");

    cfg.resolved = std::move(res);
    return cfg;
}

RunConfig load_config(const std::string& path, Command command, std::optional<std::uint64_t> seed) {
    std::ifstream in(path);
    if (!in) invalid("cannot open config '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        invalid(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j, command, seed);
}

RunConfig sweep_point(const RunConfig& base, double value) {
    if (!base.sweep) invalid("not a sweep config");
    Json j = base.resolved;
    const auto& axis = base.sweep->axis;
    j.erase("sweep");
    j["command"] = to_string(base.sweep->command);
    auto as_int = [&](const char* what) {
        if (value != std::floor(value)) invalid(std::string("sweep axis ") + what + " needs integer values");
        return static_cast<long long>(value);
    };
    if (axis == "k" || axis == "a" || axis == "c") {
        if (!j.contains("problem") || !j["problem"].contains("builtin"))
            invalid("sweep axis '" + axis + "' needs a built-in problem");
        j["problem"][axis] = value;
    } else if (axis == "l_star") {
        j["degeneracy"]["l_star"] = as_int("l_star");
    } else if (axis == "sigma" || axis == "t_probe") {
        j["experiment"][axis] = value;
    } else if (axis == "eps") {
        j["tolerances"]["eps"] = value;
    } else if (axis == "n_modes") {
        j["grids"]["n_modes"] = as_int("n_modes");
    } else if (axis == "seed") {
        if (value < 0.0) invalid("sweep axis seed needs non-negative values");
        j["seed"] = static_cast<std::uint64_t>(as_int("seed"));
    } else if (axis == "C") {
        j["energy"]["C"] = value;
    }
    return parse_config(j, base.sweep->command);
}

} // namespace degenhyp::cli
