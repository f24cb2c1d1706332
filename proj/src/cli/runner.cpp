#include "degenhyp/cli/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "degenhyp/symbolcalc/estimates.hpp"

namespace degenhyp::cli {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::Validation, msg); }

std::string builtin_name(const RunConfig& cfg) {
    return cfg.problem.contains("builtin") ? cfg.problem.at("builtin").get<std::string>() : std::string();
}

double param(const RunConfig& cfg, const char* key) { return cfg.problem.at(key).get<double>(); }

std::string config_header(const RunConfig& cfg) { return "# config=" + cfg.resolved.dump() + "\n"; }

std::vector<Vec> x_grid(const RunConfig& cfg) {
    std::vector<Vec> xs;
    for (double x : cfg.x_points) xs.push_back(vec1(x));
    return xs;
}

Json nullable(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

reduction::ScalarOperator custom_operator(const RunConfig& cfg) {
    const auto& j = cfg.problem.at("operator");
    reduction::ScalarOperator op{j.at("m").get<int>(), weights::DegeneracySpec(cfg.l_star, cfg.T), 1, {}, "operator"};
    for (const auto& t : j.at("terms")) {
        reduction::OperatorTerm term;
        term.j = t.at("j").get<int>();
        term.alpha = {t.at("alpha").get<int>()};
        const auto& c = t.at("coeff");
        if (c.is_object()) {
            std::vector<std::pair<int, cplx>> modes;
            for (const auto& f : c.at("fourier")) modes.emplace_back(f[0].get<int>(), cplx(f[1].get<double>(), f[2].get<double>()));
            term.parts.push_back({{}, [modes](const Vec& x) {
                                      cplx s = 0.0;
                                      for (const auto& [k, a] : modes) s += a * std::exp(cplx(0.0, k * x(0)));
                                      return s;
                                  }});
        } else {
            term.parts.push_back(reduction::constant(json_complex(c, "coeff")));
        }
        op.terms.push_back(std::move(term));
    }
    op.validate();
    return op;
}

std::vector<int> default_multiplicities(const Matrix& A0) {
    Eigen::ComplexEigenSolver<Matrix> es(A0);
    std::vector<double> ev;
    for (int i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()(i).real());
    std::sort(ev.begin(), ev.end());
    double scale = 0.0;
    for (double v : ev) scale = std::max(scale, std::abs(v));
    std::vector<int> mult{1};
    for (std::size_t i = 1; i < ev.size(); ++i) {
        if (ev[i] - ev[i - 1] <= 1e-6 * std::max(scale, 1.0))
            ++mult.back();
        else
            mult.push_back(1);
    }
    return mult;
}

systems::FirstOrderSystem custom_system(const RunConfig& cfg) {
    const auto& s = cfg.problem.at("system");
    const Matrix A0p = json_matrix(s.at("A0"), "A0");
    const int N = static_cast<int>(A0p.rows());
    const Matrix A0m = s.contains("A0_minus") ? json_matrix(s.at("A0_minus"), "A0_minus") : Matrix(-A0p);
    const Matrix A1p = s.contains("A1") ? json_matrix(s.at("A1"), "A1") : Matrix(Matrix::Zero(N, N));
    const Matrix A1m = s.contains("A1_minus") ? json_matrix(s.at("A1_minus"), "A1_minus") : A1p;
    const weights::DegeneracySpec spec(cfg.l_star, cfg.T);
    systems::FirstOrderSystem sys{N, spec, {}, {}, {}, {}, {}, {}, "system"};
    sys.A0 = [A0p, A0m](double, const Vec&, const Vec& xh) { return xh(0) >= 0.0 ? A0p : A0m; };
    sys.A1 = [A1p, A1m](const Vec&, const Vec& xh) { return xh(0) >= 0.0 ? A1p : A1m; };
    std::vector<int> mult;
    if (s.contains("multiplicities"))
        mult = s.at("multiplicities").get<std::vector<int>>();
    else
        mult = default_multiplicities(A0p);
    sys.roots = systems::eigen_roots(sys.A0, mult);

    const weights::Cutoff cut;
    const int l = cfg.l_star;
    symbols::SeparableSymbol sep{N, {}};
    for (int side : {1, -1}) {
        auto on_side = [side](double xi) { return side > 0 ? xi >= 0.0 : xi < 0.0; };
        sep.terms.push_back({side > 0 ? A0p : A0m, {},
                             symbols::pointwise([spec, cut, l, on_side](double t, double xi) -> cplx {
                                 if (!on_side(xi)) return 0.0;
                                 const double cp = weights::cutoffs(spec, cut, t, std::abs(xi)).chi_plus;
                                 return cp * std::pow(t, l) * std::abs(xi);
                             }),
                             symbols::TermRole::Principal});
        sep.terms.push_back({side > 0 ? A1p : A1m, {},
                             symbols::pointwise([spec, cut, l, on_side](double t, double xi) -> cplx {
                                 if (!on_side(xi)) return 0.0;
                                 const double cp = weights::cutoffs(spec, cut, t, std::abs(xi)).chi_plus;
                                 return cp > 0.0 ? cplx(0.0, -l * cp / t) : cplx(0.0);
                             }),
                             symbols::TermRole::Secondary});
    }
    sys.separable = std::move(sep);
    sys.validate();
    return sys;
}

systems::FirstOrderSystem single_block(const RunConfig& cfg) {
    const Matrix A1 = json_matrix(cfg.problem.at("A1"), "A1");
    const double amp = param(cfg, "cos_amplitude");
    return systems::single_block_system([A1, amp](double x) { return Matrix(A1 * (1.0 + amp * std::cos(x))); },
                                        static_cast<int>(A1.rows()), cfg.l_star, cfg.T);
}

Matrix differential_A0(const RunConfig& cfg) { return json_matrix(cfg.problem.at("A0"), "A0"); }

std::string csv_line(std::initializer_list<std::string> cells) {
    std::string s;
    for (const auto& c : cells) {
        if (!s.empty()) s += ',';
        s += c;
    }
    return s + "\n";
}

std::string num(double v) {
    if (!std::isfinite(v)) return "";
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

std::string num(const Json& j, const char* key) {
    return j.contains(key) && j.at(key).is_number() ? num(j.at(key).get<double>()) : std::string();
}

void analyze_operator(const RunConfig& cfg, RunOutput& out) {
    const auto op = make_operator(cfg);
    const auto d = reduction::delta_bound_scalar(op, x_grid(cfg), systems::default_xi_samples(1));
    out.artifacts.push_back({"delta.csv", config_header(cfg) + d.csv()});
    double lmin = std::numeric_limits<double>::infinity(), lmax = -lmin;
    for (double v : d.loss) {
        lmin = std::min(lmin, v);
        lmax = std::max(lmax, v);
    }
    out.report.headlines = {{"delta_min", d.delta_min()}, {"delta_max", d.delta_max()}, {"loss_min", lmin},
                            {"loss_max", lmax}};
}

void analyze_system(const RunConfig& cfg, RunOutput& out) {
    const auto sys = make_system(cfg);
    const auto xs = x_grid(cfg);
    const auto xi = systems::default_xi_samples(1);
    const auto pair = systems::symmetrizer_from_roots(sys, {0.0}, xs, xi);
    const auto d = systems::delta_bound_system(sys, pair, xs, xi);
    out.artifacts.push_back({"delta.csv", config_header(cfg) + d.csv()});
    double lmin = std::numeric_limits<double>::infinity(), lmax = -lmin;
    for (double v : d.loss) {
        lmin = std::min(lmin, v);
        lmax = std::max(lmax, v);
    }
    out.report.headlines = {{"delta_min", d.delta_min()}, {"delta_max", d.delta_max()}, {"loss_min", lmin},
                            {"loss_max", lmax}, {"blocks", sys.block_sizes()}};
}

void solve(const RunConfig& cfg, RunOutput& out) {
    const auto problem = make_problem(cfg);
    const solver::PeriodicGrid grid(cfg.n_modes);
    const CVector phi = cfg.data_kind == "decay" ? solver::make_data(grid, cfg.sigma, cfg.seed)
                                                 : solver::band_limited_data(grid, cfg.k_max, cfg.seed);
    const Matrix U0 = problem.initial_state(grid, phi);
    auto traj = solver::solve_cauchy(problem.symbol, problem.spec, grid, U0, {}, cfg.eps, cfg.t_out,
                                     {cfg.rtol, cfg.atol});
    traj.seed = cfg.seed;
    traj.descriptor = problem.name;
    out.artifacts.push_back({"trajectory.csv", config_header(cfg) + solver::trajectory_csv(traj)});
    Json h;
    h["l2_initial"] = solver::l2_norm(U0);
    h["l2_final"] = solver::l2_norm(traj.states.back());
    h["accepted_steps"] = traj.accepted_steps;
    h["rejected_steps"] = traj.rejected_steps;
    if (cfg.energy) {
        const auto q = cfg.energy_C > 0.0 ? solver::default_q(problem.spec, weights::Cutoff(), cfg.energy_C)
                                          : solver::QMultiplier{};
        const auto r = solver::energy_ratio(traj, {}, q);
        h["max_energy_ratio"] = r.max_ratio;
        h["max_unconjugated_ratio"] = r.max_unconjugated;
    }
    if (builtin_name(cfg) == "qi") {
        const double k = param(cfg, "k");
        if (k >= 0.0 && k == std::floor(k)) {
            double worst = 0.0;
            for (std::size_t i = 0; i < traj.times.size(); ++i) {
                const Matrix u = problem.observable(grid, traj.times[i], traj.states[i]);
                const CVector ex = solver::qi_exact(static_cast<int>(k), phi, traj.times[i], grid);
                worst = std::max(worst, (u.col(0) - ex).norm() / ex.norm());
            }
            h["oracle_rel_error"] = worst;
        }
    }
    out.report.headlines = h;
}

void loss_experiment(const RunConfig& cfg, RunOutput& out) {
    const auto problem = make_problem(cfg);
    solver::LossOptions opts;
    opts.n_modes = cfg.n_modes;
    opts.tol = {cfg.rtol, cfg.atol};
    opts.eps = cfg.eps;
    const auto r = solver::empirical_loss(problem, cfg.sigma, cfg.t_probe, cfg.seed, opts);
    double predicted = std::numeric_limits<double>::quiet_NaN();
    try {
        predicted = problem.predicted_loss();
    } catch (const Error&) {
    }
    Json params = Json::object();
    for (const auto& [k, v] : problem.params) params[k] = v;
    params["sigma"] = cfg.sigma;
    params["t_probe"] = cfg.t_probe;
    params["n_modes"] = cfg.n_modes;
    params["eps"] = cfg.eps;
    Json rec;
    rec["problem"] = problem.name;
    rec["params"] = params;
    rec["loss"] = r.loss;
    rec["sigma_hat"] = r.sigma_hat;
    rec["r2"] = r.r2;
    rec["seed"] = cfg.seed;
    rec["predicted_loss"] = nullable(predicted);
    rec["config"] = cfg.resolved;
    out.artifacts.push_back({"experiment.jsonl", rec.dump() + "\n"});
    out.report.headlines = {{"loss", r.loss},
                            {"sigma_hat", r.sigma_hat},
                            {"r2", r.r2},
                            {"predicted_loss", nullable(predicted)},
                            {"predicted_delta",
                             nullable(predicted / (problem.spec.beta_star() * problem.spec.l_star()))},
                            {"fit_band", {r.band_lo, r.band_hi}}};
}

symbols::SymbolFn make_symbol(const RunConfig& cfg) {
    const auto& s = cfg.symbol;
    const auto name = s.at("builtin").get<std::string>();
    const weights::DegeneracySpec spec(cfg.l_star, cfg.T);
    const weights::Cutoff cut;
    if (name == "weight-power") {
        const auto sym = symbols::weight_power_symbol(spec, cut, s.at("m").get<double>(), s.at("eta").get<double>());
        return [sym](double t, const Vec& x, const Vec& xi) { return sym(t, x, xi); };
    }
    if (name == "lambda-xi") {
        return [spec](double t, const Vec&, const Vec& xi) {
            return Matrix::Constant(1, 1, weights::degeneracy(spec, t).lambda * japanese(xi.norm()));
        };
    }
    if (name == "chi-minus-power") {
        return [spec, cut](double t, const Vec&, const Vec& xi) {
            const double r = japanese(xi.norm());
            return Matrix::Constant(1, 1, weights::cutoffs(spec, cut, t, xi.norm()).chi_minus *
                                              std::pow(r, spec.beta_star()));
        };
    }
    const auto sys = systems::qi_system(s.at("k").get<double>(), cfg.T);
    return [sys, cut](double t, const Vec& x, const Vec& xi) { return sys.full_symbol(cut, t, x, xi); };
}

void check_symbol(const RunConfig& cfg, RunOutput& out) {
    const auto& s = cfg.symbol;
    const symbols::SymbolOrders orders{s.at("declared")[0].get<double>(), s.at("declared")[1].get<double>(), 0};
    const symbols::MaxOrders mo{s.at("max_orders").at("J").get<int>(), s.at("max_orders").at("A").get<int>(),
                                s.at("max_orders").at("B").get<int>()};
    weights::GridSpec grid;
    grid.T = cfg.T;
    grid.x_points = x_grid(cfg);
    const weights::DegeneracySpec spec(cfg.l_star, cfg.T);
    const auto rep = symbols::estimate_constants(make_symbol(cfg), orders, spec, grid, mo);
    out.artifacts.push_back({"estimates.csv", config_header(cfg) + rep.csv()});
    double cmax = 0.0;
    for (const auto& e : rep.entries) cmax = std::max(cmax, e.C);
    out.report.headlines = {{"pass", rep.pass}, {"max_constant", cmax}, {"grid", rep.grid}};
}

void sweep(const RunConfig& cfg, int workers, RunOutput& out) {
    const auto& sw = *cfg.sweep;
    const std::size_t n = sw.values.size();
    std::vector<RunOutput> results(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                results[i] = execute(sweep_point(cfg, sw.values[i]), 1);
            } catch (const Error& e) {
                results[i].report.status = "failed";
                results[i].report.exit_code = exit_code_for(e.kind());
                results[i].report.diagnostic = e.what();
            }
        }
    };
    const int nthreads = std::max(1, std::min<int>(workers, static_cast<int>(n)));
    std::vector<std::thread> pool;
    for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::string jsonl;
    std::string summary = config_header(cfg) +
                          csv_line({"point", sw.axis, "status", "predicted_delta", "predicted_loss", "measured_loss",
                                    "sigma_hat", "r2", "max_energy_ratio"});
    std::size_t failed = 0;
    double lmin = std::numeric_limits<double>::infinity(), lmax = -lmin, emax = -lmin;
    Json points = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = results[i];
        for (const auto& a : r.artifacts)
            if (a.name == "experiment.jsonl") jsonl += a.content;
        const auto& h = r.report.headlines;
        if (r.report.status != "ok") ++failed;
        const std::string measured = num(h, "loss");
        if (h.contains("loss") && h.at("loss").is_number()) {
            lmin = std::min(lmin, h.at("loss").get<double>());
            lmax = std::max(lmax, h.at("loss").get<double>());
        }
        if (h.contains("max_energy_ratio")) emax = std::max(emax, h.at("max_energy_ratio").get<double>());
        summary += csv_line({std::to_string(i), num(sw.values[i]), r.report.status,
                             h.contains("predicted_delta") ? num(h, "predicted_delta") : num(h, "delta_max"),
                             h.contains("predicted_loss") ? num(h, "predicted_loss") : num(h, "loss_max"), measured,
                             num(h, "sigma_hat"), num(h, "r2"), num(h, "max_energy_ratio")});
        points.push_back({{"value", sw.values[i]},
                          {"status", r.report.status},
                          {"diagnostic", r.report.diagnostic},
                          {"headlines", h}});
    }
    out.artifacts.push_back({"summary.csv", summary});
    if (!jsonl.empty()) out.artifacts.push_back({"experiment.jsonl", jsonl});
    Json h;
    h["points"] = n;
    h["failed"] = failed;
    if (std::isfinite(lmin)) h["loss_range"] = {lmin, lmax};
    if (std::isfinite(emax)) h["max_energy_ratio"] = emax;
    h["per_point"] = points;
    out.report.headlines = h;
    if (failed > 0) {
        out.report.status = "failed";
        out.report.exit_code = 3;
        out.report.diagnostic = std::to_string(failed) + " of " + std::to_string(n) + " sweep points failed";
    }
}

} // namespace

Json RunReport::to_json() const {
    return {{"status", status},         {"exit_code", exit_code}, {"wall_time_s", wall_time},
            {"artifacts", artifacts},   {"headlines", headlines}, {"diagnostic", diagnostic},
            {"config", config}};
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Domain:
        case ErrorKind::Validation:
        case ErrorKind::SizeMismatch:
        case ErrorKind::Capability:
        case ErrorKind::UnsupportedStructure:
        case ErrorKind::ConstantMultiplicity:
        case ErrorKind::Symmetrizability:
        case ErrorKind::DisjointSpectra:
        case ErrorKind::StrictHyperbolicity:
        case ErrorKind::DegenerateRoot: return 2;
        case ErrorKind::Data:
        case ErrorKind::Singular:
        case ErrorKind::Stiffness:
        case ErrorKind::Divergence:
        case ErrorKind::Fit: return 3;
    }
    return 3;
}

solver::Problem make_problem(const RunConfig& cfg) {
    const auto name = builtin_name(cfg);
    if (name == "qi") return solver::qi_problem(param(cfg, "k"), cfg.T);
    if (name == "wave") {
        auto p = solver::scalar_problem(reduction::wave_operator(cfg.l_star, param(cfg, "c"), cfg.T));
        p.params.emplace_back("c", param(cfg, "c"));
        return p;
    }
    if (name == "transport") return solver::transport_problem(param(cfg, "a"), cfg.l_star, cfg.T);
    if (name == "differential-system") return solver::differential_system_problem(differential_A0(cfg), cfg.l_star, cfg.T);
    if (name == "single-block") return solver::system_problem(single_block(cfg));
    if (name == "qi-energy") return solver::qi_energy_problem(param(cfg, "k"), param(cfg, "c"), cfg.T);
    if (name == "hermitian-test") return solver::hermitian_test_problem(cfg.T);
    if (cfg.problem.contains("operator")) return solver::scalar_problem(custom_operator(cfg));
    if (cfg.problem.contains("system")) return solver::system_problem(custom_system(cfg));
    invalid("no problem configured");
}

reduction::ScalarOperator make_operator(const RunConfig& cfg) {
    const auto name = builtin_name(cfg);
    if (name == "qi") return reduction::qi_operator(param(cfg, "k"), cfg.T);
    if (name == "wave") return reduction::wave_operator(cfg.l_star, param(cfg, "c"), cfg.T);
    if (name == "transport") return reduction::transport_operator(param(cfg, "a"), cfg.l_star, cfg.T);
    if (cfg.problem.contains("operator")) return custom_operator(cfg);
    invalid("analyze-operator needs a scalar problem (qi, wave, transport or operator)");
}

systems::FirstOrderSystem make_system(const RunConfig& cfg) {
    const auto name = builtin_name(cfg);
    if (name == "qi") return systems::qi_system(param(cfg, "k"), cfg.T);
    if (name == "differential-system") return systems::differential_system(differential_A0(cfg), cfg.l_star, cfg.T);
    if (name == "single-block") return single_block(cfg);
    if (cfg.problem.contains("system")) return custom_system(cfg);
    if (name == "wave" || name == "transport" || cfg.problem.contains("operator"))
        return reduction::companion_system(make_operator(cfg));
    invalid("analyze-system does not support problem '" + name + "'");
}

RunOutput execute(const RunConfig& cfg, int workers) {
    RunOutput out;
    out.report.config = cfg.resolved;
    const auto start = std::chrono::steady_clock::now();
    try {
        switch (cfg.command) {
            case Command::AnalyzeOperator: analyze_operator(cfg, out); break;
            case Command::AnalyzeSystem: analyze_system(cfg, out); break;
            case Command::Solve: solve(cfg, out); break;
            case Command::LossExperiment: loss_experiment(cfg, out); break;
            case Command::CheckSymbol: check_symbol(cfg, out); break;
            case Command::Sweep: sweep(cfg, workers, out); break;
        }
    } catch (const Error& e) {
        out.report.status = "failed";
        out.report.exit_code = exit_code_for(e.kind());
        out.report.diagnostic = std::string(to_string(e.kind())) + ": " + e.what();
    }
    out.report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& a : out.artifacts) out.report.artifacts.push_back(a.name);
    out.report.artifacts.push_back("report.json");
    return out;
}

RunReport run(const RunConfig& cfg, const std::filesystem::path& out_dir, int workers) {
    auto out = execute(cfg, workers);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorKind::Validation, "cannot create output directory '" + out_dir.string() + "'");
    auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream f(out_dir / name, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorKind::Validation, "cannot write '" + (out_dir / name).string() + "'");
        f << content;
    };
    for (const auto& a : out.artifacts) write(a.name, a.content);
    write("report.json", out.report.to_json().dump(2) + "\n");
    return out.report;
}

} // namespace degenhyp::cli
