#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "quatpick/cli.hpp"

#ifndef QUATPICK_DATA_DIR
#define QUATPICK_DATA_DIR "data"
#endif

namespace quatpick::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kSchwarzPickTol = 1e-10;
constexpr double kGramTol = 1e-9;
constexpr double kSampleRadius = 0.95;

json to_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

json to_json(std::span<const Quaternion> v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_json(q));
  return a;
}

json to_json(const QMatrix& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    a.push_back(std::move(row));
  }
  return a;
}

json to_json(const Mat2& m) {
  return json::array({json::array({to_json(m[0][0]), to_json(m[0][1])}),
                      json::array({to_json(m[1][0]), to_json(m[1][1])})});
}

// Keeps reports free of NaN/inf, which JSON cannot carry.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Flags {
  std::string input;
  std::string out;
  std::size_t truncation = kDefaultOrder;
  std::string psd_tol;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  std::size_t n_max = 64;
  std::string grid;
  bool timing = false;

  // Set to the parsed subcommand so option counts refer to it.
  CLI::App* cmd = nullptr;
  bool given(const char* name) const { return cmd->get_option(name)->count() > 0; }
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--out", f.out, "Write the report to this file instead of standard output");
  cmd->add_option("--truncation", f.truncation, "Series truncation degree (default 256)")
                         ->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
  cmd->add_option("--psd-tol", f.psd_tol, "LDL pivot tolerance, or 'auto' (scale-aware default)");
  cmd->add_option("--seed", f.seed, "Seed for sampled points (default 0)");
  cmd->add_option("--samples", f.samples, "Number of sampled points (default 1000)");
  cmd->add_option("--grid", f.grid, "Write per-sample Schwarz-Pick values as CSV")
                   ->expected(0, 1);
  cmd->add_flag("--timing", f.timing, "Add wall-clock timings to the report");
}

std::optional<double> parse_tol(const std::string& s) {
  if (s.empty() || s == "auto") return std::nullopt;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !(v >= 0.0) || !std::isfinite(v))
    throw SchemaError("--psd-tol: expected a non-negative number or 'auto'");
  return v;
}

Options merge(const Flags& f, const ProblemFile* file) {
  Options o;
  o.samples = f.samples;
  o.truncation = f.given("--truncation") ? f.truncation : file && file->truncation ? *file->truncation : kDefaultOrder;
  o.seed = f.given("--seed") ? f.seed : file && file->seed ? *file->seed : 0;
  o.psd_tol = parse_tol(f.psd_tol);
  if (f.psd_tol.empty() && file) o.psd_tol = file->psd_tol;
  return o;
}

std::string grid_path(const Flags& f) { return f.grid.empty() ? "schwarz_pick_grid.csv" : f.grid; }

void write_grid(const fs::path& path, std::span<const SchwarzPickSample> rows) {
  std::ofstream csv(path);
  if (!csv) throw std::ios_base::failure("cannot write " + path.string());
  csv << "p_w,p_x,p_y,p_z,lhs,rhs,slack\n" << std::setprecision(17);
  for (const auto& r : rows)
    csv << r.p.w << ',' << r.p.x << ',' << r.p.y << ',' << r.p.z << ',' << r.lhs << ',' << r.rhs << ','
        << (r.rhs - r.lhs) << '\n';
}

void emit(const json& report, const Flags& f, std::ostream& out) {
  if (f.out.empty()) {
    out << report.dump(2) << '\n';
    return;
  }
  std::ofstream file(f.out);
  if (!file) throw std::ios_base::failure("cannot write " + f.out);
  file << report.dump(2) << '\n';
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// solve pipeline

struct Outcome {
  int exit_code = 0;
  std::string message;
  json report;
  std::optional<SolutionHandle> solution;
  Classification cls;
  SchwarzPickReport schwarz_pick;
};

json reduction_json(const Reduction& red) {
  json groups = json::array();
  for (const auto& g : red.groups) {
    json verdicts = json::array();
    for (std::size_t t = 0; t < g.expected.size(); ++t)
      verdicts.push_back({{"node", g.members[t + 2]}, {"expected", to_json(g.expected[t])},
                          {"consistent", static_cast<bool>(g.consistent[t])}});
    groups.push_back({{"members", g.members}, {"kept", {g.members[0], g.members[1]}}, {"verdicts", verdicts}});
  }
  json r = {{"kept", red.kept}, {"spheres_merged", groups}, {"status", red.consistent() ? "consistent" : "inconsistent"}};
  if (red.inconsistency)
    r["inconsistency"] = {{"node", red.inconsistency->node},
                          {"expected", to_json(red.inconsistency->expected)},
                          {"got", to_json(red.inconsistency->got)}};
  return r;
}

json residuals_json(const SolutionHandle& h) {
  json a = json::array();
  for (const auto& r : h.residuals)
    a.push_back({{"node", to_json(r.node)},
                 {"target", to_json(r.target)},
                 {"value", to_json(r.value)},
                 {"pointwise", r.pointwise},
                 {"series", r.series},
                 {"series_tail", finite_or_null(r.tail)}});
  return a;
}

Outcome solve_pipeline(const Problem& problem, const Options& opt, bool timing) {
  Outcome o;
  json timings;
  auto t0 = Clock::now();
  json& rep = o.report;
  rep["problem"] = {{"n", problem.size()}, {"nodes", to_json(problem.nodes())}, {"targets", to_json(problem.targets())}};
  rep["options"] = {{"truncation", opt.truncation},
                    {"psd_tol", opt.psd_tol ? json(*opt.psd_tol) : json("auto")},
                    {"seed", opt.seed},
                    {"samples", opt.samples}};

  const Reduction red = reduce_problem(problem);
  rep["reduction"] = reduction_json(red);
  if (!red.consistent()) {
    o.exit_code = 3;
    o.message = "inconsistent sphere data at node " + std::to_string(red.inconsistency->node);
    rep["solvable"] = false;
    return o;
  }

  const PickData pick = build_pick(red.reduced);
  o.cls = classify(pick, opt.psd_tol);
  rep["pick_matrix"] = to_json(pick.P.matrix());
  rep["stein_residual"] = pick.stein_residual();
  rep["psd_tol_used"] = o.cls.report.tol;
  rep["pivots"] = o.cls.report.pivots;
  rep["solvable"] = o.cls.solvable;
  rep["determinate"] = o.cls.determinate;
  rep["rank"] = o.cls.rank;
  if (timing) timings["classify"] = ms_since(t0);
  if (!o.cls.solvable) {
    o.exit_code = 2;
    o.message = "unsolvable: Pick matrix is not positive semidefinite";
    return o;
  }

  t0 = Clock::now();
  std::mt19937_64 rng(opt.seed);
  const auto samples = sample_ball(rng, opt.samples, kSampleRadius);
  json sol;
  if (o.cls.determinate) {
    SolutionHandle h = determinate_solve(red.reduced, opt.psd_tol, opt.truncation);
    const auto probe = sample_ball(rng, 50, 0.7);
    try {
      const SolutionHandle x = extended_gamma_solve(red.reduced, opt.psd_tol, opt.truncation);
      double diff = 0.0;
      for (const auto& p : probe) diff = std::max(diff, dist(h(p), x(p)));
      sol["cross_check"] = {{"path", "extended-gamma"}, {"points", probe.size()}, {"max_difference", diff},
                            {"descriptor", x.descriptor}};
    } catch (const std::exception& e) {
      sol["cross_check"] = {{"path", "extended-gamma"}, {"error", e.what()}};
    }
    o.solution = std::move(h);
  } else {
    const ThetaRep theta = theta_build(pick);
    SolutionHandle h = lft_solution(theta, SchurParameter::constant(0.0), opt.truncation);
    h.descriptor = "central solution, parameter E = 0";
    o.solution = std::move(h);
  }
  SolutionHandle& h = *o.solution;
  attach_residuals(h, problem);
  if (timing) timings["solve"] = ms_since(t0);

  sol["provenance"] = to_string(h.provenance);
  sol["descriptor"] = h.descriptor;
  sol["truncation"] = h.series.order();
  sol["leading_coefficients"] = to_json(h.series.coeffs().subspan(0, std::min<std::size_t>(8, h.series.order() + 1)));
  sol["max_pointwise_residual"] = h.max_pointwise_residual();
  sol["max_series_residual"] = h.max_series_residual();
  rep["solution"] = sol;
  rep["node_residuals"] = residuals_json(h);

  t0 = Clock::now();
  const Quaternion p1 = red.reduced.nodes().front();
  o.schwarz_pick = schwarz_pick_check(h.eval, p1, samples);
  rep["schwarz_pick"] = {{"p1", to_json(p1)},
                         {"samples", samples.size()},
                         {"max_violation", o.schwarz_pick.max_violation},
                         {"equality_points", o.schwarz_pick.equality_points.size()},
                         {"unimodular_constant", o.schwarz_pick.unimodular_constant}};
  if (timing) {
    timings["schwarz_pick"] = ms_since(t0);
    rep["timing_ms"] = timings;
  }
  return o;
}

int cmd_solve(const Flags& f, std::ostream& out, std::ostream& err) {
  const ProblemFile file = load_problem(f.input);
  const Options opt = merge(f, &file);
  Outcome o = solve_pipeline(file.problem, opt, f.timing);
  o.report["exit_code"] = o.exit_code;
  emit(o.report, f, out);
  if (f.given("--grid")) write_grid(grid_path(f), o.schwarz_pick.samples);
  if (!o.message.empty()) err << o.message << '\n';
  return o.exit_code;
}

// ---------------------------------------------------------------------------
// schur

int cmd_schur(const Flags& f, std::ostream& out, std::ostream& err) {
  std::ifstream in(f.input);
  if (!in) throw std::ios_base::failure("cannot read " + f.input);
  std::ostringstream text;
  text << in.rdbuf();
  const QSeries s = parse_coefficients(text.str());
  const double tol = parse_tol(f.psd_tol).value_or(1e-9);
  const SchurTestResult r = schur_toeplitz_test(s, f.n_max, tol);
  json rep = {{"coefficients", s.order() + 1}, {"n_max", f.n_max}, {"tol", tol}, {"pass", r.pass},
              {"min_pivot", r.min_pivot}};
  rep["first_failure"] = r.first_failure ? json(*r.first_failure) : json(nullptr);
  rep["exit_code"] = r.pass ? 0 : 2;
  emit(rep, f, out);
  if (!r.pass) err << "Schur test fails at n = " << *r.first_failure << '\n';
  return r.pass ? 0 : 2;
}

// ---------------------------------------------------------------------------
// theta

int cmd_theta(const Flags& f, std::ostream& out, std::ostream& err) {
  const ProblemFile file = load_problem(f.input);
  const Options opt = merge(f, &file);
  const Reduction red = reduce_problem(file.problem);
  json rep = {{"reduction", reduction_json(red)}};
  int code = 0;
  if (!red.consistent()) {
    code = 3;
    err << "inconsistent sphere data at node " << red.inconsistency->node << '\n';
  } else {
    const PickData pick = build_pick(red.reduced);
    const Classification cls = classify(pick, opt.psd_tol);
    rep["solvable"] = cls.solvable;
    rep["rank"] = cls.rank;
    if (!cls.solvable || cls.determinate) {
      code = 2;
      err << "Theta needs a positive definite Pick matrix\n";
    } else {
      const ThetaRep theta = theta_build(pick);
      rep["theta_at_1"] = to_json(theta(1.0));
      json coeffs = json::array();
      for (std::size_t k = 0; k < 8; ++k) coeffs.push_back(to_json(theta.coefficient(k)));
      rep["leading_coefficients"] = coeffs;
      std::mt19937_64 rng(opt.seed);
      const auto samples = sample_ball(rng, opt.samples, kSampleRadius);
      double min22 = samples.empty() ? 0.0 : std::numeric_limits<double>::infinity();
      for (const auto& p : samples) min22 = std::min(min22, abs(theta(p)[1][1]));
      const std::size_t m = std::min<std::size_t>(samples.size(), 8);
      const ThetaCheck chk = theta_j_check(theta, std::span<const Quaternion>(samples).subspan(0, m));
      rep["j_check"] = {{"gram_points", m},
                        {"min_pivot", m ? chk.report.min_pivot() : 0.0},
                        {"psd", m == 0 || chk.report.min_pivot() >= -kGramTol},
                        {"samples", samples.size()},
                        {"min_abs_theta22", min22}};
    }
  }
  rep["exit_code"] = code;
  emit(rep, f, out);
  return code;
}

// ---------------------------------------------------------------------------
// verify

struct Suite {
  std::size_t count = 0;
  std::size_t failures = 0;
  double max_error = 0.0;

  void record(bool ok, double error) {
    ++count;
    if (!ok) ++failures;
    max_error = std::max(max_error, error);
  }
  json to_json() const {
    return {{"count", count}, {"failures", failures}, {"max_error", max_error}, {"pass", failures == 0}};
  }
};

Quaternion random_quaternion(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> g(0.0, 1.0);
  return Quaternion(g(rng), g(rng), g(rng), g(rng)) * scale;
}

void suite_sylvester(Suite& s, std::mt19937_64& rng, std::size_t count) {
  for (std::size_t t = 0; t < count; ++t) {
    const auto ab = sample_ball(rng, 2, 0.8);
    const Quaternion c = random_quaternion(rng, 1.0);
    Quaternion acc;
    Quaternion ak = 1.0;
    Quaternion bk = 1.0;
    for (int k = 0; k < 200; ++k) {
      acc += ak * c * bk;
      ak = ak * ab[0];
      bk = bk * ab[1];
    }
    const double r = abs(ab[0]) * abs(ab[1]);
    const double bound = abs(c) * std::pow(r, 200) / (1.0 - r) + 1e-12 * (1.0 + abs(c)) / (1.0 - r);
    const double e = dist(sylvester_unit(ab[0], ab[1], c), acc);
    s.record(e <= bound, e);
  }
}

void suite_ldl(Suite& s, std::mt19937_64& rng, std::size_t count) {
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::bernoulli_distribution psd(0.5);
  std::size_t made = 0;
  while (made < count) {
    const std::size_t n = dim(rng);
    QMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = random_quaternion(rng, 1.0);
    QMatrix a = psd(rng) ? b * b.adjoint() : b + b.adjoint();
    const HermitianQMatrix h(a);
    const auto ev = hermitian_eigenvalues(complex_embed(h.matrix()));
    double gap = 1e300;
    for (double e : ev) gap = std::min(gap, std::abs(e));
    if (gap < 1e-6) continue;
    ++made;
    const bool oracle = ev.front() > 0.0;
    const bool ldl = ldl_psd(h).is_psd;
    s.record(oracle == ldl, oracle == ldl ? 0.0 : 1.0);
  }
}

struct FixtureResult {
  json report;
  bool pass = true;
};

FixtureResult run_fixture(const fs::path& path, const Flags& f, std::map<std::string, Suite>& suites,
                          std::vector<SchwarzPickSample>& grid) {
  FixtureResult fr;
  const ProblemFile file = load_problem(path);
  const Options opt = merge(f, &file);
  Outcome o;
  try {
    o = solve_pipeline(file.problem, opt, false);
  } catch (const std::exception& e) {
    o.exit_code = 1;
    o.message = e.what();
  }
  json checks = json::array();
  auto check = [&](const std::string& name, bool ok, json detail) {
    checks.push_back({{"check", name}, {"pass", ok}, {"detail", std::move(detail)}});
    fr.pass = fr.pass && ok;
  };

  if (file.expect) {
    const Expectation& x = *file.expect;
    if (x.exit_code) check("exit", o.exit_code == *x.exit_code, o.exit_code);
    const bool classified = o.exit_code == 0 || o.exit_code == 2;
    if (x.solvable) check("solvable", classified && o.cls.solvable == *x.solvable, classified && o.cls.solvable);
    if (x.determinate)
      check("determinate", classified && o.cls.determinate == *x.determinate, classified && o.cls.determinate);
    if (x.rank) check("rank", classified && o.cls.rank == *x.rank, o.cls.rank);
    for (const auto& v : x.values) {
      if (!o.solution) {
        check("value", false, "no solution");
        continue;
      }
      const double e = dist(eval(o.solution->series, v.at).value, v.value);
      check("value", e <= v.tol, e);
    }
  }
  if (o.exit_code == 1) check("pipeline", false, o.message);

  if (o.solution) {
    const SolutionHandle& h = *o.solution;
    const bool res_ok = h.max_pointwise_residual() <= 1e-8;
    check("node_residuals", res_ok, h.max_pointwise_residual());

    std::mt19937_64 rng(opt.seed + 1);
    for (const auto& p : sample_ball(rng, std::min<std::size_t>(opt.samples, 50), 0.7)) {
      const Evaluation e = eval(h.series, p);
      const double d = dist(e.value, h(p));
      suites["pointwise_vs_series"].record(d <= e.tail + 1e-8, d);
    }
    for (const auto& r : o.schwarz_pick.samples) {
      const double v = r.lhs - r.rhs;
      suites["schwarz_pick"].record(v <= kSchwarzPickTol, std::max(v, 0.0));
    }
    grid.insert(grid.end(), o.schwarz_pick.samples.begin(), o.schwarz_pick.samples.end());
    if (opt.samples >= 4) {
      const auto pts = sample_ball(rng, 4, 0.9);
      const KernelGram g = bs_kernel_gram(file.problem, h.eval, pts);
      const PsdReport rep = ldl_psd(g.gram);
      suites["bs_gram"].record(rep.min_pivot() >= -kGramTol, std::max(-rep.min_pivot(), 0.0));
    }
  }
  fr.report = {{"file", path.filename().string()}, {"exit_code", o.exit_code}, {"checks", checks}, {"pass", fr.pass}};
  if (!o.message.empty()) fr.report["message"] = o.message;
  return fr;
}

int cmd_verify(const Flags& f, std::ostream& out, std::ostream& err) {
  const fs::path root = f.input.empty() ? fs::path(QUATPICK_DATA_DIR) / "fixtures" : fs::path(f.input);
  std::vector<fs::path> files;
  if (fs::is_directory(root)) {
    for (const auto& e : fs::directory_iterator(root))
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
  } else if (fs::is_regular_file(root)) {
    files.push_back(root);
  } else {
    throw std::ios_base::failure("cannot read " + root.string());
  }

  Options base = merge(f, nullptr);
  std::map<std::string, Suite> suites{{"sylvester_vs_series", {}}, {"ldl_vs_embedding", {}},
                                      {"pointwise_vs_series", {}}, {"schwarz_pick", {}},
                                      {"bs_gram", {}}};
  std::mt19937_64 rng(base.seed);
  suite_sylvester(suites["sylvester_vs_series"], rng, base.samples);
  suite_ldl(suites["ldl_vs_embedding"], rng, (base.samples + 49) / 50);

  json fixtures = json::array();
  std::vector<SchwarzPickSample> grid;
  bool pass = true;
  for (const auto& p : files) {
    FixtureResult fr = run_fixture(p, f, suites, grid);
    pass = pass && fr.pass;
    fixtures.push_back(std::move(fr.report));
  }
  json suite_json = json::object();
  for (const auto& [name, s] : suites) {
    suite_json[name] = s.to_json();
    pass = pass && s.failures == 0;
  }
  json rep = {{"path", root.string()}, {"samples", base.samples}, {"seed", base.seed},
              {"fixtures", fixtures}, {"suites", suite_json}, {"pass", pass}};
  rep["exit_code"] = pass ? 0 : 2;
  emit(rep, f, out);
  if (f.given("--grid")) write_grid(grid_path(f), grid);
  if (!pass) err << "verification failed\n";
  return pass ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quaternionic Nevanlinna-Pick interpolation", "quatpick"};
  app.require_subcommand(1);
  Flags f;

  auto* solve = app.add_subcommand("solve", "Classify and solve an interpolation problem");
  solve->add_option("file", f.input, "Problem file")->required();
  add_common(solve, f);

  auto* theta = app.add_subcommand("theta", "Build Theta for a problem with positive definite Pick matrix");
  theta->add_option("file", f.input, "Problem file")->required();
  add_common(theta, f);

  auto* schur = app.add_subcommand("schur", "Coefficient test for the Schur class");
  schur->add_option("file", f.input, "Coefficient file")->required();
  schur->add_option("--n-max", f.n_max, "Largest Toeplitz section (default 64)");
  add_common(schur, f);

  auto* verify = app.add_subcommand("verify", "Run fixtures and oracle suites");
  verify->add_option("path", f.input, "Fixture file or directory (default: bundled fixtures)");
  add_common(verify, f);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  for (CLI::App* c : {solve, theta, schur, verify})
    if (c->parsed()) f.cmd = c;

  try {
    if (solve->parsed()) return cmd_solve(f, out, err);
    if (theta->parsed()) return cmd_theta(f, out, err);
    if (schur->parsed()) return cmd_schur(f, out, err);
    return cmd_verify(f, out, err);
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
  } catch (const std::ios_base::failure& e) {
    err << "I/O error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

}  // namespace quatpick::cli
