// warpsplit: config-driven runner for the splitting, flow and verification modes.

#include "config.hpp"
#include "registry.hpp"

#include "warpsplit/errors.hpp"
#include "warpsplit/flows.hpp"
#include "warpsplit/properties.hpp"
#include "warpsplit/splitting.hpp"
#include "warpsplit/warped.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace warpsplit;
using namespace warpsplit::cli;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json to_json(const Vector& v) {
  ordered_json a = ordered_json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

// Cells are numbers or null (written as an empty CSV field).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<ordered_json>> rows;

  void add_vector_columns(const std::string& prefix, Index n) {
    for (Index i = 0; i < n; ++i) columns.push_back(prefix + std::to_string(i));
  }
};

void append(std::vector<ordered_json>& row, const Vector& v) {
  for (Index i = 0; i < v.size(); ++i) row.emplace_back(v(i));
}

struct Output {
  fs::path dir;
  std::string format = "csv";

  void write_table(const std::string& stem, const Table& t) const {
    if (format == "json") {
      ordered_json j;
      j["columns"] = t.columns;
      j["rows"] = t.rows;
      std::ofstream(dir / (stem + ".json")) << j.dump(1) << '\n';
      return;
    }
    std::ofstream out(dir / (stem + ".csv"));
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        if (row[i].is_number_integer()) out << row[i].get<long long>();
        else if (row[i].is_number()) out << fmt(row[i].get<double>());
        else if (row[i].is_string()) out << row[i].get<std::string>();
      }
      out << '\n';
    }
  }
};

struct Report {
  std::string status = "Failed";
  ordered_json summary = ordered_json::object();
  std::vector<std::string> warnings;
};

int exit_code(const std::string& status) {
  if (status == "Converged" || status == "Verified") return 0;
  if (status == "MaxIter" || status == "PathStalled") return 2;
  if (status == "Diverging") return 3;
  return 1;
}

double positive(const Config& c, const std::string& s, const std::string& k, double fallback) {
  const double v = c.number_or(s, k, fallback);
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(Config::field(s, k) + ": must be positive");
  return v;
}

long positive_int(const Config& c, const std::string& s, const std::string& k, long fallback) {
  const long v = c.integer_or(s, k, fallback);
  if (v <= 0) throw ConfigError(Config::field(s, k) + ": must be positive");
  return v;
}

Vector dim_checked(const Config& c, const std::string& s, const std::string& k, Index n) {
  const Vector v = c.vector(s, k);
  if (v.size() != n) {
    throw ConfigError(Config::field(s, k) + ": expected " + std::to_string(n) + " entries");
  }
  return v;
}

bool flag(const Config& c, const std::string& s, const std::string& k, bool fallback) {
  if (!c.has(s, k)) return fallback;
  const std::string v = c.text(s, k);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(Config::field(s, k) + ": expected true or false");
}

Integrator method(const Config& c) {
  const std::string m = c.text_or("run", "method", "rk4");
  if (m == "rk4") return Integrator::RK4;
  if (m == "euler") return Integrator::Euler;
  throw ConfigError("run.method: expected rk4 or euler");
}

const std::vector<std::string> kParamKeys = {"lambda", "gamma", "alpha", "lift"};
const std::vector<std::string> kRunKeys = {
    "x0",      "u0",    "z0",         "tol",     "max_iter", "step",   "t_end",
    "method",  "u_star", "reference", "lambda0", "halvings", "lambdas", "properties",
    "samples", "seed",  "halt_on_divergence",  "regularize"};

SplittingProblem splitting_problem(const Config& c) {
  const auto a = build_operator(c, "A");
  const auto b = build_operator(c, "B");
  return SplittingProblem(a.op, b.op, build_preconditioner(c, "M"), positive(c, "params", "lambda", 1.0));
}

void put_log(Report& r, const IterationLog& log) {
  r.summary["iterations"] = log.iterations;
  r.summary["diverging_at"] = log.diverging_at ? ordered_json(*log.diverging_at) : ordered_json();
  r.summary["max_x_norm"] = log.max_x_norm;
  r.summary["last_x"] = to_json(log.last_x);
  r.summary["last_y"] = to_json(log.last_y);
}

void put_certificate(Report& r, const SolutionCertificate& cert) {
  r.summary["x_bar"] = to_json(cert.x_bar);
  r.summary["y_bar"] = to_json(cert.y_bar);
  r.summary["u_star"] = to_json(cert.u_star);
  r.summary["residual_F"] = cert.residual_F;
  r.summary["residual_E"] = cert.residual_E;
  r.summary["residual_S"] = cert.residual_S;
}

BackwardBackwardResult run_backward_backward(const Config& c, const SplittingProblem& p,
                                             const Output& out) {
  const Index n = p.m.dim();
  BackwardBackwardOptions o;
  o.tol = positive(c, "run", "tol", 1e-12);
  o.max_iter = static_cast<int>(positive_int(c, "run", "max_iter", 10'000));
  o.halt_on_divergence = flag(c, "run", "halt_on_divergence", true);
  if (c.has("run", "reference")) o.reference = dim_checked(c, "run", "reference", n);
  const Vector x0 = c.has("run", "x0") ? dim_checked(c, "run", "x0", n) : Vector::Zero(n);
  auto res = backward_backward(p, x0, o);

  Table t;
  t.columns = {"n"};
  t.add_vector_columns("x", n);
  t.add_vector_columns("y", n);
  for (const char* col : {"step_norm_M", "diff_norm_M", "fejer", "summability_partial"}) {
    t.columns.push_back(col);
  }
  for (const auto& rec : res.log.records) {
    std::vector<ordered_json> row{rec.n};
    append(row, rec.x);
    append(row, rec.y);
    row.emplace_back(rec.step_norm_m);
    row.emplace_back(rec.diff_norm_m);
    row.push_back(rec.fejer ? ordered_json(*rec.fejer) : ordered_json());
    row.emplace_back(rec.summability_partial);
    t.rows.push_back(std::move(row));
  }
  out.write_table("iterations", t);
  return res;
}

Report bb_solve(const Config& c, const Output& out) {
  c.expect_keys("params", kParamKeys);
  const SplittingProblem p = splitting_problem(c);
  const auto res = run_backward_backward(c, p, out);
  Report r;
  r.status = to_string(res.log.status);
  put_log(r, res.log);
  if (res.certificate) put_certificate(r, *res.certificate);
  return r;
}

Report fixsets(const Config& c, const Output& out) {
  const SplittingProblem p = splitting_problem(c);
  const auto res = run_backward_backward(c, p, out);
  Report r;
  put_log(r, res.log);
  if (!res.certificate) {
    r.status = to_string(res.log.status);
    return r;
  }
  const SolutionCertificate& cert = *res.certificate;
  put_certificate(r, cert);
  bool ok = cert.in_S();
  r.summary["in_F"] = cert.in_F();
  r.summary["in_E"] = cert.in_E();
  r.summary["in_S"] = cert.in_S();
  if (p.m.positive_definite()) {
    const SwapCheck swap = dual_primal_swap_check(p, cert);
    const BijectionGap gap = bijection_gap(p, swap.u_star, cert.x_bar);
    r.summary["dual_u_star"] = to_json(swap.u_star);
    r.summary["dual_v_star"] = to_json(swap.v_star);
    r.summary["swap_primal_gap"] = swap.primal_gap;
    r.summary["swap_sign_gap"] = swap.sign_gap;
    r.summary["bijection_gap"] = gap.max();
    ok = ok && swap.passed && gap.max() <= SolutionCertificate::kMembershipTol;
  } else {
    r.warnings.push_back("dual pair, swap check and bijection skipped: degenerate preconditioner");
  }
  r.status = ok ? "Verified" : "Failed";
  return r;
}

Table trajectory_table(const Trajectory& tr, Index n) {
  Table t;
  t.columns = {"t"};
  t.add_vector_columns("u", n);
  t.columns.push_back("lyapunov");
  t.columns.push_back("speed_sq");
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    std::vector<ordered_json> row{tr.times[k]};
    append(row, tr.states[k]);
    row.push_back(k < tr.lyapunov.size() ? ordered_json(tr.lyapunov[k]) : ordered_json());
    row.emplace_back(tr.speed_sq[k]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Report flow(const Config& c, const Output& out) {
  c.expect_keys("params", kParamKeys);
  const auto a = build_operator(c, "A");
  const Preconditioner m = build_preconditioner(c, "M");
  const double gamma = positive(c, "params", "gamma", 1.0);
  const Index n = a.op.dim();
  const Vector u0 = dim_checked(c, "run", "u0", n);
  const double step = positive(c, "run", "step", 0.01);
  const double t_end = positive(c, "run", "t_end", 10.0);
  FlowOptions fo;
  fo.method = method(c);
  if (c.has("run", "u_star")) fo.u_star = dim_checked(c, "run", "u_star", n);

  Report r;
  r.status = "Converged";
  Trajectory tr;
  if (flag(c, "run", "regularize", true)) {
    const WarpedEvaluator w(a.op, m, gamma);
    r.summary["step_cap"] = flow_step_cap(w);
    tr = integrate_yosida_flow(w, u0, step, t_end, fo);
    if (fo.u_star) {
      const LyapunovReport lr = lyapunov_report(tr, *fo.u_star, m, gamma);
      r.summary["lyapunov_max_increment"] = lr.max_increment;
      r.summary["lyapunov_tolerance"] = lr.tolerance;
      r.summary["lyapunov_l2_sum"] = lr.l2_sum;
      r.summary["lyapunov_l2_bound"] = lr.l2_bound;
      r.summary["lyapunov_passed"] = lr.passed();
      if (!lr.passed()) r.status = "Failed";
    }
  } else {
    tr = integrate_direct_flow(a.op, u0, step, t_end, fo);
  }
  out.write_table("trajectory", trajectory_table(tr, n));
  r.summary["steps"] = tr.times.size() - 1;
  r.summary["method"] = to_string(fo.method);
  r.summary["final_t"] = tr.times.back();
  r.summary["final_state"] = to_json(tr.states.back());
  r.summary["final_norm"] = tr.states.back().norm();
  return r;
}

Report dr_flow(const Config& c, const Output& out) {
  c.expect_keys("params", kParamKeys);
  const auto a = build_operator(c, "A");
  const auto b = build_operator(c, "B");
  const double alpha = positive(c, "params", "alpha", 1.0);
  const Index n = a.op.dim();
  const Vector z0 = dim_checked(c, "run", "z0", n);
  FlowOptions fo;
  fo.method = method(c);
  if (c.has("run", "u_star")) fo.u_star = dim_checked(c, "run", "u_star", n);
  const Trajectory tr = integrate_dr_flow(a.op, b.op, alpha, z0, positive(c, "run", "step", 0.01),
                                          positive(c, "run", "t_end", 10.0), fo);
  out.write_table("trajectory", trajectory_table(tr, n));
  const Vector& z = tr.states.back();
  Report r;
  r.status = "Converged";
  r.summary["steps"] = tr.times.size() - 1;
  r.summary["method"] = to_string(fo.method);
  r.summary["final_t"] = tr.times.back();
  r.summary["final_state"] = to_json(z);
  r.summary["fixed_point_residual"] = (dr_reflection(a.op, b.op, alpha, z) - z).norm();
  r.summary["shadow"] = to_json(a.op.resolvent(alpha, z));
  return r;
}

Report path(const Config& c, const Output& out) {
  c.expect_keys("params", kParamKeys);
  const SplittingProblem p = splitting_problem(c);
  const Index n = p.m.dim();
  std::vector<double> schedule;
  if (c.has("run", "lambdas")) {
    const Vector l = c.vector("run", "lambdas");
    schedule.assign(l.data(), l.data() + l.size());
  } else {
    schedule = halving_schedule(positive(c, "run", "lambda0", p.lambda),
                                static_cast<int>(c.integer_or("run", "halvings", 20)));
  }
  PathOptions po;
  po.inner_tol = positive(c, "run", "tol", po.inner_tol);
  po.max_inner = static_cast<int>(positive_int(c, "run", "max_iter", po.max_inner));
  Vector warm = c.has("run", "x0") ? dim_checked(c, "run", "x0", n) : Vector::Zero(n);

  Table t;
  t.columns = {"lambda"};
  t.add_vector_columns("x", n);
  t.add_vector_columns("y", n);
  for (const char* col : {"y_norm", "residual", "inner_iterations"}) t.columns.push_back(col);

  Report r;
  r.status = "Converged";
  double max_y = 0.0;
  // One lambda at a time so that a stall still leaves the finished rows on disk.
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (k > 0 && !(schedule[k] < schedule[k - 1])) {
      throw ConfigError("run.lambdas: schedule must be strictly decreasing");
    }
    try {
      const PathLog log = regularization_path(p, {schedule[k]}, warm, po);
      const PathPoint& pt = log.points.front();
      std::vector<ordered_json> row{pt.lambda};
      append(row, pt.x);
      append(row, pt.y);
      row.emplace_back(pt.y_norm);
      row.emplace_back(pt.residual);
      row.emplace_back(pt.inner_iterations);
      t.rows.push_back(std::move(row));
      max_y = std::max(max_y, pt.y_norm);
      warm = pt.x;
      r.summary["final_lambda"] = pt.lambda;
      r.summary["final_x"] = to_json(pt.x);
      r.summary["final_y"] = to_json(pt.y);
    } catch (const PathStalled& e) {
      r.status = "PathStalled";
      r.summary["stalled_lambda"] = e.lambda();
      r.summary["stalled_residual"] = e.residual();
      break;
    }
  }
  out.write_table("iterations", t);
  r.summary["points"] = t.rows.size();
  r.summary["max_y_norm"] = max_y;
  return r;
}

struct PropertyRow {
  std::string name;
  std::string outcome;  // pass, fail, skipped
  int samples = 0;
  double worst = 0.0;
  std::string note;
};

Report verify(const Config& c, const Output& out, std::optional<std::uint64_t> seed_flag) {
  c.expect_keys("params", kParamKeys);
  std::optional<std::uint64_t> seed = seed_flag;
  if (!seed && c.has("run", "seed")) seed = static_cast<std::uint64_t>(c.integer("run", "seed"));
  if (!seed) throw ConfigError("verify needs a seed: pass --seed <u64> or set run.seed");

  auto a = build_operator(c, "A");
  Preconditioner m = build_preconditioner(c, "M");
  double gamma = positive(c, "params", "gamma", 1.0);
  std::optional<SplittingProblem> problem;
  const std::string lift = c.text_or("params", "lift", "none");
  if (lift == "dr-block") {
    const auto b = build_operator(c, "B");
    const DrBlock blk = make_dr_block(a.op, b.op, positive(c, "params", "alpha", 1.0));
    a.op = blk.op;
    m = blk.metric;
    gamma = 1.0;
  } else if (lift != "none") {
    throw ConfigError("params.lift: expected none or dr-block");
  } else if (c.has_section("B")) {
    problem.emplace(a.op, build_operator(c, "B").op, m, positive(c, "params", "lambda", 1.0));
  }
  const WarpedEvaluator w(a.op, m, gamma);
  const Index n = a.op.dim();
  const int samples = static_cast<int>(positive_int(c, "run", "samples", 100));
  std::vector<std::string> props = {"firm-nonexpansiveness", "cocoercivity", "zero-equivalence",
                                    "semigroup", "shifted-identity", "summability", "lyapunov"};
  if (c.has("run", "properties")) props = c.list("run", "properties");

  std::mt19937_64 rng(*seed);
  std::normal_distribution<double> normal(0.0, 3.0);
  auto draw = [&] {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = normal(rng);
    return v;
  };
  const bool nested = w.route() == WarpedEvaluator::Route::ForwardBackward ||
                      w.route() == WarpedEvaluator::Route::YosidaLoop;
  const double identity_tol = nested ? 1e-6 : 1e-8;

  Report r;
  std::vector<PropertyRow> rows;
  auto skip = [&](const std::string& name, const std::string& why) {
    rows.push_back({name, "skipped", 0, 0.0, why});
    r.warnings.push_back(name + " skipped: " + why);
  };
  for (const auto& name : props) {
    PropertyRow row{name, "pass", samples, 0.0, ""};
    if (name == "firm-nonexpansiveness") {
      double worst = INFINITY;
      for (int k = 0; k < samples; ++k) {
        const Vector x = draw();
        const Vector y = draw();
        worst = std::min({worst, firm_nonexpansive_slack(w, x, y), nonexpansive_slack(w, x, y)});
      }
      row.worst = worst;
      if (worst < -1e-9) row.outcome = "fail";
    } else if (name == "cocoercivity") {
      if (!m.positive_definite()) {
        skip(name, "needs a positive definite preconditioner");
        continue;
      }
      double worst = INFINITY;
      for (int k = 0; k < samples; ++k) {
        const Vector x = draw();
        const Vector y = draw();
        worst = std::min(worst, cocoercivity_slack(w, x, y));
      }
      row.worst = worst;
      if (worst < -1e-9) row.outcome = "fail";
    } else if (name == "zero-equivalence") {
      int failures = 0;
      std::vector<Vector> points;
      for (int k = 0; k < samples; ++k) points.push_back(draw());
      if (c.has("run", "u_star")) points.push_back(dim_checked(c, "run", "u_star", n));
      for (const auto& x : points) failures += zero_equivalence_holds(w, x) ? 0 : 1;
      row.samples = static_cast<int>(points.size());
      row.worst = failures;
      if (failures) row.outcome = "fail";
    } else if (name == "semigroup" || name == "shifted-identity") {
      if (!m.positive_definite()) {
        skip(name, "needs a positive definite preconditioner");
        continue;
      }
      double worst = 0.0;
      for (int k = 0; k < samples; ++k) {
        const Vector x = draw();
        const IdentitySides s = name == "semigroup" ? semigroup_check(w, 0.5 * gamma, x)
                                                    : shifted_resolvent_identity(w, 0.5 * gamma, x);
        worst = std::max(worst, s.gap() / (1.0 + x.norm()));
      }
      row.worst = worst;
      if (worst > identity_tol) row.outcome = "fail";
    } else if (name == "summability") {
      if (!problem) {
        skip(name, "needs a splitting problem ([B] section)");
        continue;
      }
      BackwardBackwardOptions o;
      o.max_iter = static_cast<int>(positive_int(c, "run", "max_iter", 10'000));
      const auto base = backward_backward(*problem, Vector::Zero(n), o);
      if (!base.certificate) {
        skip(name, std::string("reference run ended ") + to_string(base.log.status));
        continue;
      }
      o.reference = base.certificate->x_bar;
      double worst = INFINITY;
      for (int k = 0; k < samples; ++k) {
        const Vector x0 = draw();
        const double bound = m.norm_sq(x0 - *o.reference) + 1e-8;
        const auto res = backward_backward(*problem, x0, o);
        for (const auto& rec : res.log.records) {
          worst = std::min(worst, bound - rec.summability_partial);
        }
      }
      row.worst = worst;
      if (worst < 0.0) row.outcome = "fail";
    } else if (name == "lyapunov") {
      if (!c.has("run", "u_star")) {
        skip(name, "needs a certified zero in run.u_star");
        continue;
      }
      const Vector u_star = dim_checked(c, "run", "u_star", n);
      const double step = std::min(positive(c, "run", "step", 0.01), flow_step_cap(w));
      const double t_end = positive(c, "run", "t_end", 10.0);
      double worst = INFINITY;
      for (int k = 0; k < samples; ++k) {
        const Trajectory tr = integrate_yosida_flow(w, draw(), step, t_end);
        const LyapunovReport lr = lyapunov_report(tr, u_star, m, gamma);
        worst = std::min(worst, lr.tolerance - lr.max_increment);
        if (!lr.passed()) row.outcome = "fail";
      }
      row.worst = worst;
    } else {
      throw ConfigError("run.properties: unknown property '" + name + "'");
    }
    rows.push_back(row);
  }

  Table t;
  t.columns = {"property", "outcome", "samples", "worst"};
  bool all = true;
  ordered_json jp = ordered_json::array();
  for (const auto& p : rows) {
    t.rows.push_back({p.name, p.outcome, p.samples, p.worst});
    if (p.outcome == "fail") all = false;
    ordered_json e = {{"property", p.name}, {"outcome", p.outcome}, {"samples", p.samples},
                      {"worst", p.worst}};
    if (!p.note.empty()) e["note"] = p.note;
    jp.push_back(e);
  }
  out.write_table("properties", t);
  r.status = all ? "Verified" : "Failed";
  r.summary["seed"] = *seed;
  r.summary["route"] = to_string(w.route());
  r.summary["tier"] = to_string(m.tier());
  r.summary["properties"] = jp;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Warped-resolvent splitting experiments"};
  app.require_subcommand(1, 1);
  std::string config_path;
  std::string out_dir = "out";
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  bool timing = false;

  const std::vector<std::string> modes = {"bb-solve", "flow", "dr-flow", "path", "verify", "fixsets"};
  const std::map<std::string, std::string> blurbs = {
      {"bb-solve", "backward-backward splitting x <- J_A J_B x"},
      {"flow", "Yosida (or direct) flow u' = -T u"},
      {"dr-flow", "Douglas-Rachford flow z' = -z + R_B R_A z"},
      {"path", "regularization path along a decreasing lambda schedule"},
      {"verify", "seeded property suite on the configured operator"},
      {"fixsets", "fixed-point sets, dual pair and swap check at the limit"}};
  for (const auto& mode : modes) {
    CLI::App* sub = app.add_subcommand(mode, blurbs.at(mode));
    sub->add_option("--config", config_path, "experiment config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "sampler seed (mandatory for verify)");
    sub->add_option("--format", format, "table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_flag("--timing", timing, "record elapsed wall time in summary.json");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string mode = app.get_subcommands().front()->get_name();

  Output out{out_dir, format};
  Report report;
  const auto start = std::chrono::steady_clock::now();
  try {
    fs::create_directories(out.dir);
    const Config cfg = Config::load(config_path);
    cfg.expect_keys("run", kRunKeys);
    if (mode == "bb-solve") report = bb_solve(cfg, out);
    else if (mode == "fixsets") report = fixsets(cfg, out);
    else if (mode == "flow") report = flow(cfg, out);
    else if (mode == "dr-flow") report = dr_flow(cfg, out);
    else if (mode == "path") report = path(cfg, out);
    else report = verify(cfg, out, seed);
  } catch (const std::exception& e) {
    report.status = "Failed";
    report.summary["error"] = e.what();
    std::cerr << "error: " << e.what() << '\n';
  }

  ordered_json summary;
  summary["mode"] = mode;
  summary["status"] = report.status;
  summary["exit_code"] = exit_code(report.status);
  for (auto& [k, v] : report.summary.items()) summary[k] = v;
  summary["warnings"] = report.warnings;
  if (timing) {
    summary["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  try {
    fs::create_directories(out.dir);
    std::ofstream(out.dir / "summary.json") << summary.dump(2) << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: cannot write summary: " << e.what() << '\n';
    return 1;
  }
  std::cout << mode << ": " << report.status << '\n';
  return exit_code(report.status);
}
