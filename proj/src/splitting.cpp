#include "warpsplit/splitting.hpp"

#include "warpsplit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace warpsplit {

SplittingProblem::SplittingProblem(MonotoneOperator a_, MonotoneOperator b_, Preconditioner m_,
                                   double lambda_, WarpedOptions inner_)
    : a(std::move(a_)), b(std::move(b_)), m(std::move(m_)), lambda(lambda_), inner(inner_) {
  if (a.dim() != b.dim() || a.dim() != m.dim()) {
    throw DimensionMismatch("splitting problem: A, B and M must share a dimension");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("splitting problem: lambda must be positive");
  }
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged: return "Converged";
    case RunStatus::MaxIter: return "MaxIter";
    case RunStatus::Diverging: return "Diverging";
  }
  return "Unknown";
}

BackwardBackwardResult backward_backward(const SplittingProblem& p, const Vector& x0,
                                         const BackwardBackwardOptions& options) {
  require_same_dim(x0, p.m.dim(), "backward_backward");
  if (!(options.tol > 0.0) || options.max_iter <= 0) {
    throw InvalidArgument("backward_backward: tol and max_iter must be positive");
  }
  const WarpedEvaluator ja = p.resolvent_a();
  const WarpedEvaluator jb = p.resolvent_b();
  const Preconditioner& m = p.m;

  std::optional<Vector> ref_diff;
  if (options.reference) {
    require_same_dim(*options.reference, m.dim(), "backward_backward reference");
    ref_diff = *options.reference - jb.resolvent(*options.reference);
  }

  BackwardBackwardResult out;
  IterationLog& log = out.log;
  Vector x = x0;
  double partial = 0.0;
  int growth_run = 0;
  bool converged = false;
  bool diverging = false;
  log.max_x_norm = x.norm();

  for (int n = 0; n < options.max_iter; ++n) {
    const Vector y = jb.resolvent(x);
    Vector next = ja.resolvent(y);

    IterationRecord rec;
    rec.n = n;
    rec.step_norm_m = m.norm(next - x);
    rec.diff_norm_m = m.norm(x - y);
    rec.x_norm = x.norm();
    if (options.reference) {
      rec.fejer = m.norm(x - *options.reference);
      partial += m.norm_sq((x - y) - *ref_diff) + m.norm_sq((next - y) - *ref_diff);
    }
    rec.summability_partial = partial;
    const bool stop = rec.step_norm_m <= options.tol * (1.0 + m.norm(x));
    if (options.keep_records) {
      rec.x = x;
      rec.y = y;
      log.records.push_back(std::move(rec));
    } else {
      log.records.assign(1, std::move(rec));
      log.records.back().x = x;
      log.records.back().y = y;
    }
    log.iterations = n + 1;

    const double prev_norm = x.norm();
    x = std::move(next);
    const double norm = x.norm();
    log.max_x_norm = std::max(log.max_x_norm, norm);
    if (stop) {
      converged = true;
      break;
    }

    growth_run = norm >= (1.0 + options.monitor.growth_factor) * prev_norm ? growth_run + 1 : 0;
    if (!log.diverging_at &&
        (norm > options.monitor.ceiling || growth_run >= options.monitor.window)) {
      log.diverging_at = n + 1;
      diverging = true;
      if (options.halt_on_divergence) break;
    }
    if (!std::isfinite(norm)) break;
  }

  log.last_x = x;
  log.last_y = jb.resolvent(x);
  if (converged) {
    log.status = RunStatus::Converged;
    out.certificate = classify_point(p, x, log.last_y);
  } else {
    log.status = diverging ? RunStatus::Diverging : RunStatus::MaxIter;
  }
  return out;
}

SolutionCertificate classify_point(const SplittingProblem& p, const Vector& x, const Vector& y) {
  require_same_dim(x, p.m.dim(), "classify_point");
  require_same_dim(y, p.m.dim(), "classify_point");
  const WarpedEvaluator ja = p.resolvent_a();
  const WarpedEvaluator jb = p.resolvent_b();
  const Preconditioner& m = p.m;
  SolutionCertificate c;
  c.x_bar = x;
  c.y_bar = y;
  c.residual_F = m.norm(x - ja.resolvent(jb.resolvent(x)));
  c.residual_E = m.norm(y - jb.resolvent(ja.resolvent(y)));
  const double graph = m.norm(y - jb.resolvent(x));
  c.residual_S = std::max({c.residual_F, c.residual_E, graph});
  c.u_star = m.apply(y - x) / p.lambda;
  c.v_star = -c.u_star;
  return c;
}

DualPair dual_solution(const SplittingProblem& p, double tol, int max_iter) {
  const Preconditioner& m = p.m;
  if (!m.positive_definite()) {
    throw DegenerateUnsupported("dual solution needs M^{-1}; the preconditioner is degenerate");
  }
  const double lambda = p.lambda;
  const MonotoneOperator a_inv = p.a.inverse();
  const MonotoneOperator b_tilde = p.b.inverse().negated();
  DualPair out;

  const auto fa = a_inv.affine_form();
  const auto fb = b_tilde.affine_form();
  if (fa && fb) {
    // (M^{-1} + (C_A + C_B) / lambda) u = -(c_A + c_B) / lambda
    const Matrix sys = m.inverse_matrix() + (fa->linear + fb->linear) / lambda;
    Eigen::FullPivLU<Matrix> lu(sys);
    if (!lu.isInvertible() || !(lu.rcond() > ShiftedSolver::kMinRcond)) {
      throw SingularSystem("dual inclusion system is singular", lu.rcond());
    }
    out.u_star = lu.solve(Vector(-(fa->offset + fb->offset) / lambda));
    out.route = DualPair::Route::Affine;
  } else {
    // Davis-Yin on 0 in lambda M^{-1} u + A^{-1} u + B~ u; the smooth term has
    // Lipschitz constant lambda / alpha_min.
    const double eta = m.alpha_min() / lambda;
    Vector z = Vector::Zero(m.dim());
    Vector u_g = z;
    bool done = false;
    int k = 0;
    double gap = 0.0;
    for (k = 1; k <= max_iter; ++k) {
      u_g = b_tilde.resolvent(eta, z);
      const Vector u_f =
          a_inv.resolvent(eta, 2.0 * u_g - z - eta * lambda * m.inverse_apply(u_g));
      const Vector delta = u_f - u_g;
      z += delta;
      gap = delta.norm();
      if (gap <= tol * (1.0 + u_g.norm())) {
        u_g = u_f;
        done = true;
        break;
      }
    }
    if (!done) throw InnerSolveDiverged("dual inclusion loop did not reach tolerance", max_iter, gap);
    out.u_star = u_g;
    out.iterations = k;
    out.route = DualPair::Route::DavisYin;
  }
  out.v_star = -out.u_star;
  return out;
}

SwapCheck dual_primal_swap_check(const SplittingProblem& p, const SolutionCertificate& cert) {
  if (!p.m.positive_definite()) {
    throw DegenerateUnsupported("swap check needs a positive definite preconditioner");
  }
  SwapCheck s;
  s.u_star = dual_solution(p).u_star;
  s.v_star = dual_solution(p.swapped()).u_star;
  const Vector primal = p.m.apply(cert.y_bar - cert.x_bar);
  s.primal_gap = (p.lambda * s.u_star - primal).norm();
  s.sign_gap = (p.lambda * s.v_star + p.lambda * s.u_star).norm();
  s.passed = s.primal_gap <= 1e-8 && s.sign_gap <= 1e-8;
  return s;
}

BijectionGap bijection_gap(const SplittingProblem& p, const Vector& u_star, const Vector& x) {
  const Vector shifted = x + p.lambda * p.m.inverse_apply(u_star);
  BijectionGap g;
  g.forward = (p.resolvent_b().resolvent(x) - shifted).norm();
  g.backward = (p.resolvent_a().resolvent(shifted) - x).norm();
  return g;
}

std::vector<double> halving_schedule(double lambda0, int halvings) {
  if (!(lambda0 > 0.0) || halvings < 0) {
    throw InvalidArgument("halving schedule needs lambda0 > 0 and halvings >= 0");
  }
  std::vector<double> out;
  for (int k = 0; k <= halvings; ++k) out.push_back(std::ldexp(lambda0, -k));
  return out;
}

namespace {

struct FixedPoint {
  Vector x;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Anderson-mixed fixed-point iteration for x = J_B J_A x, falling back to a
// plain step whenever mixing fails to reduce the residual.
FixedPoint anderson_fixed_point(const WarpedEvaluator& ja, const WarpedEvaluator& jb,
                                const Vector& start, const PathOptions& o) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  auto map = [&](const Vector& v) { return jb.resolvent(ja.resolvent(v)); };
  FixedPoint fp;
  fp.x = start;
  Vector g = map(fp.x) - fp.x;
  fp.residual = g.norm();
  std::deque<Vector> dx;
  std::deque<Vector> dg;
  for (int k = 0; k <= o.max_inner; ++k) {
    fp.iterations = k;
    const double floor = 16.0 * kEps * (1.0 + fp.x.norm());
    if (fp.residual <= std::max(o.inner_tol, floor)) {
      fp.converged = true;
      return fp;
    }
    Vector cand = fp.x + g;
    if (!dx.empty()) {
      Matrix gmat(g.size(), static_cast<Index>(dg.size()));
      Matrix xmat(g.size(), static_cast<Index>(dx.size()));
      for (std::size_t j = 0; j < dg.size(); ++j) {
        gmat.col(static_cast<Index>(j)) = dg[j];
        xmat.col(static_cast<Index>(j)) = dx[j];
      }
      const Vector coef = gmat.completeOrthogonalDecomposition().solve(g);
      cand = fp.x + g - (xmat + gmat) * coef;
    }
    Vector gc = map(cand) - cand;
    if (!dx.empty() && !(gc.norm() < fp.residual)) {
      dx.clear();
      dg.clear();
      cand = fp.x + g;
      gc = map(cand) - cand;
    }
    dx.push_back(cand - fp.x);
    dg.push_back(gc - g);
    if (static_cast<int>(dx.size()) > o.anderson_memory) {
      dx.pop_front();
      dg.pop_front();
    }
    fp.x = std::move(cand);
    g = std::move(gc);
    fp.residual = g.norm();
  }
  return fp;
}

}  // namespace

PathLog regularization_path(const SplittingProblem& p, const std::vector<double>& schedule,
                            const Vector& x0, const PathOptions& options) {
  require_same_dim(x0, p.m.dim(), "regularization_path");
  if (schedule.empty()) throw InvalidArgument("regularization path needs a non-empty schedule");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (!(schedule[k] > 0.0) || (k > 0 && !(schedule[k] < schedule[k - 1]))) {
      throw InvalidArgument("lambda schedule must be positive and strictly decreasing");
    }
  }
  if (options.anderson_memory < 0 || options.max_inner <= 0) {
    throw InvalidArgument("regularization path: invalid inner options");
  }
  PathLog log;
  Vector warm = x0;
  for (double lambda : schedule) {
    const SplittingProblem q = p.with_lambda(lambda);
    const WarpedEvaluator ja = q.resolvent_a();
    const WarpedEvaluator jb = q.resolvent_b();
    const FixedPoint fp = anderson_fixed_point(ja, jb, warm, options);
    if (!fp.converged) throw PathStalled(lambda, fp.residual);
    PathPoint pt;
    pt.lambda = lambda;
    pt.x = fp.x;
    pt.y = ja.yosida(fp.x);
    pt.y_norm = pt.y.norm();
    pt.residual = fp.residual;
    pt.inner_iterations = fp.iterations;
    log.max_y_norm = std::max(log.max_y_norm, pt.y_norm);
    warm = fp.x;
    log.points.push_back(std::move(pt));
  }
  return log;
}

}  // namespace warpsplit
