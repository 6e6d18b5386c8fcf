#include "warpsplit/warped.hpp"

#include "warpsplit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace warpsplit {

namespace {

using K = MonotoneOperator::Kind;

bool same_matrix(const Preconditioner& a, const Preconditioner& b) {
  return a.dim() == b.dim() && a.matrix() == b.matrix();
}

bool has_projection_form(const MonotoneOperator& t, const Preconditioner& m) {
  if (t.kind() != K::NormalCone || !m.positive_definite()) return false;
  switch (t.function().kind()) {
    case ConvexFunction::Kind::Box:
      return m.is_diagonal();
    case ConvexFunction::Kind::Halfspace:
    case ConvexFunction::Kind::Affine:
      return true;
    default:
      return false;
  }
}

// argmin ||z - x||_M over {E z = d}: z = x - M^{-1} E^T (E M^{-1} E^T)^+ (E x - d).
Vector project_affine(const Matrix& e, const Vector& d, const Preconditioner& m, const Vector& x) {
  Matrix minv_et(e.cols(), e.rows());
  for (Index j = 0; j < e.rows(); ++j) minv_et.col(j) = m.inverse_apply(e.row(j).transpose());
  const Matrix s = e * minv_et;
  const Vector lambda = s.completeOrthogonalDecomposition().solve(e * x - d);
  return x - minv_et * lambda;
}

Vector project_halfspace(const Vector& a, double beta, const Preconditioner& m, const Vector& x) {
  const double excess = a.dot(x) - beta;
  if (excess <= 0.0) return x;
  const Vector minv_a = m.inverse_apply(a);
  return x - (excess / a.dot(minv_a)) * minv_a;
}

}  // namespace

const char* to_string(WarpedEvaluator::Route route) {
  switch (route) {
    case WarpedEvaluator::Route::Identity: return "identity";
    case WarpedEvaluator::Route::AffineSolve: return "affine-solve";
    case WarpedEvaluator::Route::DrComposition: return "dr-composition";
    case WarpedEvaluator::Route::ScalarMetric: return "scalar-metric";
    case WarpedEvaluator::Route::Projection: return "projection";
    case WarpedEvaluator::Route::YosidaLoop: return "yosida-loop";
    case WarpedEvaluator::Route::ForwardBackward: return "forward-backward";
    case WarpedEvaluator::Route::Unsupported: return "unsupported";
  }
  return "unknown";
}

WarpedEvaluator::WarpedEvaluator(MonotoneOperator op, Preconditioner metric, double gamma,
                                 WarpedOptions options)
    : op_(std::move(op)), metric_(std::move(metric)), gamma_(gamma), options_(options) {
  if (!(gamma_ > 0.0) || !std::isfinite(gamma_)) {
    throw InvalidArgument("warped evaluator: gamma must be positive and finite");
  }
  if (op_.dim() != metric_.dim()) {
    throw DimensionMismatch("warped evaluator: operator has dimension " +
                            std::to_string(op_.dim()) + ", metric has " +
                            std::to_string(metric_.dim()));
  }
  if (!(options_.inner_tol > 0.0) || options_.inner_max_iter <= 0) {
    throw InvalidArgument("warped evaluator: inner tolerance and iteration cap must be positive");
  }

  const bool pd = metric_.positive_definite();
  if (op_.kind() == K::Zero) {
    route_ = Route::Identity;
    return;
  }
  if (op_.kind() == K::DrBlock && gamma_ == 1.0 &&
      same_matrix(metric_, Preconditioner::dr_block(op_.dim() / 2))) {
    route_ = Route::DrComposition;
    return;
  }
  if (const auto af = op_.affine_form()) {
    route_ = Route::AffineSolve;
    affine_offset_ = af->offset;
    try {
      solver_ = std::make_shared<const ShiftedSolver>(metric_.matrix(), af->linear, gamma_);
    } catch (const SingularSystem& e) {
      singular_rcond_ = e.rcond();
    }
    return;
  }
  if (!pd) {
    route_ = Route::Unsupported;
    return;
  }
  if (op_.kind() == K::Yosida && same_matrix(op_.yosida_metric(), metric_)) {
    route_ = Route::YosidaLoop;
  } else if (metric_.scalar_multiple() && op_.capabilities().has_closed_resolvent) {
    route_ = Route::ScalarMetric;
  } else if (has_projection_form(op_, metric_)) {
    route_ = Route::Projection;
  } else if (op_.capabilities().has_closed_resolvent) {
    route_ = Route::ForwardBackward;
  } else {
    route_ = Route::Unsupported;
  }
}

WarpedEvaluator WarpedEvaluator::with_gamma(double gamma) const {
  return WarpedEvaluator(op_, metric_, gamma, options_);
}

Vector WarpedEvaluator::resolvent(const Vector& x) const {
  require_same_dim(x, op_.dim(), "warped_resolvent");
  switch (route_) {
    case Route::Identity:
      return x;
    case Route::AffineSolve:
      if (!solver_) {
        throw SingularSystem("M + gamma C is numerically singular", singular_rcond_);
      }
      return solver_->solve(metric_.apply(x) - gamma_ * affine_offset_);
    case Route::DrComposition:
      return dr_composition(x);
    case Route::ScalarMetric:
      return op_.resolvent(gamma_ / *metric_.scalar_multiple(), x);
    case Route::Projection:
      return projection(x);
    case Route::YosidaLoop:
      return yosida_loop(x);
    case Route::ForwardBackward:
      return forward_backward(x);
    case Route::Unsupported:
      break;
  }
  if (!metric_.positive_definite()) {
    throw DegenerateUnsupported("no closed form for the warped resolvent of " + op_.describe() +
                                " on a degenerate preconditioner at gamma = " +
                                std::to_string(gamma_));
  }
  throw NotImplemented("warped resolvent of " + op_.describe() +
                       " needs a Euclidean resolvent of the operator");
}

Vector WarpedEvaluator::yosida(const Vector& x) const {
  const Vector y = resolvent(x);
  return metric_.apply(x - y) / gamma_;
}

Vector WarpedEvaluator::dr_composition(const Vector& x) const {
  const Index n = op_.dim() / 2;
  const double alpha = op_.factor();
  const Vector d = x.head(n) - x.tail(n);
  const Vector u = op_.dr_a().resolvent(alpha, d);
  const Vector z = 2.0 * u - d;
  // J_{(alpha B)^{-1}}(z) = z - J_{alpha B}(z)
  const Vector v = z - op_.dr_b().resolvent(alpha, z);
  Vector out(2 * n);
  out << u, v;
  return out;
}

Vector WarpedEvaluator::projection(const Vector& x) const {
  const ConvexFunction& f = op_.function();
  switch (f.kind()) {
    case ConvexFunction::Kind::Box:
      return f.project_domain(x);
    case ConvexFunction::Kind::Halfspace:
      return project_halfspace(f.a(), f.beta(), metric_, x);
    case ConvexFunction::Kind::Affine:
      return project_affine(f.e(), f.d(), metric_, x);
    default:
      throw NotImplemented("no closed-form M-projection for " + f.name());
  }
}

Vector WarpedEvaluator::forward_backward(const Vector& x) const {
  // Fixed point of z <- J_{(gamma/beta) T}(z - M(z - x)/beta); the residual
  // (beta I - M)(z+ - z) lies in M(z+ - x) + gamma T(z+).
  const double beta = metric_.beta_max();
  const double tau = gamma_ / beta;
  const Vector mx = metric_.apply(x);
  const double tol = options_.inner_tol * (1.0 + mx.norm());
  Vector z = x;
  double residual = 0.0;
  for (int k = 1; k <= options_.inner_max_iter; ++k) {
    const Vector w = z - metric_.apply(z - x) / beta;
    Vector next = op_.resolvent(tau, w);
    const Vector step = next - z;
    residual = (beta * step - metric_.apply(step)).norm();
    z = std::move(next);
    if (residual <= tol) return z;
  }
  throw InnerSolveDiverged("warped resolvent inner loop did not reach tolerance",
                           options_.inner_max_iter, residual);
}

Vector WarpedEvaluator::yosida_loop(const Vector& x) const {
  // Solve M(y - x) + lambda S^M_mu(y) = 0 with y <- (lambda y + mu (x - lambda M^{-1} S(y))) / (mu + lambda).
  const double mu = op_.factor();
  const double lambda = gamma_;
  const WarpedEvaluator inner(op_.child(), metric_, mu,
                              WarpedOptions{std::min(options_.inner_tol, 1e-13), 100'000});
  const Vector mx = metric_.apply(x);
  const double tol = options_.inner_tol * (1.0 + mx.norm());
  Vector y = x;
  double residual = 0.0;
  for (int k = 1; k <= options_.inner_max_iter; ++k) {
    const Vector s = inner.yosida(y);
    residual = (metric_.apply(y) - mx + lambda * s).norm();
    if (residual <= tol) return y;
    y = (lambda * y + mu * (x - lambda * metric_.inverse_apply(s))) / (mu + lambda);
  }
  throw InnerSolveDiverged("Yosida warped resolvent loop did not reach tolerance",
                           options_.inner_max_iter, residual);
}

Vector warped_resolvent(const WarpedEvaluator& w, const Vector& x) { return w.resolvent(x); }

Vector warped_yosida(const WarpedEvaluator& w, const Vector& x) { return w.yosida(x); }

GraphPair graph_pair(const WarpedEvaluator& w, const Vector& x) {
  if (!w.metric().positive_definite()) {
    throw DegenerateUnsupported("graph_pair needs M^{-1}; the preconditioner is degenerate");
  }
  GraphPair out;
  out.y = w.resolvent(x);
  out.p = w.metric().apply(x - out.y) / w.gamma();
  out.reconstruction_residual =
      (x - out.y - w.gamma() * w.metric().inverse_apply(out.p)).norm();
  return out;
}

Vector yosida_via_inverse(const WarpedEvaluator& w, const Vector& x) {
  const Preconditioner& m = w.metric();
  if (!m.positive_definite()) {
    throw DegenerateUnsupported("yosida_via_inverse needs M^{-1}; the preconditioner is degenerate");
  }
  require_same_dim(x, m.dim(), "yosida_via_inverse");
  Matrix minv = m.inverse_matrix();
  // the computed inverse is symmetric only up to rounding
  minv = 0.5 * (minv + minv.transpose());
  const WarpedEvaluator dual(w.op().inverse(), Preconditioner(std::move(minv)), 1.0 / w.gamma(),
                             w.options());
  return dual.resolvent(m.apply(x) / w.gamma());
}

IdentitySides shifted_resolvent_identity(const WarpedEvaluator& w, double mu, const Vector& x) {
  if (!(mu > 0.0) || mu > w.gamma()) {
    throw InvalidArgument("shifted resolvent identity needs 0 < mu <= gamma");
  }
  IdentitySides out;
  out.rhs = w.resolvent(x);
  const double r = mu / w.gamma();
  out.lhs = w.with_gamma(mu).resolvent(r * x + (1.0 - r) * out.rhs);
  return out;
}

IdentitySides semigroup_check(const WarpedEvaluator& w, double lambda, const Vector& x) {
  if (!(lambda > 0.0)) throw InvalidArgument("semigroup check needs lambda > 0");
  IdentitySides out;
  out.lhs = w.with_gamma(w.gamma() + lambda).yosida(x);
  const auto reg = MonotoneOperator::yosida(w.op(), w.metric(), w.gamma());
  out.rhs = WarpedEvaluator(reg, w.metric(), lambda, w.options()).yosida(x);
  return out;
}

Vector m_projection(const ConvexFunction& set, const Preconditioner& m, const Vector& x) {
  require_same_dim(x, m.dim(), "m_projection");
  if (!set.is_indicator()) return x;
  if (!m.positive_definite()) {
    throw DegenerateUnsupported("M-projection needs a positive definite preconditioner");
  }
  switch (set.kind()) {
    case ConvexFunction::Kind::Box:
      if (m.is_diagonal()) return set.project_domain(x);
      break;
    case ConvexFunction::Kind::Halfspace:
      return project_halfspace(set.a(), set.beta(), m, x);
    case ConvexFunction::Kind::Affine:
      return project_affine(set.e(), set.d(), m, x);
    default:
      break;
  }
  return WarpedEvaluator(MonotoneOperator::normal_cone(set), m, 1.0, WarpedOptions{1e-13, 100'000})
      .resolvent(x);
}

ResolventLimit resolvent_limit(const WarpedEvaluator& w, const Vector& x, double gamma0,
                               int halvings) {
  if (!w.metric().positive_definite()) {
    throw DegenerateUnsupported("resolvent limit is defined on the positive definite tier");
  }
  if (!(gamma0 > 0.0) || halvings < 0) {
    throw InvalidArgument("resolvent limit needs gamma0 > 0 and halvings >= 0");
  }
  const auto dom = w.op().domain_indicator();
  if (!dom) {
    throw NotImplemented("closure of the domain of " + w.op().describe() +
                         " is not a registry set");
  }
  ResolventLimit out;
  out.projection = m_projection(*dom, w.metric(), x);
  double gamma = gamma0;
  for (int k = 0; k <= halvings; ++k) {
    out.value = w.with_gamma(gamma).resolvent(x);
    out.gammas.push_back(gamma);
    out.distances.push_back(w.metric().norm(out.value - out.projection));
    gamma *= 0.5;
  }
  for (std::size_t k = 2; k < out.distances.size(); ++k) {
    if (out.distances[k] > out.distances[k - 1] + 1e-9) out.monotone = false;
  }
  return out;
}

}  // namespace warpsplit
