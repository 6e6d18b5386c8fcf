#include "warpsplit/properties.hpp"

#include "warpsplit/errors.hpp"

#include <cmath>

namespace warpsplit {

double firm_nonexpansive_slack(const WarpedEvaluator& w, const Vector& x, const Vector& y) {
  const Preconditioner& m = w.metric();
  const Vector dj = w.resolvent(x) - w.resolvent(y);
  const Vector d = x - y;
  return m.norm_sq(d) - m.norm_sq(dj) - m.norm_sq(d - dj);
}

double nonexpansive_slack(const WarpedEvaluator& w, const Vector& x, const Vector& y) {
  const Preconditioner& m = w.metric();
  return m.norm(x - y) - m.norm(w.resolvent(x) - w.resolvent(y));
}

double cocoercivity_slack(const WarpedEvaluator& w, const Vector& x, const Vector& y) {
  const Vector dp = w.yosida(x) - w.yosida(y);
  return (x - y).dot(dp) - w.gamma() * w.metric().inverse_norm_sq(dp);
}

double mirrored_cocoercivity_slack(const WarpedEvaluator& w, const Vector& x, const Vector& y) {
  const Vector dp = w.yosida(x) - w.yosida(y);
  return w.metric().inner(x - y, dp) - w.gamma() * dp.squaredNorm();
}

double lipschitz_ratio(const WarpedEvaluator& w, const Vector& x, const Vector& y) {
  const double dx = (x - y).norm();
  if (dx == 0.0) return 0.0;
  return (w.yosida(x) - w.yosida(y)).norm() / dx;
}

double graph_characterization_gap(const WarpedEvaluator& w, const Vector& x) {
  const Vector p = w.yosida(x);
  const Vector y = x - w.gamma() * w.metric().inverse_apply(p);
  // smallest tolerance accepted by the graph check, searched on a decade ladder
  for (double tol = 1e-14; tol <= 1.0; tol *= 10.0) {
    if (w.op().graph_contains(y, p, tol)) return tol;
  }
  return INFINITY;
}

double norm_bound_slack(const WarpedEvaluator& w, double mu, const Vector& x) {
  if (!(mu > 0.0) || mu > w.gamma()) throw InvalidArgument("norm bound needs 0 < mu <= gamma");
  const Preconditioner& m = w.metric();
  if (!m.positive_definite()) {
    throw DegenerateUnsupported("norm bound needs the spectral bounds of a PD preconditioner");
  }
  const double bound = (m.beta_max() / m.alpha_min()) * (1.0 - mu / w.gamma()) *
                       m.inverse_apply(w.yosida(x)).norm();
  return bound - (w.resolvent(x) - w.with_gamma(mu).resolvent(x)).norm();
}

bool zero_equivalence_holds(const WarpedEvaluator& w, const Vector& x) {
  const bool yosida_zero = w.yosida(x).norm() <= 1e-9;
  const bool graph_zero = w.op().graph_contains(x, Vector::Zero(x.size()), 1e-8);
  return yosida_zero == graph_zero;
}

}  // namespace warpsplit
