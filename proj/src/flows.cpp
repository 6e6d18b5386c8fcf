#include "warpsplit/flows.hpp"

#include "warpsplit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace warpsplit {

namespace {

using Field = std::function<Vector(const Vector&)>;

Vector advance(const Field& f, const Vector& u, double h, Integrator method) {
  if (method == Integrator::Euler) return u + h * f(u);
  const Vector k1 = f(u);
  const Vector k2 = f(u + 0.5 * h * k1);
  const Vector k3 = f(u + 0.5 * h * k2);
  const Vector k4 = f(u + h * k3);
  return u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory integrate(const Field& f, const Vector& u0, double step, double t_end,
                     const FlowOptions& options, const Preconditioner* metric) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("flow step must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw InvalidArgument("flow end time must be non-negative");
  }
  if (options.u_star) require_same_dim(*options.u_star, u0.size(), "flow u_star");
  const long steps = static_cast<long>(std::ceil(t_end / step - 1e-9));

  Trajectory tr;
  auto push = [&](double t, Vector u, double dt) {
    const double sp = f(u).squaredNorm();
    tr.times.push_back(t);
    tr.speed.push_back(sp);
    tr.speed_sq.push_back(tr.speed_sq.empty() ? 0.0 : tr.speed_sq.back() + dt * sp);
    if (options.u_star) {
      const Vector d = u - *options.u_star;
      tr.lyapunov.push_back(0.5 * (metric ? metric->norm_sq(d) : d.squaredNorm()));
    }
    tr.states.push_back(std::move(u));
  };
  push(0.0, u0, 0.0);
  Vector u = u0;
  for (long k = 1; k <= steps; ++k) {
    const double t = k == steps ? t_end : static_cast<double>(k) * step;
    const double h = t - tr.times.back();
    u = advance(f, u, h, options.method);
    push(t, u, h);
  }
  return tr;
}

}  // namespace

const char* to_string(Integrator method) {
  return method == Integrator::Euler ? "euler" : "rk4";
}

double flow_step_cap(const WarpedEvaluator& w) {
  const Preconditioner& m = w.metric();
  if (m.positive_definite()) return w.gamma() / m.beta_max();
  return w.gamma() / (2.0 * m.beta_max());
}

Trajectory integrate_yosida_flow(const WarpedEvaluator& w, const Vector& u0, double step,
                                 double t_end, const FlowOptions& options) {
  require_same_dim(u0, w.metric().dim(), "integrate_yosida_flow");
  const double cap = flow_step_cap(w);
  if (step > cap * (1.0 + 1e-12)) throw StepTooLarge(step, cap);
  const Field f = [&w](const Vector& u) -> Vector { return -w.yosida(u); };
  return integrate(f, u0, step, t_end, options, &w.metric());
}

Trajectory integrate_direct_flow(const MonotoneOperator& t, const Vector& u0, double step,
                                 double t_end, const FlowOptions& options) {
  require_same_dim(u0, t.dim(), "integrate_direct_flow");
  const auto af = t.affine_form();
  if (!af) throw NotImplemented("direct flow needs a single-valued affine operator");
  const Field f = [&af](const Vector& u) -> Vector { return -(af->linear * u + af->offset); };
  return integrate(f, u0, step, t_end, options, nullptr);
}

Vector dr_reflection(const MonotoneOperator& a, const MonotoneOperator& b, double alpha,
                     const Vector& z) {
  return reflected_resolvent(b, alpha, reflected_resolvent(a, alpha, z));
}

Trajectory integrate_dr_flow(const MonotoneOperator& a, const MonotoneOperator& b, double alpha,
                             const Vector& z0, double step, double t_end,
                             const FlowOptions& options) {
  if (a.dim() != b.dim()) throw DimensionMismatch("DR flow: A and B dimensions differ");
  require_same_dim(z0, a.dim(), "integrate_dr_flow");
  if (!(alpha > 0.0)) throw InvalidArgument("DR flow: alpha must be positive");
  const Field f = [&](const Vector& z) -> Vector { return dr_reflection(a, b, alpha, z) - z; };
  return integrate(f, z0, step, t_end, options, nullptr);
}

DrEquivalenceReport dr_block_equivalence(const MonotoneOperator& a, const MonotoneOperator& b,
                                         double alpha, const Vector& x0, const Vector& y0,
                                         double step, double t_end, Integrator method) {
  const DrBlock blk = make_dr_block(a, b, alpha);
  const Index n = a.dim();
  Vector u0(2 * n);
  u0 << x0, y0;
  DrEquivalenceReport r;
  FlowOptions o;
  o.method = method;
  r.block = integrate_yosida_flow(WarpedEvaluator(blk.op, blk.metric, 1.0), u0, step, t_end, o);
  r.scalar = integrate_dr_flow(a, b, alpha, x0 - y0, step, t_end, o);
  for (std::size_t k = 0; k < r.block.states.size(); ++k) {
    const Vector& s = r.block.states[k];
    const double dev = ((s.head(n) - s.tail(n)) - r.scalar.states[k]).norm();
    r.max_deviation = std::max(r.max_deviation, dev);
  }
  return r;
}

LyapunovReport lyapunov_report(const Trajectory& traj, const Vector& u_star,
                               const Preconditioner& m, double gamma) {
  LyapunovReport r;
  const std::size_t n = traj.states.size();
  if (n == 0) return r;
  r.h.reserve(n);
  for (const Vector& u : traj.states) {
    r.h.push_back(0.5 * m.norm_sq(u - u_star));
    r.max_distance = std::max(r.max_distance, (u - u_star).norm());
  }
  r.tolerance = 1e-7 * (1.0 + r.h.front());
  r.max_increment = -INFINITY;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dt = traj.times[k + 1] - traj.times[k];
    const double inc = r.h[k + 1] - r.h[k] + gamma * dt * traj.speed[k + 1];
    r.max_increment = std::max(r.max_increment, inc);
  }
  if (n == 1) r.max_increment = 0.0;
  r.monotone = r.max_increment <= r.tolerance;
  r.l2_sum = traj.speed_sq.back();
  r.l2_bound = (r.h.front() + 1e-6) / gamma;
  r.bounded = r.l2_sum <= r.l2_bound;
  return r;
}

}  // namespace warpsplit
