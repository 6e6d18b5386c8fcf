#pragma once

#include "warpsplit/operators.hpp"
#include "warpsplit/warped.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace warpsplit {

enum class Integrator { Euler, RK4 };
const char* to_string(Integrator method);

/// States on a uniform grid t_k = k * step (the last step may be shorter).
struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<double> speed;     // ||u'(t_k)||^2 with u' the exact right-hand side
  std::vector<double> speed_sq;  // sum_{j=1..k} (t_j - t_{j-1}) ||u'(t_j)||^2
  std::vector<double> lyapunov;  // 1/2 ||u(t_k) - u*||^2_M when u* is supplied
};

struct FlowOptions {
  Integrator method = Integrator::RK4;
  std::optional<Vector> u_star;
};

/// Largest admissible explicit step: gamma / beta_max on the PD tier,
/// gamma / (2 ||M||_2) on a degenerate one.
double flow_step_cap(const WarpedEvaluator& w);

/// u' = -T^M_gamma u. Throws StepTooLarge above flow_step_cap.
Trajectory integrate_yosida_flow(const WarpedEvaluator& w, const Vector& u0, double step,
                                 double t_end, const FlowOptions& options = {});

/// u' = -T u for an affine operator (the unregularized flow).
Trajectory integrate_direct_flow(const MonotoneOperator& t, const Vector& u0, double step,
                                 double t_end, const FlowOptions& options = {});

/// R_{alpha B}(R_{alpha A} z): the reflection of A is applied first, which is
/// the composition produced by the block operator.
Vector dr_reflection(const MonotoneOperator& a, const MonotoneOperator& b, double alpha,
                     const Vector& z);

/// z' = -z + R_{alpha B} R_{alpha A} z.
Trajectory integrate_dr_flow(const MonotoneOperator& a, const MonotoneOperator& b, double alpha,
                             const Vector& z0, double step, double t_end,
                             const FlowOptions& options = {});

struct DrEquivalenceReport {
  Trajectory block;   // (x, y) under the block Yosida flow
  Trajectory scalar;  // z under the reduced flow
  double max_deviation = 0.0;  // max_k ||(x_k - y_k) - z_k||
};

DrEquivalenceReport dr_block_equivalence(const MonotoneOperator& a, const MonotoneOperator& b,
                                         double alpha, const Vector& x0, const Vector& y0,
                                         double step, double t_end,
                                         Integrator method = Integrator::RK4);

struct LyapunovReport {
  std::vector<double> h;
  double max_increment = 0.0;  // max_k h_{k+1} - h_k + gamma dt ||u'_{k+1}||^2
  double tolerance = 0.0;      // 1e-7 (1 + h_0)
  double l2_sum = 0.0;         // sum dt ||u'||^2
  double l2_bound = 0.0;       // (h_0 + 1e-6) / gamma
  double max_distance = 0.0;   // max_k ||u_k - u*||
  bool monotone = true;
  bool bounded = true;
  bool passed() const { return monotone && bounded; }
};

/// Discrete energy check of h(t) = 1/2 ||u(t) - u*||^2_M along a Yosida-flow
/// trajectory, using the derivative at the right end of each step.
LyapunovReport lyapunov_report(const Trajectory& traj, const Vector& u_star,
                               const Preconditioner& m, double gamma);

}  // namespace warpsplit
