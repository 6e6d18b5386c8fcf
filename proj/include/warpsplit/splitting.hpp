#pragma once

#include "warpsplit/operators.hpp"
#include "warpsplit/warped.hpp"

#include <optional>
#include <vector>

namespace warpsplit {

/// 0 in A x + B x split as x = J^M_{lambda A} y, y = J^M_{lambda B} x.
struct SplittingProblem {
  SplittingProblem(MonotoneOperator a, MonotoneOperator b, Preconditioner m, double lambda,
                   WarpedOptions inner = {});

  MonotoneOperator a;
  MonotoneOperator b;
  Preconditioner m;
  double lambda;
  WarpedOptions inner;

  WarpedEvaluator resolvent_a() const { return WarpedEvaluator(a, m, lambda, inner); }
  WarpedEvaluator resolvent_b() const { return WarpedEvaluator(b, m, lambda, inner); }
  SplittingProblem swapped() const { return SplittingProblem(b, a, m, lambda, inner); }
  SplittingProblem with_lambda(double l) const { return SplittingProblem(a, b, m, l, inner); }
};

enum class RunStatus { Converged, MaxIter, Diverging };
const char* to_string(RunStatus status);

struct IterationRecord {
  int n = 0;
  Vector x;
  Vector y;
  double step_norm_m = 0.0;  // ||x_{n+1} - x_n||_M
  double diff_norm_m = 0.0;  // ||x_n - y_n||_M
  std::optional<double> fejer;  // ||x_n - x_ref||_M
  double summability_partial = 0.0;
  double x_norm = 0.0;
};

struct IterationLog {
  std::vector<IterationRecord> records;
  RunStatus status = RunStatus::MaxIter;
  int iterations = 0;
  std::optional<int> diverging_at;  // first iteration at which the monitor fired
  double max_x_norm = 0.0;
  Vector last_x;
  Vector last_y;
};

struct SolutionCertificate {
  Vector x_bar;
  Vector y_bar;
  Vector u_star;
  Vector v_star;
  double residual_E = 0.0;
  double residual_F = 0.0;
  double residual_S = 0.0;

  static constexpr double kMembershipTol = 1e-8;
  bool in_F() const { return residual_F <= kMembershipTol; }
  bool in_E() const { return residual_E <= kMembershipTol; }
  bool in_S() const { return residual_S <= kMembershipTol; }
};

/// Divergence monitor: ||x_n|| above the ceiling, or monotone growth by a
/// factor >= 1 + growth_factor for `window` consecutive steps.
struct DivergenceMonitor {
  double ceiling = 1e8;
  int window = 500;
  double growth_factor = 1e-6;
};

struct BackwardBackwardOptions {
  double tol = 1e-12;
  int max_iter = 10'000;
  /// A known solution x_ref enables the Fejer and summability diagnostics.
  std::optional<Vector> reference;
  DivergenceMonitor monitor;
  /// When false the iteration keeps running after the monitor fires.
  bool halt_on_divergence = true;
  /// Keep every iterate in the log (otherwise only the last one).
  bool keep_records = true;
};

struct BackwardBackwardResult {
  IterationLog log;
  std::optional<SolutionCertificate> certificate;
};

BackwardBackwardResult backward_backward(const SplittingProblem& p, const Vector& x0,
                                         const BackwardBackwardOptions& options = {});

struct DualPair {
  Vector u_star;
  Vector v_star;
  enum class Route { Affine, DavisYin } route = Route::Affine;
  int iterations = 0;
};

/// The unique u* with 0 in M^{-1} u + (A^{-1} + B~) u / lambda, B~ = (-I) o B^{-1} o (-I),
/// and v* = -u*. PositiveDefinite tier.
DualPair dual_solution(const SplittingProblem& p, double tol = 1e-13, int max_iter = 200'000);

/// Residuals of (x, y) against F = Fix(J_A J_B), E = Fix(J_B J_A) and S.
SolutionCertificate classify_point(const SplittingProblem& p, const Vector& x, const Vector& y);

struct SwapCheck {
  Vector u_star;  // from the dual inclusion of (A, B)
  Vector v_star;  // from the dual inclusion of (B, A)
  double primal_gap = 0.0;  // ||lambda u* - M(y - x)||
  double sign_gap = 0.0;    // ||lambda v* + lambda u*||
  bool passed = false;
};

/// S* = -R o S: (lambda u*, lambda v*) against M(y_bar - x_bar) and its negative.
SwapCheck dual_primal_swap_check(const SplittingProblem& p, const SolutionCertificate& cert);

struct BijectionGap {
  double forward = 0.0;   // ||J_B x - (x + lambda M^{-1} u*)||
  double backward = 0.0;  // ||J_A(x + lambda M^{-1} u*) - x||
  double max() const { return forward > backward ? forward : backward; }
};

/// For x in F: x -> x + lambda M^{-1} u* lands in E and J^M_{lambda A} inverts it.
BijectionGap bijection_gap(const SplittingProblem& p, const Vector& u_star, const Vector& x);

struct PathPoint {
  double lambda = 0.0;
  Vector x;
  Vector y;  // A^M_lambda x
  double y_norm = 0.0;
  double residual = 0.0;  // ||x - J_B J_A x|| (Euclidean)
  int inner_iterations = 0;
};

struct PathLog {
  std::vector<PathPoint> points;
  double max_y_norm = 0.0;
};

struct PathOptions {
  double inner_tol = 1e-13;
  int max_inner = 100'000;
  int anderson_memory = 5;
};

/// lambda_k = lambda0 2^{-k}, k = 0..halvings.
std::vector<double> halving_schedule(double lambda0, int halvings = 20);

/// Tracks the fixed point x_lambda = J_{lambda B} J_{lambda A} x_lambda and
/// y_lambda = A^M_lambda x_lambda along a decreasing schedule. Each solve is
/// warm-started from the previous lambda and accelerated by Anderson mixing.
/// Throws PathStalled when a fixed point cannot be reached.
PathLog regularization_path(const SplittingProblem& p, const std::vector<double>& schedule,
                            const Vector& x0, const PathOptions& options = {});

}  // namespace warpsplit
