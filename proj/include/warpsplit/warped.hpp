#pragma once

#include "warpsplit/linalg.hpp"
#include "warpsplit/operators.hpp"

#include <memory>
#include <vector>

namespace warpsplit {

struct WarpedOptions {
  double inner_tol = 1e-10;
  int inner_max_iter = 10'000;
};

/// Bound triple (T, M, gamma) evaluating the warped resolvent
/// J = (M + gamma T)^{-1} M and the warped Yosida regularization
/// T^M_gamma = (M - M J) / gamma.
///
/// The evaluation route is fixed at construction:
///  - Identity        T = 0 (any tier)
///  - AffineSolve     T affine: (M + gamma C) y = M x - gamma c (any tier)
///  - DrComposition   DR block with its own metric and gamma = 1 (degenerate tier)
///  - ScalarMetric    M = c I: Euclidean resolvent with parameter gamma / c
///  - Projection      normal cones with a closed-form M-projection
///  - YosidaLoop      T = S^M_mu with the same M: averaged fixed-point loop
///  - ForwardBackward generic PD-tier loop z <- J_{(gamma/beta) T}(z - M(z - x)/beta)
class WarpedEvaluator {
 public:
  enum class Route {
    Identity,
    AffineSolve,
    DrComposition,
    ScalarMetric,
    Projection,
    YosidaLoop,
    ForwardBackward,
    Unsupported,
  };

  WarpedEvaluator(MonotoneOperator op, Preconditioner metric, double gamma,
                  WarpedOptions options = {});

  const MonotoneOperator& op() const { return op_; }
  const Preconditioner& metric() const { return metric_; }
  double gamma() const { return gamma_; }
  const WarpedOptions& options() const { return options_; }
  Route route() const { return route_; }

  WarpedEvaluator with_gamma(double gamma) const;

  Vector resolvent(const Vector& x) const;
  Vector yosida(const Vector& x) const;

 private:
  Vector forward_backward(const Vector& x) const;
  Vector yosida_loop(const Vector& x) const;
  Vector dr_composition(const Vector& x) const;
  Vector projection(const Vector& x) const;

  MonotoneOperator op_;
  Preconditioner metric_;
  double gamma_;
  WarpedOptions options_;
  Route route_ = Route::Unsupported;
  std::shared_ptr<const ShiftedSolver> solver_;
  Vector affine_offset_;
  double singular_rcond_ = -1.0;
};

const char* to_string(WarpedEvaluator::Route route);

Vector warped_resolvent(const WarpedEvaluator& w, const Vector& x);
Vector warped_yosida(const WarpedEvaluator& w, const Vector& x);

struct GraphPair {
  Vector y;  // J x
  Vector p;  // T^M_gamma x
  double reconstruction_residual = 0.0;  // ||x - y - gamma M^{-1} p||
};

/// (J x, T^M_gamma x) together with the reconstruction x = y + gamma M^{-1} p.
/// Throws DegenerateUnsupported on the degenerate tier.
GraphPair graph_pair(const WarpedEvaluator& w, const Vector& x);

/// T^M_gamma x computed as the unique p with x in gamma M^{-1} p + T^{-1}(p),
/// i.e. the warped resolvent of T^{-1}/gamma in the metric M^{-1} at M x / gamma.
Vector yosida_via_inverse(const WarpedEvaluator& w, const Vector& x);

struct IdentitySides {
  Vector lhs;
  Vector rhs;
  double gap() const { return (lhs - rhs).norm(); }
};

/// lhs = J_mu((mu/gamma) x + (1 - mu/gamma) J_gamma x), rhs = J_gamma x, 0 < mu <= gamma.
IdentitySides shifted_resolvent_identity(const WarpedEvaluator& w, double mu, const Vector& x);

/// lhs = T^M_{gamma+lambda} x, rhs = (T^M_gamma)^M_lambda x.
IdentitySides semigroup_check(const WarpedEvaluator& w, double lambda, const Vector& x);

struct ResolventLimit {
  Vector value;                 // J at the smallest gamma
  Vector projection;            // P^M of x onto the closed domain
  std::vector<double> gammas;
  std::vector<double> distances;  // ||x_gamma - P x||_M per halving
  bool monotone = true;           // nonincreasing within 1e-9 after the first step
};

/// Tracks J^M_{gamma T} x for gamma = gamma0 2^{-k}, k = 0..halvings.
ResolventLimit resolvent_limit(const WarpedEvaluator& w, const Vector& x, double gamma0,
                               int halvings);

/// M-projection onto the closed convex set given by an indicator (or the
/// whole space for full-domain functions). PositiveDefinite tier.
Vector m_projection(const ConvexFunction& set, const Preconditioner& m, const Vector& x);

}  // namespace warpsplit
