#pragma once

#include "warpsplit/warped.hpp"

namespace warpsplit {

// Pointwise slacks of the warped-resolvent inequalities. A property holds at
// (x, y) when its slack is >= 0 up to the caller's tolerance.

/// ||x - y||^2_M - ||Jx - Jy||^2_M - ||(I-J)x - (I-J)y||^2_M.
double firm_nonexpansive_slack(const WarpedEvaluator& w, const Vector& x, const Vector& y);
/// ||x - y||_M - ||Jx - Jy||_M.
double nonexpansive_slack(const WarpedEvaluator& w, const Vector& x, const Vector& y);
/// <dx, dp> - gamma ||dp||^2_{M^{-1}} with p = T^M_gamma. PositiveDefinite tier.
double cocoercivity_slack(const WarpedEvaluator& w, const Vector& x, const Vector& y);
/// <dx, dp>_M - gamma ||dp||^2. Only valid when M commutes with the operator.
double mirrored_cocoercivity_slack(const WarpedEvaluator& w, const Vector& x, const Vector& y);
/// ||dp|| / ||dx|| (0 when x = y).
double lipschitz_ratio(const WarpedEvaluator& w, const Vector& x, const Vector& y);
/// Graph distance of (x - gamma M^{-1} p, p), p = T^M_gamma x. PositiveDefinite tier.
double graph_characterization_gap(const WarpedEvaluator& w, const Vector& x);
/// (beta/alpha)(1 - mu/gamma) ||M^{-1} T^M_gamma x|| - ||J_gamma x - J_mu x||, 0 < mu <= gamma.
double norm_bound_slack(const WarpedEvaluator& w, double mu, const Vector& x);
/// ||T^M_gamma x|| <= 1e-9 iff (x, 0) is in the graph of T within 1e-8.
bool zero_equivalence_holds(const WarpedEvaluator& w, const Vector& x);

}  // namespace warpsplit
