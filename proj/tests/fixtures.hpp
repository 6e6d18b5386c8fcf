#pragma once

#include "test_support.hpp"

#include "warpsplit/operators.hpp"
#include "warpsplit/splitting.hpp"

#include <cmath>

namespace testing {

using warpsplit::ConvexFunction;
using warpsplit::MonotoneOperator;
using warpsplit::Preconditioner;
using warpsplit::SplittingProblem;

/// partial of 1/2 ||. - c||^2
inline MonotoneOperator centered_quadratic(const Vector& c) {
  return MonotoneOperator::subdifferential(
      ConvexFunction::shifted_quadratic(Matrix::Identity(c.size(), c.size()), c));
}

inline SplittingProblem two_quadratic(const Vector& a, const Vector& b, const Preconditioner& m,
                                      double lambda = 1.0) {
  return SplittingProblem(centered_quadratic(a), centered_quadratic(b), m, lambda);
}

/// Closed-form fixed point of the two-quadratic problem with diagonal M and lambda = 1.
inline std::pair<Vector, Vector> two_quadratic_solution(const Vector& a, const Vector& b,
                                                        const Vector& mdiag) {
  const auto m = mdiag.array();
  Vector x = ((m * b.array() + (m + 1) * a.array()) / (2 * m + 1)).matrix();
  Vector y = (((m + 1) * b.array() + m * a.array()) / (2 * m + 1)).matrix();
  return {x, y};
}

inline SplittingProblem hyperbola_vs_halfplane(double top = 0.0) {
  // {t >= 1/s, s > 0} against {t <= top}; disjoint for top <= 0
  return SplittingProblem(MonotoneOperator::normal_cone(ConvexFunction::hyperbola_epigraph()),
                          MonotoneOperator::normal_cone(ConvexFunction::halfspace(vec({0, 1}), top)),
                          Preconditioner::identity(2), 1.0);
}

}  // namespace testing
