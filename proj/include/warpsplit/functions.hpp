#pragma once

#include "warpsplit/linalg.hpp"

#include <memory>
#include <string>

namespace warpsplit {

/// Closed registry of proper convex lsc functions with analytic prox maps.
///
/// Quadratic:   f(z) = 1/2 z^T Q z + b^T z + c, Q symmetric PSD
/// L1:          f(z) = w ||z||_1
/// Box:         indicator of {lo <= z <= hi} (infinite bounds allowed)
/// Affine:      indicator of {E z = d}
/// Halfspace:   indicator of {a^T z <= beta}
/// HyperbolaEpigraph: indicator of {(s, t) : s > 0, t >= 1/s} in R^2
class ConvexFunction {
 public:
  enum class Kind { Zero, Quadratic, L1, Box, Affine, Halfspace, HyperbolaEpigraph };

  static ConvexFunction zero(Index n);
  static ConvexFunction quadratic(Matrix q, Vector b, double c = 0.0);
  /// 1/2 (z - center)^T Q (z - center).
  static ConvexFunction shifted_quadratic(const Matrix& q, const Vector& center);
  static ConvexFunction l1(Index n, double weight);
  static ConvexFunction box(Vector lo, Vector hi);
  static ConvexFunction affine(Matrix e, Vector d);
  static ConvexFunction halfspace(Vector a, double beta);
  static ConvexFunction hyperbola_epigraph();

  Kind kind() const { return data_->kind; }
  Index dim() const { return data_->dim; }
  std::string name() const;
  bool is_indicator() const;

  /// f(z), +infinity outside the domain.
  double value(const Vector& z) const;
  bool in_domain(const Vector& z, double tol = 0.0) const;
  /// argmin_z f(z) + 1/(2 tau) ||z - v||^2.
  Vector prox(double tau, const Vector& v) const;
  /// Euclidean projection onto the closed domain (identity for full-domain kinds).
  Vector project_domain(const Vector& v) const;
  /// Distance from p to the subdifferential at some point within tol of y;
  /// +infinity when no such point is in the domain.
  double subgradient_distance(const Vector& y, const Vector& p, double tol) const;

  // Parameter access, valid for the matching kind.
  const Matrix& q() const { return data_->mat; }
  const Vector& b() const { return data_->vec1; }
  double c() const { return data_->scalar; }
  double weight() const { return data_->scalar; }
  const Vector& lo() const { return data_->vec1; }
  const Vector& hi() const { return data_->vec2; }
  const Matrix& e() const { return data_->mat; }
  const Vector& d() const { return data_->vec1; }
  const Vector& a() const { return data_->vec1; }
  double beta() const { return data_->scalar; }

 private:
  struct Data {
    Kind kind = Kind::Zero;
    Index dim = 0;
    Matrix mat;
    Vector vec1;
    Vector vec2;
    double scalar = 0.0;
  };
  explicit ConvexFunction(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

/// Euclidean projection onto {(s, t) : s > 0, t >= 1/s}; safeguarded Newton on
/// the normal equation s^4 - sigma s^3 + tau s - 1 = 0 (at most 50 steps, tol 1e-12).
Vector project_hyperbola_epigraph(const Vector& v);

}  // namespace warpsplit
