#pragma once

#include <Eigen/Dense>

#include <memory>
#include <optional>

namespace warpsplit {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class Tier { PositiveDefinite, Degenerate };

const char* to_string(Tier tier);

/// Relative thresholds used when admitting a preconditioner.
inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// Symmetric positive-semidefinite linear map M with its spectral data.
///
/// Construction validates symmetry (relative 1e-12) and semidefiniteness
/// (eigenvalues >= -1e-10 * beta_max) and never symmetrizes silently. The
/// tier is PositiveDefinite iff alpha_min > 1e-10 * beta_max. Instances are
/// immutable and cheap to copy.
class Preconditioner {
 public:
  explicit Preconditioner(Matrix m);

  static Preconditioner identity(Index n);
  static Preconditioner scalar(Index n, double c);
  static Preconditioner diagonal(const Vector& d);
  /// The 2n x 2n block [[I, -I], [-I, I]].
  static Preconditioner dr_block(Index n);

  Index dim() const { return data_->matrix.rows(); }
  const Matrix& matrix() const { return data_->matrix; }
  Tier tier() const { return data_->tier; }
  bool positive_definite() const { return data_->tier == Tier::PositiveDefinite; }
  double alpha_min() const { return data_->alpha_min; }
  double beta_max() const { return data_->beta_max; }
  const Vector& eigenvalues() const { return data_->eigenvalues; }
  const Matrix& eigenvectors() const { return data_->eigenvectors; }

  /// c when M = c I exactly.
  std::optional<double> scalar_multiple() const { return data_->scalar; }
  bool is_diagonal() const { return data_->diagonal; }

  Vector apply(const Vector& x) const;
  /// M^{-1} x; throws DegenerateUnsupported on the degenerate tier.
  Vector inverse_apply(const Vector& x) const;
  Vector pinv_apply(const Vector& x) const;
  /// M^{-1} as a matrix; PositiveDefinite tier only.
  Matrix inverse_matrix() const;

  double inner(const Vector& x, const Vector& y) const;
  double norm_sq(const Vector& x) const;
  double norm(const Vector& x) const;
  /// ||x||^2_{M^{-1}}; PositiveDefinite tier only.
  double inverse_norm_sq(const Vector& x) const;

 private:
  struct Data {
    Matrix matrix;
    Vector eigenvalues;
    Matrix eigenvectors;
    Tier tier = Tier::PositiveDefinite;
    double alpha_min = 0.0;
    double beta_max = 0.0;
    std::optional<double> scalar;
    bool diagonal = false;
    Eigen::LLT<Matrix> llt;  // valid on the PD tier only
  };
  std::shared_ptr<const Data> data_;
};

/// <x, y>_M = x^T M y.
double m_inner(const Preconditioner& m, const Vector& x, const Vector& y);

/// Factorization of M + gamma C, reusable across right-hand sides.
class ShiftedSolver {
 public:
  /// Threshold below which the reciprocal condition estimate is rejected.
  static constexpr double kMinRcond = 1e-12;

  ShiftedSolver(const Matrix& m, const Matrix& c, double gamma);

  Vector solve(const Vector& b) const;
  double rcond() const { return rcond_; }
  const Matrix& system() const { return system_; }

 private:
  Matrix system_;
  Eigen::PartialPivLU<Matrix> lu_;
  double rcond_ = 0.0;
};

/// Solves (M + gamma C) y = b; throws SingularSystem when the system is
/// numerically singular.
Vector solve_shifted(const Preconditioner& m, const Matrix& c, double gamma, const Vector& b);

/// Moore-Penrose action M^+ x.
Vector pinv_apply(const Preconditioner& m, const Vector& x);

/// Reciprocal 2-norm condition number sigma_min / sigma_max (0 for a zero matrix).
double reciprocal_condition(const Matrix& a);

void require_same_dim(const Vector& x, Index n, const char* what);

}  // namespace warpsplit
