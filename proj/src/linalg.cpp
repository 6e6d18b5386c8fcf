#include "warpsplit/linalg.hpp"

#include "warpsplit/errors.hpp"

#include <cmath>
#include <string>

namespace warpsplit {

const char* to_string(Tier tier) {
  return tier == Tier::PositiveDefinite ? "PositiveDefinite" : "Degenerate";
}

void require_same_dim(const Vector& x, Index n, const char* what) {
  if (x.size() != n) {
    throw DimensionMismatch(std::string(what) + ": expected dimension " + std::to_string(n) +
                            ", got " + std::to_string(x.size()));
  }
}

Preconditioner::Preconditioner(Matrix m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw AdmissionError("preconditioner must be a non-empty square matrix");
  }
  if (!m.allFinite()) {
    throw AdmissionError("preconditioner has non-finite entries");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * scale) {
    throw AdmissionError("preconditioner is not symmetric (max |M - M^T| = " +
                         std::to_string(asym) + ")");
  }

  auto data = std::make_shared<Data>();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  if (eig.info() != Eigen::Success) {
    throw AdmissionError("eigendecomposition of the preconditioner failed");
  }
  data->eigenvalues = eig.eigenvalues();
  data->eigenvectors = eig.eigenvectors();
  data->alpha_min = data->eigenvalues.minCoeff();
  data->beta_max = data->eigenvalues.maxCoeff();
  const double spread = std::max(data->beta_max, data->eigenvalues.cwiseAbs().maxCoeff());
  if (data->alpha_min < -kPsdTol * spread) {
    throw AdmissionError("preconditioner is not positive semidefinite (min eigenvalue " +
                         std::to_string(data->alpha_min) + ")");
  }
  data->tier = data->alpha_min > kPsdTol * data->beta_max ? Tier::PositiveDefinite
                                                          : Tier::Degenerate;

  const Matrix off = m - Matrix(m.diagonal().asDiagonal());
  data->diagonal = off.cwiseAbs().maxCoeff() == 0.0;
  if (data->diagonal && (m.diagonal().array() == m(0, 0)).all()) {
    data->scalar = m(0, 0);
  }
  if (data->tier == Tier::PositiveDefinite) {
    data->llt.compute(m);
  }
  data->matrix = std::move(m);
  data_ = std::move(data);
}

Preconditioner Preconditioner::identity(Index n) { return Preconditioner(Matrix::Identity(n, n)); }

Preconditioner Preconditioner::scalar(Index n, double c) {
  return Preconditioner(Matrix(c * Matrix::Identity(n, n)));
}

Preconditioner Preconditioner::diagonal(const Vector& d) { return Preconditioner(Matrix(d.asDiagonal())); }

Preconditioner Preconditioner::dr_block(Index n) {
  Matrix m(2 * n, 2 * n);
  const Matrix id = Matrix::Identity(n, n);
  m << id, -id, -id, id;
  return Preconditioner(std::move(m));
}

Vector Preconditioner::apply(const Vector& x) const {
  require_same_dim(x, dim(), "Preconditioner::apply");
  return data_->matrix * x;
}

Vector Preconditioner::inverse_apply(const Vector& x) const {
  require_same_dim(x, dim(), "Preconditioner::inverse_apply");
  if (!positive_definite()) {
    throw DegenerateUnsupported("M^{-1} requested on a degenerate preconditioner");
  }
  return data_->llt.solve(x);
}

Vector Preconditioner::pinv_apply(const Vector& x) const {
  require_same_dim(x, dim(), "Preconditioner::pinv_apply");
  const double cut = kPsdTol * std::max(data_->beta_max, 0.0);
  Vector coeffs = data_->eigenvectors.transpose() * x;
  for (Index i = 0; i < coeffs.size(); ++i) {
    const double ev = data_->eigenvalues(i);
    coeffs(i) = ev > cut ? coeffs(i) / ev : 0.0;
  }
  return data_->eigenvectors * coeffs;
}

Matrix Preconditioner::inverse_matrix() const {
  if (!positive_definite()) {
    throw DegenerateUnsupported("M^{-1} requested on a degenerate preconditioner");
  }
  return data_->llt.solve(Matrix::Identity(dim(), dim()));
}

double Preconditioner::inner(const Vector& x, const Vector& y) const {
  require_same_dim(x, dim(), "m_inner");
  require_same_dim(y, dim(), "m_inner");
  return x.dot(data_->matrix * y);
}

double Preconditioner::norm_sq(const Vector& x) const { return std::max(0.0, inner(x, x)); }

double Preconditioner::norm(const Vector& x) const { return std::sqrt(norm_sq(x)); }

double Preconditioner::inverse_norm_sq(const Vector& x) const { return x.dot(inverse_apply(x)); }

double m_inner(const Preconditioner& m, const Vector& x, const Vector& y) { return m.inner(x, y); }

double reciprocal_condition(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

ShiftedSolver::ShiftedSolver(const Matrix& m, const Matrix& c, double gamma) {
  if (m.rows() != c.rows() || m.cols() != c.cols()) {
    throw DimensionMismatch("solve_shifted: M and C have different shapes");
  }
  if (!(gamma > 0.0)) throw InvalidArgument("solve_shifted: gamma must be positive");
  system_ = m + gamma * c;
  Eigen::FullPivLU<Matrix> probe(system_);
  rcond_ = probe.rcond();
  if (!std::isfinite(rcond_) || !probe.isInvertible()) rcond_ = 0.0;
  if (rcond_ <= kMinRcond) {
    throw SingularSystem("M + gamma C is numerically singular", rcond_);
  }
  lu_.compute(system_);
}

Vector ShiftedSolver::solve(const Vector& b) const {
  require_same_dim(b, system_.rows(), "solve_shifted");
  Vector y = lu_.solve(b);
  // one step of iterative refinement
  y += lu_.solve(b - system_ * y);
  const double res = (system_ * y - b).norm();
  if (!(res <= 1e-10 * (1.0 + b.norm()))) {
    throw SingularSystem("solve_shifted residual " + std::to_string(res) + " above tolerance",
                         rcond_);
  }
  return y;
}

Vector solve_shifted(const Preconditioner& m, const Matrix& c, double gamma, const Vector& b) {
  return ShiftedSolver(m.matrix(), c, gamma).solve(b);
}

Vector pinv_apply(const Preconditioner& m, const Vector& x) { return m.pinv_apply(x); }

}  // namespace warpsplit
