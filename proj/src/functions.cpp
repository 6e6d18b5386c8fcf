#include "warpsplit/functions.hpp"

#include "warpsplit/errors.hpp"

#include <cmath>
#include <limits>

namespace warpsplit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Orthogonal projector onto the row space of E.
Matrix row_space_projector(const Matrix& e) {
  Eigen::JacobiSVD<Matrix> svd(e, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = s.size() > 0 ? 1e-12 * std::max(1.0, s(0)) : 0.0;
  Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  const Matrix v = svd.matrixV().leftCols(rank);
  return v * v.transpose();
}

// Distance from p to the ray {mu n : mu >= 0}.
double ray_distance(const Vector& p, const Vector& n) {
  const double nn = n.squaredNorm();
  const double mu = std::max(0.0, p.dot(n) / nn);
  return (p - mu * n).norm();
}

}  // namespace

ConvexFunction ConvexFunction::zero(Index n) {
  if (n < 1) throw InvalidArgument("dimension must be positive");
  auto d = std::make_shared<Data>();
  d->kind = Kind::Zero;
  d->dim = n;
  return ConvexFunction(std::move(d));
}

ConvexFunction ConvexFunction::quadratic(Matrix q, Vector b, double c) {
  if (q.rows() == 0 || q.rows() != q.cols() || b.size() != q.rows()) {
    throw DimensionMismatch("quadratic: Q must be square and match b");
  }
  const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
    throw AdmissionError("quadratic: Q is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(q, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kPsdTol * scale) {
    throw AdmissionError("quadratic: Q is not positive semidefinite");
  }
  auto d = std::make_shared<Data>();
  d->kind = Kind::Quadratic;
  d->dim = q.rows();
  d->mat = std::move(q);
  d->vec1 = std::move(b);
  d->scalar = c;
  return ConvexFunction(std::move(d));
}

ConvexFunction ConvexFunction::shifted_quadratic(const Matrix& q, const Vector& center) {
  Vector b = -(q * center);
  const double c = 0.5 * center.dot(q * center);
  return quadratic(q, std::move(b), c);
}

ConvexFunction ConvexFunction::l1(Index n, double weight) {
  if (n < 1) throw InvalidArgument("dimension must be positive");
  if (!(weight >= 0.0)) throw AdmissionError("l1: weight must be nonnegative");
  auto d = std::make_shared<Data>();
  d->kind = Kind::L1;
  d->dim = n;
  d->scalar = weight;
  return ConvexFunction(std::move(d));
}

ConvexFunction ConvexFunction::box(Vector lo, Vector hi) {
  if (lo.size() == 0 || lo.size() != hi.size()) throw DimensionMismatch("box: lo/hi sizes differ");
  if ((lo.array() > hi.array()).any()) throw AdmissionError("box: lo must be <= hi componentwise");
  auto d = std::make_shared<Data>();
  d->kind = Kind::Box;
  d->dim = lo.size();
  d->vec1 = std::move(lo);
  d->vec2 = std::move(hi);
  return ConvexFunction(std::move(d));
}

ConvexFunction ConvexFunction::affine(Matrix e, Vector dvec) {
  if (e.rows() == 0 || e.cols() == 0 || e.rows() != dvec.size()) {
    throw DimensionMismatch("affine: E rows must match d");
  }
  // consistency: d must lie in range(E)
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(e);
  const Vector z = cod.solve(dvec);
  if ((e * z - dvec).norm() > 1e-9 * (1.0 + dvec.norm())) {
    throw AdmissionError("affine: the set {E z = d} is empty");
  }
  auto d = std::make_shared<Data>();
  d->kind = Kind::Affine;
  d->dim = e.cols();
  d->mat = std::move(e);
  d->vec1 = std::move(dvec);
  return ConvexFunction(std::move(d));
}

ConvexFunction ConvexFunction::halfspace(Vector a, double beta) {
  if (a.size() == 0) throw DimensionMismatch("halfspace: empty normal");
  if (a.norm() == 0.0) throw AdmissionError("halfspace: normal vector must be nonzero");
  auto d = std::make_shared<Data>();
  d->kind = Kind::Halfspace;
  d->dim = a.size();
  d->vec1 = std::move(a);
  d->scalar = beta;
  return ConvexFunction(std::move(d));
}

ConvexFunction ConvexFunction::hyperbola_epigraph() {
  auto d = std::make_shared<Data>();
  d->kind = Kind::HyperbolaEpigraph;
  d->dim = 2;
  return ConvexFunction(std::move(d));
}

std::string ConvexFunction::name() const {
  switch (kind()) {
    case Kind::Zero: return "zero";
    case Kind::Quadratic: return "quadratic";
    case Kind::L1: return "l1";
    case Kind::Box: return "box";
    case Kind::Affine: return "affine";
    case Kind::Halfspace: return "halfspace";
    case Kind::HyperbolaEpigraph: return "hyperbola-epigraph";
  }
  return "unknown";
}

bool ConvexFunction::is_indicator() const {
  switch (kind()) {
    case Kind::Box:
    case Kind::Affine:
    case Kind::Halfspace:
    case Kind::HyperbolaEpigraph: return true;
    default: return false;
  }
}

bool ConvexFunction::in_domain(const Vector& z, double tol) const {
  require_same_dim(z, dim(), "ConvexFunction::in_domain");
  switch (kind()) {
    case Kind::Zero:
    case Kind::Quadratic:
    case Kind::L1: return true;
    case Kind::Box:
      return ((z.array() >= lo().array() - tol) && (z.array() <= hi().array() + tol)).all();
    case Kind::Affine: return (e() * z - d()).norm() <= tol;
    case Kind::Halfspace: return a().dot(z) - beta() <= tol * a().norm();
    case Kind::HyperbolaEpigraph:
      if (tol == 0.0) return z(0) > 0.0 && z(1) >= 1.0 / z(0);
      return (z - project_hyperbola_epigraph(z)).norm() <= tol;
  }
  return false;
}

double ConvexFunction::value(const Vector& z) const {
  require_same_dim(z, dim(), "ConvexFunction::value");
  switch (kind()) {
    case Kind::Zero: return 0.0;
    case Kind::Quadratic: return 0.5 * z.dot(q() * z) + b().dot(z) + c();
    case Kind::L1: return weight() * z.lpNorm<1>();
    default: return in_domain(z) ? 0.0 : kInf;
  }
}

Vector ConvexFunction::prox(double tau, const Vector& v) const {
  require_same_dim(v, dim(), "ConvexFunction::prox");
  if (!(tau > 0.0)) throw InvalidArgument("prox: tau must be positive");
  switch (kind()) {
    case Kind::Zero: return v;
    case Kind::Quadratic: {
      const Matrix sys = Matrix::Identity(dim(), dim()) + tau * q();
      return sys.llt().solve(v - tau * b());
    }
    case Kind::L1: {
      const double t = tau * weight();
      return v.unaryExpr([t](double s) {
        return s > t ? s - t : (s < -t ? s + t : 0.0);
      });
    }
    default: return project_domain(v);
  }
}

Vector ConvexFunction::project_domain(const Vector& v) const {
  require_same_dim(v, dim(), "ConvexFunction::project_domain");
  switch (kind()) {
    case Kind::Zero:
    case Kind::Quadratic:
    case Kind::L1: return v;
    case Kind::Box: return v.cwiseMax(lo()).cwiseMin(hi());
    case Kind::Affine: {
      Eigen::CompleteOrthogonalDecomposition<Matrix> cod(e());
      return v - cod.solve(e() * v - d());
    }
    case Kind::Halfspace: {
      const double excess = a().dot(v) - beta();
      if (excess <= 0.0) return v;
      return v - (excess / a().squaredNorm()) * a();
    }
    case Kind::HyperbolaEpigraph: return project_hyperbola_epigraph(v);
  }
  return v;
}

double ConvexFunction::subgradient_distance(const Vector& y, const Vector& p, double tol) const {
  require_same_dim(y, dim(), "graph_contains");
  require_same_dim(p, dim(), "graph_contains");
  switch (kind()) {
    case Kind::Zero: return p.norm();
    case Kind::Quadratic: {
      const double lip = q().operatorNorm();
      return std::max(0.0, (p - (q() * y + b())).norm() - lip * tol);
    }
    case Kind::L1: {
      const double w = weight();
      double acc = 0.0;
      for (Index i = 0; i < dim(); ++i) {
        double di = 0.0;
        if (y(i) > tol) {
          di = p(i) - w;
        } else if (y(i) < -tol) {
          di = p(i) + w;
        } else {
          di = std::max(0.0, std::abs(p(i)) - w);
        }
        acc += di * di;
      }
      return std::sqrt(acc);
    }
    case Kind::Box: {
      double acc = 0.0;
      for (Index i = 0; i < dim(); ++i) {
        const bool at_lo = std::abs(y(i) - lo()(i)) <= tol;
        const bool at_hi = std::abs(y(i) - hi()(i)) <= tol;
        if (!at_lo && !at_hi && (y(i) < lo()(i) || y(i) > hi()(i))) return kInf;
        double di = 0.0;
        if (at_lo && at_hi) {
          di = 0.0;
        } else if (at_lo) {
          di = std::max(p(i), 0.0);
        } else if (at_hi) {
          di = std::max(-p(i), 0.0);
        } else {
          di = p(i);
        }
        acc += di * di;
      }
      return std::sqrt(acc);
    }
    case Kind::Affine: {
      if ((e() * y - d()).norm() > tol) return kInf;
      return (p - row_space_projector(e()) * p).norm();
    }
    case Kind::Halfspace: {
      const double gap = (a().dot(y) - beta()) / a().norm();
      if (gap > tol) return kInf;
      if (gap < -tol) return p.norm();
      return ray_distance(p, a());
    }
    case Kind::HyperbolaEpigraph: {
      Vector boundary(2);
      if (in_domain(y)) {
        if (y(1) - 1.0 / y(0) > tol) return p.norm();
        boundary << y(0), 1.0 / y(0);
      } else {
        boundary = project_hyperbola_epigraph(y);
        if ((boundary - y).norm() > tol) return kInf;
      }
      Vector normal(2);
      normal << -1.0 / (boundary(0) * boundary(0)), -1.0;
      return ray_distance(p, normal);
    }
  }
  return kInf;
}

Vector project_hyperbola_epigraph(const Vector& v) {
  require_same_dim(v, 2, "project_hyperbola_epigraph");
  const double sigma = v(0);
  const double tau = v(1);
  if (sigma > 0.0 && tau >= 1.0 / sigma) return v;

  // p(s) = s^4 - sigma s^3 + tau s - 1 has exactly one positive root for
  // points outside the epigraph; p(0) = -1.
  auto poly = [&](double s) { return ((s - sigma) * s * s + tau) * s - 1.0; };
  auto dpoly = [&](double s) { return (4.0 * s - 3.0 * sigma) * s * s + tau; };

  double lo = 0.0;
  double hi = std::max(1.0, std::abs(sigma) + std::abs(tau) + 1.0);
  while (poly(hi) <= 0.0) hi *= 2.0;
  double s = sigma > 0.0 ? std::min(std::max(sigma, 0.5 * hi * 1e-6), hi) : 0.5 * hi;
  for (int it = 0; it < 50; ++it) {
    const double ps = poly(s);
    if (ps < 0.0) lo = s; else hi = s;
    const double dps = dpoly(s);
    double next = dps > 0.0 ? s - ps / dps : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool done = std::abs(next - s) <= 1e-12 * std::max(1.0, s);
    s = next;
    if (done) break;
  }
  Vector out(2);
  out << s, 1.0 / s;
  return out;
}

}  // namespace warpsplit
