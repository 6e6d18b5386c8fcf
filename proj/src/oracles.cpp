#include "warpsplit/oracles.hpp"

#include "warpsplit/errors.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace warpsplit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double quad_form(const Matrix& m, const Vector& d) {
  double acc = 0.0;
  for (Index i = 0; i < d.size(); ++i) {
    for (Index j = 0; j < d.size(); ++j) acc += d(i) * m(i, j) * d(j);
  }
  return acc;
}

struct GridResult {
  Vector point;
  double value = kInf;
  double cell = 0.0;
  long evaluations = 0;
};

// Exhaustive search on a uniform grid with `n` points per axis; ties go to the
// point nearest the center, then to the lowest linear index.
GridResult grid_search(const std::function<double(const Vector&)>& obj, const Vector& center,
                       double radius, int n) {
  const Index d = center.size();
  const double h = 2.0 * radius / (n - 1);
  GridResult best;
  best.cell = h;
  double best_dist = kInf;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  std::vector<int> best_idx;
  Vector z(d);
  while (true) {
    for (Index k = 0; k < d; ++k) z(k) = center(k) - radius + h * idx[static_cast<std::size_t>(k)];
    const double v = obj(z);
    ++best.evaluations;
    if (v <= best.value) {
      const double dist = (z - center).squaredNorm();
      if (v < best.value || dist < best_dist) {
        best.value = v;
        best.point = z;
        best_dist = dist;
        best_idx = idx;
      }
    }
    Index k = 0;
    while (k < d && ++idx[static_cast<std::size_t>(k)] == n) {
      idx[static_cast<std::size_t>(k)] = 0;
      ++k;
    }
    if (k == d) break;
  }
  if (!std::isfinite(best.value)) throw GridTooSmall("no grid point lies in the domain");
  for (int i : best_idx) {
    if (i == 0 || i == n - 1) {
      throw GridTooSmall("grid minimizer lies on the boundary; enlarge grid_radius");
    }
  }
  return best;
}

GridResult refined_search(const std::function<double(const Vector&)>& obj, Vector center,
                          double radius, int n, int rounds) {
  GridResult r = grid_search(obj, center, radius, n);
  long evals = r.evaluations;
  for (int k = 0; k < rounds; ++k) {
    r = grid_search(obj, r.point, 2.0 * r.cell, n);
    evals += r.evaluations;
  }
  r.evaluations = evals;
  return r;
}

Vector oracle_subgradient(const ConvexFunction& f, const Vector& z) {
  switch (f.kind()) {
    case ConvexFunction::Kind::Zero:
    case ConvexFunction::Kind::Box:
    case ConvexFunction::Kind::Halfspace:
      return Vector::Zero(z.size());
    case ConvexFunction::Kind::Quadratic:
      return f.q() * z + f.b();
    case ConvexFunction::Kind::L1: {
      Vector s(z.size());
      for (Index i = 0; i < z.size(); ++i) s(i) = z(i) > 0 ? 1.0 : (z(i) < 0 ? -1.0 : 0.0);
      return f.weight() * s;
    }
    default:
      throw NotImplemented("subgradient oracle does not support " + f.name());
  }
}

Vector oracle_feasible(const ConvexFunction& f, const Vector& z) {
  switch (f.kind()) {
    case ConvexFunction::Kind::Box: {
      Vector out = z;
      for (Index i = 0; i < z.size(); ++i) {
        out(i) = std::fmin(std::fmax(out(i), f.lo()(i)), f.hi()(i));
      }
      return out;
    }
    case ConvexFunction::Kind::Halfspace: {
      const double s = f.a().dot(z) - f.beta();
      return s > 0 ? Vector(z - s / f.a().squaredNorm() * f.a()) : z;
    }
    default:
      return z;
  }
}

}  // namespace

double oracle_value(const ConvexFunction& f, const Vector& z) {
  switch (f.kind()) {
    case ConvexFunction::Kind::Zero:
      return 0.0;
    case ConvexFunction::Kind::Quadratic:
      return 0.5 * quad_form(f.q(), z) + f.b().dot(z) + f.c();
    case ConvexFunction::Kind::L1: {
      double s = 0.0;
      for (Index i = 0; i < z.size(); ++i) s += std::fabs(z(i));
      return f.weight() * s;
    }
    case ConvexFunction::Kind::Box:
      for (Index i = 0; i < z.size(); ++i) {
        if (z(i) < f.lo()(i) || z(i) > f.hi()(i)) return kInf;
      }
      return 0.0;
    case ConvexFunction::Kind::Halfspace:
      return f.a().dot(z) <= f.beta() ? 0.0 : kInf;
    case ConvexFunction::Kind::HyperbolaEpigraph:
      return z(0) > 0 && z(1) * z(0) >= 1.0 ? 0.0 : kInf;
    case ConvexFunction::Kind::Affine:
      throw NotImplemented("grid oracles cannot resolve a lower-dimensional affine set");
  }
  return kInf;
}

OracleResult prox_oracle(const ConvexFunction& f, const Preconditioner& m, double lambda,
                         const Vector& v, const OracleConfig& cfg) {
  if (!(lambda > 0.0)) throw InvalidArgument("prox oracle: lambda must be positive");
  if (f.dim() != v.size() || m.dim() != v.size()) {
    throw DimensionMismatch("prox oracle: f, M and v dimensions differ");
  }
  const Matrix& mm = m.matrix();
  const auto obj = [&](const Vector& z) {
    const double fz = oracle_value(f, z);
    return fz + quad_form(mm, z - v) / (2.0 * lambda);
  };
  const Index d = v.size();
  const bool grid = cfg.mode == OracleConfig::Mode::Grid ||
                    (cfg.mode == OracleConfig::Mode::Auto && d <= 2);
  OracleResult out;
  if (grid) {
    if (d > 2) throw InvalidArgument("grid oracle supports at most two dimensions");
    const Vector center = cfg.center ? *cfg.center : v;
    const int n = d == 1 ? cfg.points_1d : cfg.points_2d;
    const GridResult r = refined_search(obj, center, cfg.grid_radius, n, cfg.refine_rounds);
    out.argmin = r.point;
    out.value = r.value;
    out.cell = r.cell;
    out.evaluations = r.evaluations;
    return out;
  }
  if (!m.positive_definite()) {
    throw DegenerateUnsupported("subgradient oracle needs a positive definite M");
  }
  // projected subgradient with steps 1/(mu (k+1)) and 2/(k+2)-weighted averaging
  const double mu = m.alpha_min() / lambda;
  Vector z = oracle_feasible(f, v);
  Vector avg = z;
  for (int k = 0; k < cfg.subgradient_steps; ++k) {
    const Vector g = oracle_subgradient(f, z) + mm * (z - v) / lambda;
    z = oracle_feasible(f, z - g / (mu * (k + 1)));
    const double w = 2.0 / (k + 2);
    avg = (1.0 - w) * avg + w * z;
  }
  out.argmin = avg;
  out.value = obj(avg);
  out.evaluations = cfg.subgradient_steps;
  return out;
}

PhiOracleResult phi_argmin_oracle(const ConvexFunction& f, const ConvexFunction& g,
                                  const Preconditioner& m, double lambda,
                                  const OracleConfig& cfg) {
  if (!(lambda > 0.0)) throw InvalidArgument("phi oracle: lambda must be positive");
  const Index n = f.dim();
  if (g.dim() != n || m.dim() != n) throw DimensionMismatch("phi oracle: dimensions differ");
  if (n > 2) throw InvalidArgument("phi oracle supports 1-D and 2-D blocks");
  const Matrix& mm = m.matrix();
  const auto obj = [&](const Vector& w) {
    const Vector x = w.head(n);
    const Vector y = w.tail(n);
    const double fx = oracle_value(f, x);
    if (!std::isfinite(fx)) return kInf;
    const double gy = oracle_value(g, y);
    if (!std::isfinite(gy)) return kInf;
    return fx + gy + quad_form(mm, x - y) / (2.0 * lambda);
  };
  Vector center = Vector::Zero(2 * n);
  if (cfg.center) {
    if (cfg.center->size() != 2 * n) throw DimensionMismatch("phi oracle: center must be (x, y)");
    center = *cfg.center;
  }
  const int pts = n == 1 ? cfg.points_2d : cfg.points_4d;
  const int rounds = n == 1 ? cfg.refine_rounds : cfg.refine_rounds_4d;
  const GridResult r = refined_search(obj, center, cfg.grid_radius, pts, rounds);
  PhiOracleResult out;
  out.x = r.point.head(n);
  out.y = r.point.tail(n);
  out.value = r.value;
  out.cell = r.cell;
  out.evaluations = r.evaluations;
  return out;
}

}  // namespace warpsplit
