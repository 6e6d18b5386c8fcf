#include "warpsplit/operators.hpp"

#include "warpsplit/errors.hpp"
#include "warpsplit/warped.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace warpsplit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Node = std::shared_ptr<const MonotoneOperator>;

Node share(const MonotoneOperator& t) { return std::make_shared<const MonotoneOperator>(t); }

bool full_space(const ConvexFunction& f) { return !f.is_indicator(); }

bool invertible(const Matrix& c, Matrix* inv) {
  if (c.rows() == 0) return false;
  Eigen::FullPivLU<Matrix> lu(c);
  if (!lu.isInvertible() || !(lu.rcond() > ShiftedSolver::kMinRcond)) return false;
  *inv = lu.inverse();
  return true;
}

// Distance of p from T(B(y, ytol)), approximated kind by kind.
double graph_gap(const MonotoneOperator& t, const Vector& y, const Vector& p, double ytol);

double product_gap(const MonotoneOperator& t, const Vector& y, const Vector& p, double ytol) {
  const Index n1 = t.child().dim();
  const Index n2 = t.second_child().dim();
  const double g1 = graph_gap(t.child(), y.head(n1), p.head(n1), ytol);
  const double g2 = graph_gap(t.second_child(), y.tail(n2), p.tail(n2), ytol);
  return std::hypot(g1, g2);
}

double graph_gap(const MonotoneOperator& t, const Vector& y, const Vector& p, double ytol) {
  using K = MonotoneOperator::Kind;
  switch (t.kind()) {
    case K::Zero:
      return p.norm();
    case K::Linear:
      return std::max(0.0, (p - t.matrix() * y).norm() - t.matrix().norm() * ytol);
    case K::Subdifferential:
    case K::NormalCone:
      return t.function().subgradient_distance(y, p, ytol);
    case K::Inverse:
      return graph_gap(t.child(), p, y, ytol);
    case K::Scaled:
      return t.factor() * graph_gap(t.child(), y, p / t.factor(), ytol);
    case K::Product:
      return product_gap(t, y, p, ytol);
    case K::Shifted:
      return graph_gap(t.child(), y, p - t.offset(), ytol);
    case K::Negated:
      return graph_gap(t.child(), -y, -p, ytol);
    case K::LinearSum:
      return graph_gap(t.child(), y, p - t.matrix() * y, ytol);
    case K::DrBlock:
      return graph_gap(t.dr_composite(), y, p, ytol);
    case K::Yosida: {
      const auto v = t.evaluate(y);
      return (p - *v).norm();
    }
  }
  return kInf;
}

void check_dim(const MonotoneOperator& t, const Vector& x, const char* what) {
  require_same_dim(x, t.dim(), what);
}

}  // namespace

MonotoneOperator MonotoneOperator::zero(Index n) {
  if (n <= 0) throw InvalidArgument("zero operator needs a positive dimension");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Zero;
  node->dim = n;
  return MonotoneOperator(node);
}

MonotoneOperator MonotoneOperator::linear(Matrix c) {
  if (c.rows() == 0 || c.rows() != c.cols()) {
    throw AdmissionError("linear operator needs a non-empty square matrix");
  }
  const Matrix sym = 0.5 * (c + c.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  const double floor = -1e-10 * std::max(1.0, c.norm());
  if (eig.eigenvalues().minCoeff() < floor) {
    throw AdmissionError("linear operator is not monotone (min eigenvalue of sym part " +
                         std::to_string(eig.eigenvalues().minCoeff()) + ")");
  }
  return linear_unchecked(std::move(c));
}

MonotoneOperator MonotoneOperator::linear_unchecked(Matrix c) {
  if (c.rows() == 0 || c.rows() != c.cols()) {
    throw AdmissionError("linear operator needs a non-empty square matrix");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Linear;
  node->dim = c.rows();
  node->mat = std::move(c);
  return MonotoneOperator(node);
}

MonotoneOperator MonotoneOperator::subdifferential(ConvexFunction f) {
  auto node = std::make_shared<Node>();
  node->kind = f.is_indicator() ? Kind::NormalCone : Kind::Subdifferential;
  node->dim = f.dim();
  node->fn = std::move(f);
  return MonotoneOperator(node);
}

MonotoneOperator MonotoneOperator::normal_cone(ConvexFunction indicator) {
  if (!indicator.is_indicator()) {
    throw InvalidArgument("normal cone needs an indicator function, got " + indicator.name());
  }
  return subdifferential(std::move(indicator));
}

MonotoneOperator MonotoneOperator::product(const MonotoneOperator& first,
                                           const MonotoneOperator& second) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Product;
  node->dim = first.dim() + second.dim();
  node->first = share(first);
  node->second = share(second);
  return MonotoneOperator(node);
}

MonotoneOperator MonotoneOperator::rotation() {
  Matrix r(2, 2);
  r << 0.0, -1.0, 1.0, 0.0;
  return linear(std::move(r));
}

MonotoneOperator MonotoneOperator::inverse() const {
  if (kind() == Kind::Inverse) return child();
  auto node = std::make_shared<Node>();
  node->kind = Kind::Inverse;
  node->dim = dim();
  node->first = share(*this);
  return MonotoneOperator(node);
}

MonotoneOperator MonotoneOperator::scaled(double alpha) const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("scaling factor must be positive and finite");
  }
  if (alpha == 1.0) return *this;
  auto node = std::make_shared<Node>();
  node->kind = Kind::Scaled;
  node->dim = dim();
  node->scalar = alpha;
  node->first = share(*this);
  return MonotoneOperator(node);
}

MonotoneOperator MonotoneOperator::shifted(const Vector& b) const {
  require_same_dim(b, dim(), "MonotoneOperator::shifted");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Shifted;
  node->dim = dim();
  node->vec = b;
  node->first = share(*this);
  return MonotoneOperator(node);
}

MonotoneOperator MonotoneOperator::negated() const {
  if (kind() == Kind::Negated) return child();
  auto node = std::make_shared<Node>();
  node->kind = Kind::Negated;
  node->dim = dim();
  node->first = share(*this);
  return MonotoneOperator(node);
}

MonotoneOperator MonotoneOperator::plus_linear(const Matrix& c) const {
  if (c.rows() != dim() || c.cols() != dim()) {
    throw DimensionMismatch("plus_linear: matrix shape does not match the operator");
  }
  // validates monotonicity of the linear part
  (void)linear(c);
  auto node = std::make_shared<Node>();
  node->kind = Kind::LinearSum;
  node->dim = dim();
  node->mat = c;
  node->first = share(*this);
  return MonotoneOperator(node);
}

MonotoneOperator MonotoneOperator::yosida(const MonotoneOperator& t, const Preconditioner& m,
                                          double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("yosida: gamma must be positive");
  if (m.dim() != t.dim()) throw DimensionMismatch("yosida: metric and operator dimensions differ");
  if (const auto af = t.affine_form()) {
    // T^M_gamma = (M - M (M + gamma C)^{-1} M) / gamma + M (M + gamma C)^{-1} c
    const ShiftedSolver solver(m.matrix(), af->linear, gamma);
    const Matrix& mm = m.matrix();
    Matrix jm(mm.rows(), mm.cols());
    for (Index j = 0; j < mm.cols(); ++j) jm.col(j) = solver.solve(mm.col(j));
    const Matrix y = (mm - mm * jm) / gamma;
    auto lin = linear_unchecked(y);
    if (af->offset.isZero(0.0)) return lin;
    return lin.shifted(mm * solver.solve(af->offset));
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Yosida;
  node->dim = t.dim();
  node->scalar = gamma;
  node->first = share(t);
  node->metric = std::make_shared<const Preconditioner>(m);
  return MonotoneOperator(node);
}

MonotoneOperator make_dr_block_operator(const MonotoneOperator& a, const MonotoneOperator& b,
                                        double alpha) {
  if (a.dim() != b.dim()) throw DimensionMismatch("DR block: A and B dimensions differ");
  if (!(alpha > 0.0)) throw InvalidArgument("DR block: alpha must be positive");
  const Index n = a.dim();
  Matrix skew = Matrix::Zero(2 * n, 2 * n);
  skew.topRightCorner(n, n) = Matrix::Identity(n, n);
  skew.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  const auto diag = MonotoneOperator::product(a.scaled(alpha), b.scaled(alpha).inverse());
  auto node = std::make_shared<MonotoneOperator::Node>();
  node->kind = MonotoneOperator::Kind::DrBlock;
  node->dim = 2 * n;
  node->scalar = alpha;
  node->first = share(a);
  node->second = share(b);
  node->composite = share(diag.plus_linear(skew));
  return MonotoneOperator(node);
}

DrBlock make_dr_block(const MonotoneOperator& a, const MonotoneOperator& b, double alpha) {
  return DrBlock{make_dr_block_operator(a, b, alpha), Preconditioner::dr_block(a.dim())};
}

Capabilities MonotoneOperator::capabilities() const {
  Capabilities caps;
  caps.has_graph_check = true;
  switch (kind()) {
    case Kind::Zero:
    case Kind::Linear:
    case Kind::Subdifferential:
    case Kind::NormalCone:
    case Kind::Yosida:
      caps.has_closed_resolvent = true;
      break;
    case Kind::Inverse:
    case Kind::Scaled:
    case Kind::Shifted:
    case Kind::Negated:
      caps.has_closed_resolvent = child().capabilities().has_closed_resolvent;
      break;
    case Kind::Product:
      caps.has_closed_resolvent = child().capabilities().has_closed_resolvent &&
                                  second_child().capabilities().has_closed_resolvent;
      break;
    case Kind::LinearSum:
      caps.has_closed_resolvent = child().affine_form().has_value();
      break;
    case Kind::DrBlock:
      caps.has_closed_resolvent = false;
      break;
  }
  caps.has_standard_prox = kind() == Kind::Subdifferential || kind() == Kind::NormalCone;
  return caps;
}

std::string MonotoneOperator::describe() const {
  switch (kind()) {
    case Kind::Zero:
      return "zero(" + std::to_string(dim()) + ")";
    case Kind::Linear:
      return "linear(" + std::to_string(dim()) + ")";
    case Kind::Subdifferential:
      return "subdiff(" + function().name() + ")";
    case Kind::NormalCone:
      return "normal-cone(" + function().name() + ")";
    case Kind::Inverse:
      return "inverse(" + child().describe() + ")";
    case Kind::Scaled:
      return std::to_string(factor()) + "*" + child().describe();
    case Kind::Product:
      return "product(" + child().describe() + ", " + second_child().describe() + ")";
    case Kind::Shifted:
      return "shifted(" + child().describe() + ")";
    case Kind::Negated:
      return "negated(" + child().describe() + ")";
    case Kind::LinearSum:
      return "linear-sum(" + child().describe() + ")";
    case Kind::DrBlock:
      return "dr-block(" + dr_a().describe() + ", " + dr_b().describe() + ")";
    case Kind::Yosida:
      return "yosida(" + child().describe() + ")";
  }
  return "unknown";
}

bool MonotoneOperator::graph_contains(const Vector& y, const Vector& p, double tol) const {
  check_dim(*this, y, "graph_contains");
  check_dim(*this, p, "graph_contains");
  if (!(tol >= 0.0)) throw InvalidArgument("graph_contains: tolerance must be non-negative");
  return graph_gap(*this, y, p, tol) <= tol;
}

Vector MonotoneOperator::resolvent(double gamma, const Vector& x) const {
  check_dim(*this, x, "resolvent");
  if (!(gamma > 0.0)) throw InvalidArgument("resolvent: gamma must be positive");
  switch (kind()) {
    case Kind::Zero:
      return x;
    case Kind::Linear:
      return ShiftedSolver(Matrix::Identity(dim(), dim()), matrix(), gamma).solve(x);
    case Kind::Subdifferential:
      return function().prox(gamma, x);
    case Kind::NormalCone:
      return function().project_domain(x);
    case Kind::Inverse:
      // Moreau: J_{gamma T^{-1}}(x) = x - gamma J_{T/gamma}(x / gamma)
      return x - gamma * child().resolvent(1.0 / gamma, x / gamma);
    case Kind::Scaled:
      return child().resolvent(gamma * factor(), x);
    case Kind::Product: {
      const Index n1 = child().dim();
      Vector out(dim());
      out.head(n1) = child().resolvent(gamma, x.head(n1));
      out.tail(dim() - n1) = second_child().resolvent(gamma, x.tail(dim() - n1));
      return out;
    }
    case Kind::Shifted:
      return child().resolvent(gamma, x - gamma * offset());
    case Kind::Negated:
      return -child().resolvent(gamma, -x);
    case Kind::LinearSum: {
      const auto af = affine_form();
      if (!af) throw NotImplemented("resolvent of " + describe() + " has no closed form");
      return ShiftedSolver(Matrix::Identity(dim(), dim()), af->linear, gamma)
          .solve(x - gamma * af->offset);
    }
    case Kind::DrBlock:
      throw NotImplemented("Euclidean resolvent of the DR block has no closed form");
    case Kind::Yosida: {
      // T^M_mu is (mu / beta)-cocoercive in the Euclidean metric: averaged iteration
      // y <- (g/(c+g)) y + (c/(c+g)) (x - g T(y)), contraction g/(c+g).
      const Preconditioner& m = yosida_metric();
      const double c = factor() / m.beta_max();
      const WarpedEvaluator inner(child(), m, factor(), WarpedOptions{1e-13, 100'000});
      Vector y = x;
      const double tol = 1e-13 * (1.0 + x.norm());
      for (int k = 0; k < 1'000'000; ++k) {
        const Vector ty = inner.yosida(y);
        const Vector r = y - x + gamma * ty;
        if (r.norm() <= tol) return y;
        y = (gamma / (c + gamma)) * y + (c / (c + gamma)) * (x - gamma * ty);
      }
      throw InnerSolveDiverged("Euclidean resolvent of a Yosida regularization", 1'000'000,
                               (y - x + gamma * inner.yosida(y)).norm());
    }
  }
  throw NotImplemented("resolvent: unknown kind");
}

std::optional<Vector> MonotoneOperator::evaluate(const Vector& y) const {
  check_dim(*this, y, "evaluate");
  if (kind() == Kind::Yosida) {
    const WarpedEvaluator inner(child(), yosida_metric(), factor(), WarpedOptions{1e-13, 100'000});
    return inner.yosida(y);
  }
  if (const auto af = affine_form()) return Vector(af->linear * y + af->offset);
  return std::nullopt;
}

std::optional<AffineForm> MonotoneOperator::affine_form() const {
  const Index n = dim();
  switch (kind()) {
    case Kind::Zero:
      return AffineForm{Matrix::Zero(n, n), Vector::Zero(n)};
    case Kind::Linear:
      return AffineForm{matrix(), Vector::Zero(n)};
    case Kind::Subdifferential:
      if (function().kind() == ConvexFunction::Kind::Quadratic) {
        return AffineForm{function().q(), function().b()};
      }
      if (function().kind() == ConvexFunction::Kind::Zero) {
        return AffineForm{Matrix::Zero(n, n), Vector::Zero(n)};
      }
      return std::nullopt;
    case Kind::NormalCone:
      return std::nullopt;
    case Kind::Inverse: {
      const auto af = child().affine_form();
      Matrix inv;
      if (!af || !invertible(af->linear, &inv)) return std::nullopt;
      return AffineForm{inv, -inv * af->offset};
    }
    case Kind::Scaled: {
      auto af = child().affine_form();
      if (!af) return std::nullopt;
      af->linear *= factor();
      af->offset *= factor();
      return af;
    }
    case Kind::Product: {
      const auto a1 = child().affine_form();
      const auto a2 = second_child().affine_form();
      if (!a1 || !a2) return std::nullopt;
      const Index n1 = child().dim();
      AffineForm out{Matrix::Zero(n, n), Vector(n)};
      out.linear.topLeftCorner(n1, n1) = a1->linear;
      out.linear.bottomRightCorner(n - n1, n - n1) = a2->linear;
      out.offset << a1->offset, a2->offset;
      return out;
    }
    case Kind::Shifted: {
      auto af = child().affine_form();
      if (!af) return std::nullopt;
      af->offset += offset();
      return af;
    }
    case Kind::Negated: {
      auto af = child().affine_form();
      if (!af) return std::nullopt;
      af->offset = -af->offset;
      return af;
    }
    case Kind::LinearSum: {
      auto af = child().affine_form();
      if (!af) return std::nullopt;
      af->linear += matrix();
      return af;
    }
    case Kind::DrBlock:
      return dr_composite().affine_form();
    case Kind::Yosida:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<ConvexFunction> MonotoneOperator::domain_indicator() const {
  switch (kind()) {
    case Kind::Zero:
    case Kind::Linear:
    case Kind::Yosida:
      return ConvexFunction::zero(dim());
    case Kind::Subdifferential:
    case Kind::NormalCone:
      if (full_space(function())) return ConvexFunction::zero(dim());
      return function();
    case Kind::Scaled:
    case Kind::Shifted:
    case Kind::LinearSum:
      return child().domain_indicator();
    case Kind::Negated: {
      const auto d = child().domain_indicator();
      if (d && full_space(*d)) return d;
      return std::nullopt;
    }
    case Kind::Product: {
      const auto d1 = child().domain_indicator();
      const auto d2 = second_child().domain_indicator();
      if (d1 && d2 && full_space(*d1) && full_space(*d2)) return ConvexFunction::zero(dim());
      return std::nullopt;
    }
    case Kind::Inverse:
    case Kind::DrBlock:
      if (affine_form()) return ConvexFunction::zero(dim());
      return std::nullopt;
  }
  return std::nullopt;
}

Vector standard_prox(const ConvexFunction& f, double tau, const Vector& v) {
  if (!(tau > 0.0)) throw InvalidArgument("standard_prox: tau must be positive");
  return f.prox(tau, v);
}

bool graph_contains(const MonotoneOperator& t, const Vector& y, const Vector& p, double tol) {
  return t.graph_contains(y, p, tol);
}

Vector reflected_resolvent(const MonotoneOperator& t, double gamma, const Vector& x) {
  return 2.0 * t.resolvent(gamma, x) - x;
}

MonotonicityReport monotonicity_probe(const MonotoneOperator& t, int sample_count,
                                      std::uint64_t seed) {
  if (sample_count < 2) throw InvalidArgument("monotonicity_probe needs at least two samples");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 3.0);
  const Index n = t.dim();
  const bool direct = t.affine_form().has_value() || t.kind() == MonotoneOperator::Kind::Yosida;
  const bool dr = t.kind() == MonotoneOperator::Kind::DrBlock;
  std::optional<WarpedEvaluator> dr_eval;
  if (dr && !direct) {
    dr_eval.emplace(t, Preconditioner::dr_block(n / 2), 1.0);
  } else if (!direct && !t.capabilities().has_closed_resolvent) {
    throw NotImplemented("monotonicity_probe: no way to sample the graph of " + t.describe());
  }

  std::vector<Vector> ys;
  std::vector<Vector> ps;
  ys.reserve(sample_count);
  ps.reserve(sample_count);
  for (int i = 0; i < sample_count; ++i) {
    Vector x(n);
    for (Index k = 0; k < n; ++k) x(k) = normal(rng);
    if (direct) {
      ps.push_back(*t.evaluate(x));
      ys.push_back(std::move(x));
    } else if (dr_eval) {
      // (J^M x, T^M x) lies on the graph of the block operator
      ys.push_back(dr_eval->resolvent(x));
      ps.push_back(dr_eval->yosida(x));
    } else {
      Vector y = t.resolvent(1.0, x);
      ps.push_back(x - y);
      ys.push_back(std::move(y));
    }
  }

  MonotonicityReport report;
  report.min_inner = kInf;
  for (int i = 0; i < sample_count; ++i) {
    for (int j = i + 1; j < sample_count; ++j) {
      const double v = (ys[i] - ys[j]).dot(ps[i] - ps[j]);
      report.min_inner = std::min(report.min_inner, v);
      ++report.pairs;
    }
  }
  report.violation = report.min_inner < kMonotonicityViolation;
  return report;
}

}  // namespace warpsplit
