#pragma once

#include "warpsplit/functions.hpp"
#include "warpsplit/linalg.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>

namespace warpsplit {

struct Capabilities {
  bool has_closed_resolvent = false;
  bool has_graph_check = false;
  bool has_standard_prox = false;
};

/// x -> C x + c, the affine description of an operator when one exists.
struct AffineForm {
  Matrix linear;
  Vector offset;
};

/// Handle to a maximal monotone operator from a closed registry of kinds.
///
/// Every kind carries an exact graph description, so identities can be
/// checked pointwise. Handles are immutable and share their node.
class MonotoneOperator {
 public:
  enum class Kind {
    Zero,
    Linear,           // x -> C x, C + C^T PSD
    Subdifferential,  // partial f
    NormalCone,       // N_C = partial iota_C
    Inverse,          // T^{-1}
    Scaled,           // alpha T, alpha > 0
    Product,          // T1 x T2 on stacked coordinates
    Shifted,          // x -> T(x) + b
    Negated,          // (-I) o T o (-I)
    LinearSum,        // x -> C x + T(x)
    DrBlock,          // [[alpha A, I], [-I, (alpha B)^{-1}]]
    Yosida,           // single-valued warped Yosida regularization of T
  };

  static MonotoneOperator zero(Index n);
  /// Admits C only if C + C^T >= -1e-10 ||C|| (monotone).
  static MonotoneOperator linear(Matrix c);
  /// Skips the monotonicity admission check; for probing invalid inputs.
  static MonotoneOperator linear_unchecked(Matrix c);
  static MonotoneOperator subdifferential(ConvexFunction f);
  static MonotoneOperator normal_cone(ConvexFunction indicator);
  static MonotoneOperator product(const MonotoneOperator& first, const MonotoneOperator& second);
  /// 2-D rotation (x, y) -> (-y, x).
  static MonotoneOperator rotation();

  MonotoneOperator inverse() const;
  MonotoneOperator scaled(double alpha) const;
  MonotoneOperator shifted(const Vector& b) const;
  MonotoneOperator negated() const;
  MonotoneOperator plus_linear(const Matrix& c) const;

  Kind kind() const { return node_->kind; }
  Index dim() const { return node_->dim; }
  Capabilities capabilities() const;
  std::string describe() const;

  /// True iff dist(p, T(y')) <= tol for some y' within tol of y.
  bool graph_contains(const Vector& y, const Vector& p, double tol) const;
  /// Euclidean resolvent J_{gamma T}(x) = (I + gamma T)^{-1} x.
  Vector resolvent(double gamma, const Vector& x) const;
  /// T(y) for single-valued full-domain kinds; nullopt otherwise.
  std::optional<Vector> evaluate(const Vector& y) const;
  /// Affine description when T is affine (single-valued with full domain).
  std::optional<AffineForm> affine_form() const;
  /// Closure of the domain as a convex set, when it is one of the registry sets.
  std::optional<ConvexFunction> domain_indicator() const;

  // Structural access.
  const Matrix& matrix() const { return node_->mat; }
  const Vector& offset() const { return node_->vec; }
  double factor() const { return node_->scalar; }
  const ConvexFunction& function() const { return *node_->fn; }
  const MonotoneOperator& child() const { return *node_->first; }
  const MonotoneOperator& second_child() const { return *node_->second; }
  /// For Yosida: the preconditioner and parameter of the regularization.
  const Preconditioner& yosida_metric() const { return *node_->metric; }

  /// Builds T^M_gamma as a registry operator (Linear when T is linear).
  static MonotoneOperator yosida(const MonotoneOperator& t, const Preconditioner& m,
                                 double gamma);
  /// DR block pieces: A, B and alpha.
  const MonotoneOperator& dr_a() const { return *node_->first; }
  const MonotoneOperator& dr_b() const { return *node_->second; }
  /// DR block as the equivalent LinearSum of the skew coupling and A x B^{-1}.
  const MonotoneOperator& dr_composite() const { return *node_->composite; }

 private:
  struct Node {
    Kind kind = Kind::Zero;
    Index dim = 0;
    Matrix mat;
    Vector vec;
    double scalar = 0.0;
    std::optional<ConvexFunction> fn;
    std::shared_ptr<const MonotoneOperator> first;
    std::shared_ptr<const MonotoneOperator> second;
    std::shared_ptr<const MonotoneOperator> composite;  // DrBlock: equivalent LinearSum form
    std::shared_ptr<const Preconditioner> metric;
  };
  explicit MonotoneOperator(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  friend MonotoneOperator make_dr_block_operator(const MonotoneOperator&, const MonotoneOperator&,
                                                 double);

  std::shared_ptr<const Node> node_;
};

/// Block operator and degenerate preconditioner of the Douglas-Rachford lifting.
struct DrBlock {
  MonotoneOperator op;
  Preconditioner metric;
};

MonotoneOperator make_dr_block_operator(const MonotoneOperator& a, const MonotoneOperator& b,
                                        double alpha);
DrBlock make_dr_block(const MonotoneOperator& a, const MonotoneOperator& b, double alpha);

/// prox_{tau f}(v) in the Euclidean metric.
Vector standard_prox(const ConvexFunction& f, double tau, const Vector& v);
bool graph_contains(const MonotoneOperator& t, const Vector& y, const Vector& p, double tol);
/// 2 J_{gamma T}(x) - x.
Vector reflected_resolvent(const MonotoneOperator& t, double gamma, const Vector& x);

struct MonotonicityReport {
  double min_inner = 0.0;  // min over sampled pairs of <y1 - y2, p1 - p2>
  int pairs = 0;
  bool violation = false;
};

inline constexpr double kMonotonicityViolation = -1e-9;

/// Samples graph pairs (direct evaluation when single-valued, resolvent
/// otherwise) and reports the worst monotonicity product.
MonotonicityReport monotonicity_probe(const MonotoneOperator& t, int sample_count,
                                      std::uint64_t seed);

}  // namespace warpsplit
