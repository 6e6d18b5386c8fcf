#include "test_support.hpp"

#include "warpsplit/errors.hpp"
#include "warpsplit/functions.hpp"

#include <cmath>

using namespace warpsplit;
using namespace testing;

TEST_CASE("prox closed forms") {
  check_close(ConvexFunction::l1(2, 1.0).prox(1.0, vec({3, -0.5})), vec({2, 0}), 1e-15);
  check_close(ConvexFunction::zero(2).prox(4.0, vec({3, -0.5})), vec({3, -0.5}), 0.0);
  check_close(ConvexFunction::quadratic(diag({1, 3}), Vector::Zero(2)).prox(1.0, vec({2, 1})),
              vec({1, 0.25}), 1e-14);
  check_close(ConvexFunction::box(vec({0, 0}), vec({1, 1})).prox(3.0, vec({-1, 0.5})),
              vec({0, 0.5}), 0.0);
  CHECK_THROWS_AS(ConvexFunction::l1(1, 1.0).prox(0.0, vec({1})), InvalidArgument);
}

TEST_CASE("admission of function parameters") {
  CHECK_THROWS(ConvexFunction::box(vec({1}), vec({0})));
  CHECK_THROWS(ConvexFunction::quadratic(diag({-1, 1}), Vector::Zero(2)));
  CHECK_THROWS(ConvexFunction::l1(2, -1.0));
}

TEST_CASE("values and domains") {
  const auto f = ConvexFunction::shifted_quadratic(Matrix::Identity(1, 1), vec({1}));
  CHECK(f.value(vec({3})) == doctest::Approx(2.0));
  CHECK(f.value(vec({1})) == doctest::Approx(0.0).epsilon(1e-15));
  const auto h = ConvexFunction::halfspace(vec({0, 1}), 2.0);
  CHECK(h.value(vec({5, 1})) == 0.0);
  CHECK(std::isinf(h.value(vec({0, 3}))));
  CHECK(ConvexFunction::hyperbola_epigraph().in_domain(vec({2, 0.5})));
  CHECK_FALSE(ConvexFunction::hyperbola_epigraph().in_domain(vec({-1, 5})));
}

TEST_CASE("projections") {
  const auto aff = ConvexFunction::affine(mat(1, 2, {1, 1}), vec({1}));
  check_close(aff.project_domain(vec({1, 1})), vec({0.5, 0.5}), 1e-14);
  const auto h = ConvexFunction::halfspace(vec({0, 1}), 2.0);
  check_close(h.project_domain(vec({3, 5})), vec({3, 2}), 1e-15);
  // a point above the branch is inside, so it is fixed
  check_close(project_hyperbola_epigraph(vec({1, 2})), vec({1, 2}), 0.0);
  // the projection of the origin onto the hyperbola is (1, 1) by symmetry
  check_close(project_hyperbola_epigraph(vec({0, 0})), vec({1, 1}), 1e-10);
  // optimality: v - P v is normal to the boundary at P v
  for (const Vector& v : {vec({3, -2}), vec({-4, -1}), vec({0.1, 0.05}), vec({10, 0})}) {
    const Vector p = project_hyperbola_epigraph(v);
    CHECK(p(0) * p(1) == doctest::Approx(1.0).epsilon(1e-10));
    const Vector r = v - p;
    const Vector tangent = vec({1, -1 / (p(0) * p(0))});
    CHECK(std::abs(r.dot(tangent)) <= 1e-9 * (1 + r.norm()));
    CHECK(r(1) <= 0.0);
  }
}

TEST_CASE("subgradient distance") {
  const auto l1 = ConvexFunction::l1(2, 1.0);
  CHECK(l1.subgradient_distance(vec({0, 2}), vec({0.3, 1}), 1e-12) <= 1e-12);
  CHECK(l1.subgradient_distance(vec({0, 2}), vec({0.3, 0.5}), 1e-12) == doctest::Approx(0.5));
  const auto ray = ConvexFunction::box(vec({0}), vec({INFINITY}));
  CHECK(ray.subgradient_distance(vec({0}), vec({-1}), 1e-12) == 0.0);
  CHECK(ray.subgradient_distance(vec({1}), vec({1}), 1e-12) == doctest::Approx(1));
  CHECK(std::isinf(ray.subgradient_distance(vec({-1}), vec({0}), 1e-12)));
}
