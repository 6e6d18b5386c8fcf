#include "fixtures.hpp"

#include "warpsplit/errors.hpp"
#include "warpsplit/oracles.hpp"
#include "warpsplit/splitting.hpp"

#include <cmath>

using namespace warpsplit;
using namespace testing;

TEST_CASE("prox oracle examples") {
  const auto z = prox_oracle(ConvexFunction::zero(2), Preconditioner::identity(2), 1.0,
                             vec({0.3, -1.7}));
  check_close(z.argmin, vec({0.3, -1.7}), 1e-12);
  const auto l1 = prox_oracle(ConvexFunction::l1(2, 1), Preconditioner::identity(2), 1.0,
                              vec({3, -0.5}));
  check_close(l1.argmin, vec({2, 0}), 1e-6);
  const auto q = prox_oracle(ConvexFunction::quadratic(diag({1, 3}), Vector::Zero(2)),
                             Preconditioner::diagonal(vec({2, 1})), 1.0, vec({1, 1}));
  check_close(q.argmin, vec({2.0 / 3, 0.25}), 1e-6);
}

TEST_CASE("prox oracle in one dimension and with constraints") {
  OracleConfig cfg;
  cfg.grid_radius = 5;
  const auto r = prox_oracle(ConvexFunction::box(vec({0}), vec({INFINITY})),
                             Preconditioner::identity(1), 2.0, vec({-2}), cfg);
  CHECK(std::abs(r.argmin(0)) <= 1e-6);
  const auto h = prox_oracle(ConvexFunction::halfspace(vec({1, 1}), 0),
                             Preconditioner(mat(2, 2, {2, 0.5, 0.5, 1})), 1.0, vec({1, 2}), cfg);
  const Vector minv_a = Preconditioner(mat(2, 2, {2, 0.5, 0.5, 1})).inverse_apply(vec({1, 1}));
  const Vector kkt = vec({1, 2}) - 3.0 / minv_a.sum() * minv_a;
  check_close(h.argmin, kkt, 1e-6);
}

TEST_CASE("subgradient mode") {
  OracleConfig cfg;
  cfg.mode = OracleConfig::Mode::Subgradient;
  const auto q = prox_oracle(ConvexFunction::quadratic(diag({1, 3, 2}), Vector::Zero(3)),
                             Preconditioner::diagonal(vec({2, 1, 1})), 1.0, vec({1, 1, 3}), cfg);
  check_close(q.argmin, vec({2.0 / 3, 0.25, 1.0}), 1e-4);
  const auto l1 = prox_oracle(ConvexFunction::l1(3, 1), Preconditioner::identity(3), 1.0,
                              vec({3, -0.5, -2}), cfg);
  check_close(l1.argmin, vec({2, 0, -1}), 1e-4);
  CHECK_THROWS_AS(prox_oracle(ConvexFunction::l1(3, 1), Preconditioner::identity(3), 1.0,
                              vec({3, -0.5, -2}), OracleConfig{.mode = OracleConfig::Mode::Grid}),
                  InvalidArgument);
}

TEST_CASE("grid too small") {
  OracleConfig cfg;
  cfg.grid_radius = 1;
  cfg.center = vec({0, 0});
  CHECK_THROWS_AS(prox_oracle(ConvexFunction::zero(2), Preconditioner::identity(2), 1.0,
                              vec({5, 0}), cfg),
                  GridTooSmall);
}

TEST_CASE("refinement moves the minimizer by at most one cell") {
  OracleConfig cfg;
  cfg.refine_rounds = 2;
  const auto f = ConvexFunction::l1(2, 0.7);
  const Preconditioner m(mat(2, 2, {2, 0.5, 0.5, 1}));
  const auto coarse = prox_oracle(f, m, 1.0, vec({1.3, -2.1}), cfg);
  cfg.refine_rounds = 3;
  const auto fine = prox_oracle(f, m, 1.0, vec({1.3, -2.1}), cfg);
  CHECK((coarse.argmin - fine.argmin).cwiseAbs().maxCoeff() <= coarse.cell);
}

TEST_CASE("phi oracle") {
  OracleConfig cfg;
  cfg.grid_radius = 5;
  const auto z = phi_argmin_oracle(ConvexFunction::zero(1), ConvexFunction::zero(1),
                                   Preconditioner::identity(1), 1.0, cfg);
  CHECK(z.x(0) == 0.0);
  CHECK(z.y(0) == 0.0);
  const SplittingProblem zp(MonotoneOperator::zero(1), MonotoneOperator::zero(1),
                            Preconditioner::identity(1), 1.0);
  CHECK(classify_point(zp, z.x, z.y).residual_S <= 1e-8);

  const auto q = phi_argmin_oracle(
      ConvexFunction::shifted_quadratic(Matrix::Identity(1, 1), vec({0})),
      ConvexFunction::shifted_quadratic(Matrix::Identity(1, 1), vec({3})),
      Preconditioner::identity(1), 1.0, cfg);
  CHECK(std::abs(q.x(0) - 1) <= 1e-6);
  CHECK(std::abs(q.y(0) - 2) <= 1e-6);
}

TEST_CASE("phi oracle matches the splitting limit") {
  OracleConfig cfg;
  cfg.grid_radius = 4;
  const auto f = ConvexFunction::l1(2, 1.0);
  const auto g = ConvexFunction::shifted_quadratic(Matrix::Identity(2, 2), vec({2.5, -0.4}));
  const Preconditioner m = Preconditioner::diagonal(vec({2, 1}));
  const auto o = phi_argmin_oracle(f, g, m, 1.0, cfg);
  const SplittingProblem p(MonotoneOperator::subdifferential(f),
                           MonotoneOperator::subdifferential(g), m, 1.0,
                           WarpedOptions{1e-14, 100'000});
  BackwardBackwardOptions bo;
  bo.tol = 1e-14;
  const auto r = backward_backward(p, Vector::Zero(2), bo);
  REQUIRE(r.log.status == RunStatus::Converged);
  check_close(o.x, r.certificate->x_bar, 1e-5);
  check_close(o.y, r.certificate->y_bar, 1e-5);
}
