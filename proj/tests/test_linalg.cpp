#include "test_support.hpp"

#include "warpsplit/errors.hpp"
#include "warpsplit/linalg.hpp"

using namespace warpsplit;
using namespace testing;

TEST_CASE("m_inner on identity, diagonal and degenerate metrics") {
  CHECK(m_inner(Preconditioner::identity(2), vec({1, 2}), vec({3, 4})) == doctest::Approx(11));
  CHECK(m_inner(Preconditioner::diagonal(vec({2, 1})), vec({1, 0}), vec({1, 0})) ==
        doctest::Approx(2));
  const Preconditioner dr(mat(2, 2, {1, -1, -1, 1}));
  CHECK(dr.tier() == Tier::Degenerate);
  CHECK(m_inner(dr, vec({1, 1}), vec({0.3, -7})) == doctest::Approx(0).epsilon(1e-15));
  CHECK_THROWS_AS(m_inner(dr, vec({1, 1}), vec({1, 2, 3})), DimensionMismatch);
}

TEST_CASE("admission rejects asymmetric and indefinite matrices") {
  CHECK_THROWS_AS(Preconditioner(mat(2, 2, {1, 0.5, 0, 1})), AdmissionError);
  CHECK_THROWS_AS(Preconditioner(diag({1, -1})), AdmissionError);
  CHECK_THROWS_AS(Preconditioner(Matrix(2, 3)), AdmissionError);
  const Preconditioner m(diag({4, 1}));
  CHECK(m.tier() == Tier::PositiveDefinite);
  CHECK(m.alpha_min() == doctest::Approx(1));
  CHECK(m.beta_max() == doctest::Approx(4));
  CHECK(Preconditioner::scalar(3, 2.5).scalar_multiple().value() == 2.5);
  CHECK_FALSE(m.scalar_multiple().has_value());
  CHECK(m.is_diagonal());
}

TEST_CASE("tier threshold sits at 1e-10 relative") {
  CHECK(Preconditioner(diag({1, 1e-9})).tier() == Tier::PositiveDefinite);
  CHECK(Preconditioner(diag({1, 1e-11})).tier() == Tier::Degenerate);
  CHECK(Preconditioner::dr_block(3).tier() == Tier::Degenerate);
}

TEST_CASE("solve_shifted") {
  CHECK((solve_shifted(Preconditioner::identity(2), Matrix::Zero(2, 2), 1.0, vec({5, -3})) -
         vec({5, -3})).norm() < 1e-14);
  const Vector y = solve_shifted(Preconditioner::diagonal(vec({2, 1})), diag({1, 3}), 1.0,
                                 vec({2, 1}));
  check_close(y, vec({2.0 / 3.0, 0.25}), 1e-14);
  const Preconditioner dr(mat(2, 2, {1, -1, -1, 1}));
  CHECK_THROWS_AS(solve_shifted(dr, Matrix::Zero(2, 2), 1.0, vec({1, 0})), SingularSystem);
  try {
    solve_shifted(dr, Matrix::Zero(2, 2), 1.0, vec({1, 0}));
  } catch (const SingularSystem& e) {
    CHECK(e.rcond() <= ShiftedSolver::kMinRcond);
  }
  CHECK_THROWS_AS(solve_shifted(dr, Matrix::Zero(2, 2), 0.0, vec({1, 0})), InvalidArgument);
}

TEST_CASE("pinv_apply") {
  check_close(pinv_apply(Preconditioner::identity(2), vec({1, -2})), vec({1, -2}), 1e-15);
  check_close(pinv_apply(Preconditioner::diagonal(vec({2, 1})), vec({2, 3})), vec({1, 3}), 1e-15);
  const Preconditioner dr(mat(2, 2, {1, -1, -1, 1}));
  check_close(pinv_apply(dr, vec({1, -1})), vec({0.5, -0.5}), 1e-14);
  CHECK_THROWS_AS(dr.inverse_apply(vec({1, -1})), DegenerateUnsupported);
}

TEST_CASE("sampled metric properties") {
  std::mt19937_64 rng(7);
  const Matrix a = Matrix::Random(4, 4);
  const Preconditioner pd(Matrix(a * a.transpose() + 0.1 * Matrix::Identity(4, 4)));
  const Preconditioner dr = Preconditioner::dr_block(2);
  for (int k = 0; k < 200; ++k) {
    const Vector x = random_vector(rng, 4);
    const Vector y = random_vector(rng, 4);
    CHECK(pd.inner(x, y) == doctest::Approx(pd.inner(y, x)).epsilon(1e-12));
    const double nx = pd.norm_sq(x);
    CHECK(nx >= pd.alpha_min() * x.squaredNorm() * (1 - 1e-9));
    CHECK(nx <= pd.beta_max() * x.squaredNorm() * (1 + 1e-9));
    CHECK(dr.norm_sq(x) >= 0.0);
    // Penrose identity M+ M M+ = M+
    const Vector p = dr.pinv_apply(x);
    CHECK((dr.pinv_apply(dr.apply(p)) - p).norm() <= 1e-9 * (1 + p.norm()));
    // shifted solve residual
    const ShiftedSolver s(pd.matrix(), Matrix::Identity(4, 4), 0.7);
    const Vector z = s.solve(x);
    CHECK((s.system() * z - x).norm() <= 1e-10 * (1 + x.norm()));
  }
}
