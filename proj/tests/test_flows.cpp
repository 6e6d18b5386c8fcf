#include "fixtures.hpp"

#include "warpsplit/errors.hpp"
#include "warpsplit/flows.hpp"

#include <cmath>

using namespace warpsplit;
using namespace testing;
using Op = MonotoneOperator;

namespace {

Vector rotation_closed_form(double t) {
  return std::exp(-t / 2) * vec({std::cos(t / 2), -std::sin(t / 2)});
}

}  // namespace

TEST_CASE("zero operator keeps the state") {
  const WarpedEvaluator w(Op::zero(2), Preconditioner::identity(2), 1.0);
  const auto tr = integrate_yosida_flow(w, vec({1, 2}), 0.1, 1.0);
  CHECK(tr.states.size() == 11);
  for (const auto& s : tr.states) check_close(s, vec({1, 2}), 0);
  CHECK(tr.times.back() == 1.0);
}

TEST_CASE("identity operator decays at rate one half") {
  const WarpedEvaluator w(Op::linear(Matrix::Identity(2, 2)), Preconditioner::identity(2), 1.0);
  const auto tr = integrate_yosida_flow(w, vec({1, -3}), 0.01, 4.0);
  check_close(tr.states.back(), std::exp(-2.0) * vec({1, -3}), 1e-8);
}

TEST_CASE("rotation: regularized decay against the undamped orbit") {
  const WarpedEvaluator w(Op::rotation(), Preconditioner::identity(2), 1.0);
  FlowOptions o;
  o.u_star = Vector::Zero(2);
  const auto tr = integrate_yosida_flow(w, vec({1, 0}), 0.01, 10.0, o);
  check_close(tr.states.back(), rotation_closed_form(10.0), 1e-6);
  for (std::size_t k = 0; k < tr.states.size(); k += 100) {
    CHECK(tr.lyapunov[k] == doctest::Approx(0.5 * std::exp(-tr.times[k])).epsilon(1e-6));
  }
  const auto direct = integrate_direct_flow(Op::rotation(), vec({1, 0}), 0.01, 10.0);
  for (const auto& s : direct.states) CHECK(std::abs(s.norm() - 1.0) <= 1e-6);
}

TEST_CASE("RK4 step halving") {
  const WarpedEvaluator w(Op::rotation(), Preconditioner::identity(2), 1.0);
  const Vector exact = rotation_closed_form(10.0);
  const double e1 = (integrate_yosida_flow(w, vec({1, 0}), 0.2, 10.0).states.back() - exact).norm();
  const double e2 = (integrate_yosida_flow(w, vec({1, 0}), 0.1, 10.0).states.back() - exact).norm();
  CHECK(e1 / e2 >= 12.0);
  CHECK(e1 / e2 <= 20.0);
  FlowOptions euler;
  euler.method = Integrator::Euler;
  const double f1 =
      (integrate_yosida_flow(w, vec({1, 0}), 0.2, 10.0, euler).states.back() - exact).norm();
  const double f2 =
      (integrate_yosida_flow(w, vec({1, 0}), 0.1, 10.0, euler).states.back() - exact).norm();
  CHECK(f1 / f2 == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("step cap") {
  const WarpedEvaluator w(Op::rotation(), Preconditioner::diagonal(vec({4, 1})), 2.0);
  CHECK(flow_step_cap(w) == doctest::Approx(0.5));
  CHECK_THROWS_AS(integrate_yosida_flow(w, vec({1, 0}), 0.6, 1.0), StepTooLarge);
  const auto dr = make_dr_block(Op::zero(1), Op::zero(1), 1.0);
  const WarpedEvaluator wd(dr.op, dr.metric, 1.0);
  CHECK(flow_step_cap(wd) == doctest::Approx(0.25));
  CHECK_THROWS_AS(integrate_yosida_flow(wd, vec({1, 0}), 0.3, 1.0), StepTooLarge);
}

TEST_CASE("Lyapunov report") {
  const WarpedEvaluator rot(Op::rotation(), Preconditioner::identity(2), 1.0);
  const auto tr = integrate_yosida_flow(rot, vec({1, 0}), 0.01, 10.0);
  const auto r = lyapunov_report(tr, Vector::Zero(2), rot.metric(), 1.0);
  CHECK(r.passed());
  CHECK(r.l2_sum <= r.l2_bound);
  for (std::size_t k = 1; k < r.h.size(); ++k) CHECK(r.h[k] < r.h[k - 1]);

  const auto still = integrate_yosida_flow(rot, Vector::Zero(2), 0.01, 1.0);
  const auto rs = lyapunov_report(still, Vector::Zero(2), rot.metric(), 1.0);
  CHECK(rs.passed());
  CHECK(rs.max_distance == 0.0);

  const WarpedEvaluator zero(Op::zero(2), Preconditioner::identity(2), 1.0);
  const auto tz = integrate_yosida_flow(zero, vec({3, 4}), 0.1, 1.0);
  const auto rz = lyapunov_report(tz, vec({3, 4}), zero.metric(), 1.0);
  CHECK(rz.passed());
  CHECK(rz.l2_sum == 0.0);

  // diagonal quadratic with a commuting diagonal metric
  const Preconditioner m = Preconditioner::diagonal(vec({2, 1}));
  const WarpedEvaluator q(centered_quadratic(vec({1, -1})), m, 0.5);
  const auto tq = integrate_yosida_flow(q, vec({4, 3}), 0.05, 30.0);
  CHECK(lyapunov_report(tq, vec({1, -1}), m, 0.5).passed());
  check_close(tq.states.back(), vec({1, -1}), 1e-7);
}

TEST_CASE("energy inequality depends on M commuting with T") {
  const Preconditioner m = Preconditioner::diagonal(vec({1, 0.1}));
  const WarpedEvaluator w(Op::rotation(), m, 1.0);
  const auto tr = integrate_yosida_flow(w, vec({0, 1}), 0.01, 2.0);
  CHECK_FALSE(lyapunov_report(tr, Vector::Zero(2), m, 1.0).monotone);
}

TEST_CASE("a certified zero is preserved") {
  const WarpedEvaluator w(centered_quadratic(vec({1, 2})), Preconditioner::diagonal(vec({3, 1})),
                          1.0);
  const auto tr = integrate_yosida_flow(w, vec({1, 2}), 0.1, 5.0);
  for (const auto& s : tr.states) CHECK((s - vec({1, 2})).norm() <= 1e-9);
}

TEST_CASE("DR flow") {
  const auto zr = integrate_dr_flow(Op::zero(2), Op::zero(2), 1.0, vec({1, 2}), 0.1, 1.0);
  for (const auto& s : zr.states) check_close(s, vec({1, 2}), 0);

  // quadratics centered at a and b: the fixed point z of R_B R_A solves J_A z = x_bar
  const Vector a = vec({0, 1});
  const Vector b = vec({3, -1});
  const Op qa = centered_quadratic(a);
  const Op qb = centered_quadratic(b);
  const double alpha = 1.0;
  // J_{alpha A} z = (z + alpha a) / (1 + alpha); at the fixed point J_A z = (a + b)/2
  const Vector zfix = (1 + alpha) * (a + b) / 2 - alpha * a;
  check_close(dr_reflection(qa, qb, alpha, zfix), zfix, 1e-12);
  const auto tr = integrate_dr_flow(qa, qb, alpha, vec({5, 5}), 0.05, 40.0);
  check_close(tr.states.back(), zfix, 1e-6);
  const auto fixed = integrate_dr_flow(qa, qb, alpha, zfix, 0.05, 2.0);
  for (const auto& s : fixed.states) check_close(s, zfix, 1e-12);
}

TEST_CASE("DR block reduction") {
  const auto z = dr_block_equivalence(Op::zero(2), Op::zero(2), 1.0, vec({1, 2}), vec({0, 1}),
                                      0.05, 1.0);
  CHECK(z.max_deviation == 0.0);
  const auto q = dr_block_equivalence(centered_quadratic(vec({0, 1})),
                                      centered_quadratic(vec({3, -1})), 0.8, vec({1, 2}),
                                      vec({-1, 0.5}), 0.05, 10.0);
  CHECK(q.max_deviation <= 1e-7);
  const auto r = dr_block_equivalence(Op::rotation(), centered_quadratic(vec({2, 0})), 1.0,
                                      vec({1, -1}), vec({0.5, 3}), 0.05, 10.0);
  CHECK(r.max_deviation <= 1e-7);
}
