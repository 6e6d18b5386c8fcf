#include "warpsplit/errors.hpp"
#include "warpsplit/flows.hpp"
#include "warpsplit/oracles.hpp"
#include "warpsplit/splitting.hpp"
#include "warpsplit/warped.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace warpsplit;

namespace {

py::dict log_dict(const IterationLog& log) {
  py::dict d;
  d["status"] = to_string(log.status);
  d["iterations"] = log.iterations;
  d["diverging_at"] = log.diverging_at ? py::cast(*log.diverging_at) : py::none();
  d["max_x_norm"] = log.max_x_norm;
  d["last_x"] = log.last_x;
  d["last_y"] = log.last_y;
  std::vector<double> step, diff;
  for (const auto& r : log.records) {
    step.push_back(r.step_norm_m);
    diff.push_back(r.diff_norm_m);
  }
  d["step_norm_m"] = step;
  d["diff_norm_m"] = diff;
  return d;
}

py::dict trajectory_dict(const Trajectory& t) {
  py::dict d;
  d["times"] = t.times;
  d["states"] = t.states;
  d["speed_sq"] = t.speed_sq;
  d["lyapunov"] = t.lyapunov;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Warped resolvents, backward-backward splitting and Yosida flows";

  py::register_exception<Error>(m, "Error");
  py::register_exception<GridTooSmall>(m, "GridTooSmall");
  py::register_exception<PathStalled>(m, "PathStalled");

  py::class_<Preconditioner>(m, "Preconditioner")
      .def(py::init<Matrix>())
      .def_static("identity", &Preconditioner::identity)
      .def_static("scalar", &Preconditioner::scalar)
      .def_static("diagonal", &Preconditioner::diagonal)
      .def_static("dr_block", &Preconditioner::dr_block)
      .def_property_readonly("dim", &Preconditioner::dim)
      .def_property_readonly("matrix", &Preconditioner::matrix)
      .def_property_readonly("positive_definite", &Preconditioner::positive_definite)
      .def_property_readonly("alpha_min", &Preconditioner::alpha_min)
      .def_property_readonly("beta_max", &Preconditioner::beta_max)
      .def("pinv_apply", &Preconditioner::pinv_apply);

  py::class_<ConvexFunction>(m, "ConvexFunction")
      .def_static("zero", &ConvexFunction::zero)
      .def_static("quadratic", &ConvexFunction::quadratic, py::arg("q"), py::arg("b"), py::arg("c") = 0.0)
      .def_static("shifted_quadratic", &ConvexFunction::shifted_quadratic)
      .def_static("l1", &ConvexFunction::l1)
      .def_static("box", &ConvexFunction::box)
      .def_static("affine", &ConvexFunction::affine)
      .def_static("halfspace", &ConvexFunction::halfspace)
      .def_static("hyperbola_epigraph", &ConvexFunction::hyperbola_epigraph)
      .def_property_readonly("dim", &ConvexFunction::dim)
      .def_property_readonly("name", &ConvexFunction::name)
      .def("value", &ConvexFunction::value)
      .def("prox", &ConvexFunction::prox);

  py::class_<MonotoneOperator>(m, "MonotoneOperator")
      .def_static("zero", &MonotoneOperator::zero)
      .def_static("linear", &MonotoneOperator::linear)
      .def_static("subdifferential", &MonotoneOperator::subdifferential)
      .def_static("normal_cone", &MonotoneOperator::normal_cone)
      .def_static("rotation", &MonotoneOperator::rotation)
      .def("inverse", &MonotoneOperator::inverse)
      .def("scaled", &MonotoneOperator::scaled)
      .def("shifted", &MonotoneOperator::shifted)
      .def("resolvent", &MonotoneOperator::resolvent)
      .def("graph_contains", &MonotoneOperator::graph_contains)
      .def_property_readonly("dim", &MonotoneOperator::dim)
      .def("__repr__", &MonotoneOperator::describe);

  m.def("make_dr_block", [](const MonotoneOperator& a, const MonotoneOperator& b, double alpha) {
    const DrBlock blk = make_dr_block(a, b, alpha);
    return py::make_tuple(blk.op, blk.metric);
  });

  py::class_<WarpedEvaluator>(m, "WarpedEvaluator")
      .def(py::init([](MonotoneOperator op, Preconditioner metric, double gamma, double inner_tol,
                       int inner_max_iter) {
             return WarpedEvaluator(std::move(op), std::move(metric), gamma,
                                    WarpedOptions{inner_tol, inner_max_iter});
           }),
           py::arg("op"), py::arg("metric"), py::arg("gamma") = 1.0, py::arg("inner_tol") = 1e-10,
           py::arg("inner_max_iter") = 10'000)
      .def_property_readonly("route", [](const WarpedEvaluator& w) { return to_string(w.route()); })
      .def("resolvent", &WarpedEvaluator::resolvent)
      .def("yosida", &WarpedEvaluator::yosida);

  py::class_<SplittingProblem>(m, "SplittingProblem")
      .def(py::init([](MonotoneOperator a, MonotoneOperator b, Preconditioner metric, double lambda) {
             return SplittingProblem(std::move(a), std::move(b), std::move(metric), lambda);
           }),
           py::arg("a"), py::arg("b"), py::arg("metric"), py::arg("lam") = 1.0);

  m.def(
      "backward_backward",
      [](const SplittingProblem& p, const Vector& x0, double tol, int max_iter) {
        BackwardBackwardOptions o;
        o.tol = tol;
        o.max_iter = max_iter;
        const auto r = backward_backward(p, x0, o);
        py::dict d = log_dict(r.log);
        if (r.certificate) {
          d["x_bar"] = r.certificate->x_bar;
          d["y_bar"] = r.certificate->y_bar;
          d["u_star"] = r.certificate->u_star;
          d["residual_S"] = r.certificate->residual_S;
        }
        return d;
      },
      py::arg("problem"), py::arg("x0"), py::arg("tol") = 1e-12, py::arg("max_iter") = 10'000);

  m.def("dual_solution", [](const SplittingProblem& p) {
    const DualPair d = dual_solution(p);
    return py::make_tuple(d.u_star, d.v_star);
  });

  m.def(
      "regularization_path",
      [](const SplittingProblem& p, const std::vector<double>& schedule, const Vector& x0) {
        const PathLog log = regularization_path(p, schedule, x0);
        py::list out;
        for (const auto& pt : log.points) {
          py::dict d;
          d["lambda"] = pt.lambda;
          d["x"] = pt.x;
          d["y"] = pt.y;
          out.append(d);
        }
        return out;
      },
      py::arg("problem"), py::arg("schedule"), py::arg("x0"));
  m.def("halving_schedule", &halving_schedule, py::arg("lambda0"), py::arg("halvings") = 20);

  m.def(
      "yosida_flow",
      [](const WarpedEvaluator& w, const Vector& u0, double step, double t_end, bool rk4) {
        FlowOptions o;
        o.method = rk4 ? Integrator::RK4 : Integrator::Euler;
        return trajectory_dict(integrate_yosida_flow(w, u0, step, t_end, o));
      },
      py::arg("evaluator"), py::arg("u0"), py::arg("step"), py::arg("t_end"), py::arg("rk4") = true);
  m.def(
      "dr_flow",
      [](const MonotoneOperator& a, const MonotoneOperator& b, double alpha, const Vector& z0,
         double step, double t_end) {
        return trajectory_dict(integrate_dr_flow(a, b, alpha, z0, step, t_end));
      },
      py::arg("a"), py::arg("b"), py::arg("alpha"), py::arg("z0"), py::arg("step"), py::arg("t_end"));

  m.def(
      "prox_oracle",
      [](const ConvexFunction& f, const Preconditioner& metric, double lambda, const Vector& v) {
        return prox_oracle(f, metric, lambda, v).argmin;
      },
      py::arg("f"), py::arg("metric"), py::arg("lam"), py::arg("v"));
}
