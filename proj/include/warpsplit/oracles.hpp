#pragma once

#include "warpsplit/functions.hpp"
#include "warpsplit/linalg.hpp"

#include <optional>

namespace warpsplit {

/// Brute-force reference minimizers. They read only the parameters of the
/// function specs and evaluate objectives with their own code, so they stay
/// independent of the proximal machinery they certify.
struct OracleConfig {
  double grid_radius = 10.0;
  std::optional<Vector> center;  // grid center (origin by default)
  int points_1d = 2001;
  int points_2d = 401;
  int points_4d = 41;
  int refine_rounds = 3;
  int refine_rounds_4d = 12;
  int subgradient_steps = 200'000;
  enum class Mode { Auto, Grid, Subgradient } mode = Mode::Auto;
};

struct OracleResult {
  Vector argmin;
  double value = 0.0;
  double cell = 0.0;  // grid spacing of the final round (0 in subgradient mode)
  long evaluations = 0;
};

/// argmin_z f(z) + 1/(2 lambda) ||z - v||^2_M. Grid mode needs dim <= 2;
/// subgradient mode needs a positive definite M. Throws GridTooSmall when the
/// best grid point lies on the grid boundary.
OracleResult prox_oracle(const ConvexFunction& f, const Preconditioner& m, double lambda,
                         const Vector& v, const OracleConfig& cfg = {});

struct PhiOracleResult {
  Vector x;
  Vector y;
  double value = 0.0;
  double cell = 0.0;
  long evaluations = 0;
};

/// argmin_{x,y} f(x) + g(y) + 1/(2 lambda) ||x - y||^2_M over 1-D or 2-D blocks.
PhiOracleResult phi_argmin_oracle(const ConvexFunction& f, const ConvexFunction& g,
                                  const Preconditioner& m, double lambda,
                                  const OracleConfig& cfg = {});

/// Independent evaluation of f (infinity outside the domain).
double oracle_value(const ConvexFunction& f, const Vector& z);

}  // namespace warpsplit
