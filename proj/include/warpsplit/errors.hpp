#pragma once

#include <stdexcept>
#include <string>

namespace warpsplit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A preconditioner or operator failed its admission checks.
class AdmissionError : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  SingularSystem(const std::string& what, double rcond)
      : Error(what + " (reciprocal condition estimate " + std::to_string(rcond) + ")"),
        rcond_(rcond) {}

  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

/// An M^{-1}-dependent quantity was requested on a degenerate preconditioner,
/// or no closed form exists for the degenerate case.
class DegenerateUnsupported : public Error {
 public:
  using Error::Error;
};

class NotImplemented : public Error {
 public:
  using Error::Error;
};

class InnerSolveDiverged : public Error {
 public:
  InnerSolveDiverged(const std::string& what, int iterations, double residual)
      : Error(what + " after " + std::to_string(iterations) +
              " iterations (residual " + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

class StepTooLarge : public Error {
 public:
  StepTooLarge(double step, double cap)
      : Error("step " + std::to_string(step) + " exceeds stability cap " + std::to_string(cap)),
        step_(step),
        cap_(cap) {}

  double step() const noexcept { return step_; }
  double cap() const noexcept { return cap_; }

 private:
  double step_;
  double cap_;
};

class GridTooSmall : public Error {
 public:
  using Error::Error;
};

class PathStalled : public Error {
 public:
  PathStalled(double lambda, double residual)
      : Error("regularization path stalled at lambda=" + std::to_string(lambda) +
              " (fixed-point residual " + std::to_string(residual) + ")"),
        lambda_(lambda),
        residual_(residual) {}

  double lambda() const noexcept { return lambda_; }
  double residual() const noexcept { return residual_; }

 private:
  double lambda_;
  double residual_;
};

}  // namespace warpsplit
