#pragma once

#include <stdexcept>
#include <string>

namespace isomon {

/// Base of every error raised by the library. `exit_code()` maps the error
/// onto the CLI convention: 2 for bad input, 3 for a numerical abort.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 3; }
};

class InputError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

// series-algebra
class WindowError : public Error { using Error::Error; };
class SingularLeadingError : public Error { using Error::Error; };
class OutOfWindowError : public Error { using Error::Error; };

// lax-model
class PoleEvaluationError : public Error { using Error::Error; };

// spectral-invariants / formal-solutions
class ResonanceError : public Error { using Error::Error; };

// poisson-engine
class CoincidentPointError : public Error { using Error::Error; };
class GradientError : public Error { using Error::Error; };

// deformation-flows
class NonTangentError : public Error { using Error::Error; };
class PathAbortError : public Error { using Error::Error; };
class StiffnessError : public Error { using Error::Error; };
class PainlevePoleError : public Error {
 public:
  PainlevePoleError(const std::string& what, double t_pole) : Error(what), t_pole_(t_pole) {}
  double t_pole() const { return t_pole_; }

 private:
  double t_pole_;
};
class ChartError : public InputError { using InputError::InputError; };

// monodromy-tau
class ClearanceError : public Error { using Error::Error; };

}  // namespace isomon
