#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mindisk {

// Bad domains, grids, scales, malformed inputs. CLI maps this to the usage exit code.
struct InvalidInputError : std::invalid_argument {
  explicit InvalidInputError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A mathematical precondition of an operation is violated by otherwise
// well-formed data (curvature too small, surface not a disk, point off the
// surface, ...). CLI maps this to the hypothesis-violation exit code.
struct HypothesisError : std::runtime_error {
  HypothesisError(std::string code_, const std::string& msg)
      : std::runtime_error(msg), code(std::move(code_)) {}
  std::string code;
};

// Iteration failed to converge. Carries whatever residual history exists.
struct NumericError : std::runtime_error {
  NumericError(const std::string& msg, std::vector<double> history_ = {}, int iterations_ = 0)
      : std::runtime_error(msg), history(std::move(history_)), iterations(iterations_) {}
  std::vector<double> history;
  int iterations = 0;
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mindisk
