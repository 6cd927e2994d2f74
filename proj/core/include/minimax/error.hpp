#pragma once

#include <stdexcept>
#include <string>

namespace minimax {

enum class ErrorKind {
  kParameter,    // nonpositive step quantity, missing solver input
  kFeasibility,  // point outside its feasible set
  kShape,        // dimension mismatch, non-symmetric matrix
  kNumeric,      // non-finite oracle output
  kStructure,    // problem lacks a structure flag the solver needs
  kUnbounded,    // solver needs a compact Y
  kIo,
  kUsage,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace minimax
