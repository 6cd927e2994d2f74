#include "minimax/error.hpp"

namespace minimax {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParameter: return "parameter";
    case ErrorKind::kFeasibility: return "feasibility";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kNumeric: return "numeric";
    case ErrorKind::kStructure: return "structure";
    case ErrorKind::kUnbounded: return "unbounded";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kUsage: return "usage";
  }
  return "unknown";
}

}  // namespace minimax
