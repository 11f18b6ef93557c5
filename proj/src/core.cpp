#include "tfconc/core.hpp"

#include <cmath>

namespace tfconc {

bool PhasePoint::finite() const { return std::isfinite(x) && std::isfinite(w); }

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::TailTooLarge: return "TailTooLarge";
    case ErrorKind::BasisTooSmall: return "BasisTooSmall";
    case ErrorKind::GridTooNarrow: return "GridTooNarrow";
    case ErrorKind::NonFiniteMeasure: return "NonFiniteMeasure";
    case ErrorKind::OrderTooLow: return "OrderTooLow";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::BadExponent: return "BadExponent";
    case ErrorKind::NotConverged: return "NotConverged";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace tfconc
