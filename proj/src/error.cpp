#include "osearch/error.hpp"

namespace osearch {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::invalid_parameter: return "invalid parameter";
    case ErrorKind::out_of_range: return "out of range";
    case ErrorKind::contract_violation: return "contract violation";
    case ErrorKind::no_witness: return "no witness";
    case ErrorKind::non_threshold_policy: return "non-threshold policy";
    case ErrorKind::guarantee_unavailable: return "guarantee unavailable";
    case ErrorKind::internal: return "internal error";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::empty_series: return "empty series";
    case ErrorKind::insufficient_data: return "insufficient data";
    case ErrorKind::io: return "i/o error";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) {
  throw SearchError(kind, std::string(to_string(kind)) + ": " + what);
}

}  // namespace osearch
