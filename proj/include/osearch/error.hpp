#pragma once

#include <stdexcept>
#include <string>

namespace osearch {

enum class ErrorKind {
  invalid_input,
  invalid_parameter,
  out_of_range,
  contract_violation,
  no_witness,
  non_threshold_policy,
  guarantee_unavailable,
  internal,
  parse,
  domain,
  empty_series,
  insufficient_data,
  io,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for every library failure; callers switch on kind().
class SearchError : public std::runtime_error {
 public:
  SearchError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace osearch
