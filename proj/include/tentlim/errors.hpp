#pragma once

#include <stdexcept>
#include <string>

namespace tentlim {

/// Stable error codes; the CLI prints them verbatim on stderr.
enum class ErrorCode {
  domain,
  precision_exhausted,
  insufficient_depth,
  inadmissible_prefix,
  prefix_unresolvable,
  search_exhausted,
  no_valid_depth,
  field_mismatch,
  parse,
};

inline const char* code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain: return "E_DOMAIN";
    case ErrorCode::precision_exhausted: return "E_PRECISION";
    case ErrorCode::insufficient_depth: return "E_DEPTH";
    case ErrorCode::inadmissible_prefix: return "E_INADMISSIBLE";
    case ErrorCode::prefix_unresolvable: return "E_UNRESOLVABLE";
    case ErrorCode::search_exhausted: return "E_SEARCH_EXHAUSTED";
    case ErrorCode::no_valid_depth: return "E_NO_VALID_DEPTH";
    case ErrorCode::field_mismatch: return "E_FIELD";
    case ErrorCode::parse: return "E_PARSE";
  }
  return "E_UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::domain, what) {}
};

class PrecisionError : public Error {
 public:
  explicit PrecisionError(const std::string& what) : Error(ErrorCode::precision_exhausted, what) {}
};

class DepthError : public Error {
 public:
  explicit DepthError(const std::string& what) : Error(ErrorCode::insufficient_depth, what) {}
};

}  // namespace tentlim
