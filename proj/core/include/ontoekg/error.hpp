#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ontoekg {

enum class ErrorCode {
  InvalidArgument,
  InvalidLabel,
  InvalidIri,
  MissingPath,
  ConfigError,
  SchemaFailure,
  BackendError,
  AuthError,
  RateLimited,
  CassetteMiss,
  NetworkForbidden,
  EmbeddingFailure,
  SyntaxError,
  UnresolvedReference,
  ValidationFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for everything the library reports. The code is stable
/// and is what callers (and the CLI exit-status mapping) switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ontoekg
