#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace edmyield {

enum class ErrorCode {
  InvalidInput,
  ParseError,
  NonFiniteEntry,
  AsymmetricMatrix,
  NonzeroDiagonal,
  NegativeEntry,
  NotEuclidean,
  NoGaleSpace,
  DegenerateConfiguration,
  InvalidIndex,
  PreconditionViolated,
  DegenerateGaleRows,
  InternalInconsistency,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by decompose() when -1/2 J D J has an eigenvalue below the PSD floor.
class NotEuclideanError : public Error {
 public:
  NotEuclideanError(const std::string& message, double min_eigenvalue)
      : Error(ErrorCode::NotEuclidean, message), min_eigenvalue_(min_eigenvalue) {}

  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

}  // namespace edmyield
