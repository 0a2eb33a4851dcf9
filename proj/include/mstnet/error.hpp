#pragma once

#include <stdexcept>
#include <string>

namespace mstnet {

enum class ErrorKind {
  Format,
  DuplicateRecord,
  InsufficientData,
  DegenerateSeries,
  SizeLimit,
  UnderdeterminedFit,
  MissingVertex,
  Configuration,
  Io,
  Internal,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so that front ends can
/// map it to a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mstnet
