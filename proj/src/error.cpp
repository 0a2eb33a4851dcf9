#include "mstnet/error.hpp"

namespace mstnet {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Format: return "format error";
    case ErrorKind::DuplicateRecord: return "duplicate record";
    case ErrorKind::InsufficientData: return "insufficient data";
    case ErrorKind::DegenerateSeries: return "degenerate series";
    case ErrorKind::SizeLimit: return "size limit exceeded";
    case ErrorKind::UnderdeterminedFit: return "underdetermined fit";
    case ErrorKind::MissingVertex: return "missing vertex";
    case ErrorKind::Configuration: return "configuration error";
    case ErrorKind::Io: return "I/O error";
    case ErrorKind::Internal: return "internal error";
  }
  return "unknown error";
}

}  // namespace mstnet
