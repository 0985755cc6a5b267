#include "fsel/error.hpp"

namespace fsel {

std::string_view toString(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Io: return "io";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::MissingColumn: return "missing-column";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::WidthMismatch: return "width-mismatch";
    case ErrorCode::EmptyMask: return "empty-mask";
    case ErrorCode::MeasureInapplicable: return "measure-inapplicable";
    case ErrorCode::KindMismatch: return "kind-mismatch";
    case ErrorCode::DegenerateTarget: return "degenerate-target";
    case ErrorCode::NoHit: return "no-hit";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::Config: return "config";
  }
  return "unknown";
}

}  // namespace fsel
