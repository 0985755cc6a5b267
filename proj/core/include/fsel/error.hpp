#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fsel {

enum class ErrorCode {
  Io,
  Parse,
  MissingColumn,
  InvalidArgument,
  WidthMismatch,
  EmptyMask,
  MeasureInapplicable,
  KindMismatch,
  DegenerateTarget,
  NoHit,
  OutOfRange,
  Config,
};

std::string_view toString(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can report it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fsel
