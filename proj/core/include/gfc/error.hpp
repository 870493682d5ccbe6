#ifndef GFC_ERROR_HPP
#define GFC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace gfc {

enum class ErrorCode {
  kDimensionTooSmall,
  kShapeMismatch,
  kNonFinite,
  kInvalidPad,
  kInvalidArgument,
  kChannelMismatch,
  kIndivisibleChannels,
  kLayout,
  kIo,
  kFileNotFound,
  kBadMagic,
  kUnknownDtype,
  kTruncatedPayload,
  kMalformedHeader,
  kUnsupportedFormat,
  kNumerical,
};

std::string_view ToString(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ToString(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gfc

#endif  // GFC_ERROR_HPP
