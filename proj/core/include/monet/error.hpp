#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace monet {

enum class ErrorCode {
  kParse,
  kInvalidCut,
  kSizeCap,
  kNotConnected,
  kDegenerateGraph,
  kInvalidParameter,
  kNumericalFailure,
  kWalkLimit,
  kDomain,
  kInvalidKernel,
  kIo,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// front-ends can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace monet
