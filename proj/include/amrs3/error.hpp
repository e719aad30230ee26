#pragma once

#include <stdexcept>
#include <string>

namespace amrs3 {

/// Failure categories shared by every module. The numeric values are the
/// status codes exposed through the C API, so they must stay stable.
enum class ErrorCode : int {
  invalid_argument = 1,
  parse = 2,
  malformed_graph = 3,
  unknown_variable = 4,
  missing_artifact = 5,
  io = 6,
  format = 7,
  duplicate_id = 8,
  authentication = 9,
  network = 10,
  http = 11,
  malformed_response = 12,
  empty_input = 13,
  internal = 14,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace amrs3
