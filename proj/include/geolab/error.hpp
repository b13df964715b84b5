#pragma once

#include <stdexcept>
#include <string>

namespace geolab {

enum class ErrorCode {
  kInvalidArguments,
  kAttemptsExhausted,
  kCountOverflow,
  kPathsNotDisjoint,
  kIo,
  kSchema,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace geolab
