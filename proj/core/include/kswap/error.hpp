#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kswap {

enum class ErrorCode {
  invalid_argument,
  malformed_document,
  non_positive_time,
  inconsistent_scale,
  base_out_of_range,
  invalid_move,
  budget_exceeded,
  zero_delta,
  iteration_limit,
  wrong_k,
  empty_input,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace kswap
