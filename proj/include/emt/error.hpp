#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace emt {

enum class error_code {
  duplicate_label,
  empty_frame,
  too_many_labels,
  unknown_label,
  width_mismatch,
  not_consonant,
  zero_divisor,
  unsupported_conversion,
  support_condition,
  total_conflict,
  empty_support,
  invalid_mass,
  frame_too_large,
  frame_mismatch,
  parse_error,
};

constexpr std::string_view to_string(error_code code) noexcept {
  switch (code) {
    case error_code::duplicate_label: return "DuplicateLabel";
    case error_code::empty_frame: return "EmptyFrame";
    case error_code::too_many_labels: return "TooManyLabels";
    case error_code::unknown_label: return "UnknownLabel";
    case error_code::width_mismatch: return "WidthMismatch";
    case error_code::not_consonant: return "NotConsonant";
    case error_code::zero_divisor: return "ZeroDivisor";
    case error_code::unsupported_conversion: return "UnsupportedConversion";
    case error_code::support_condition: return "SupportCondition";
    case error_code::total_conflict: return "TotalConflict";
    case error_code::empty_support: return "EmptySupport";
    case error_code::invalid_mass: return "InvalidMass";
    case error_code::frame_too_large: return "FrameTooLargeForOracle";
    case error_code::frame_mismatch: return "FrameMismatch";
    case error_code::parse_error: return "ParseError";
  }
  return "Unknown";
}

/// Single exception type for the library. `code()` is what callers branch on;
/// `elements()` carries the indices of the offending set when there is one.
class error : public std::runtime_error {
 public:
  error(error_code code, const std::string& message, std::vector<std::size_t> elements = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        elements_(std::move(elements)) {}

  error_code code() const noexcept { return code_; }
  const std::vector<std::size_t>& elements() const noexcept { return elements_; }

 private:
  error_code code_;
  std::vector<std::size_t> elements_;
};

}  // namespace emt
