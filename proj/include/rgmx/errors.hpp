#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rgmx {

/// Coarse error categories, used by the CLI for machine-parsable exit lines.
enum class ErrorCategory {
  Io,        ///< file missing, unreadable, unwritable
  Parse,     ///< malformed input text
  Validate,  ///< structurally valid input violating a precondition
  Numeric,   ///< iteration failed to converge or produced invalid values
  Config,    ///< bad parameter combination
  Internal,  ///< should-not-happen
};

std::string_view to_string(ErrorCategory c);

class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

private:
  ErrorCategory category_;
};

[[noreturn]] inline void throw_error(ErrorCategory c, const std::string& msg) {
  throw Error(c, msg);
}

}  // namespace rgmx
