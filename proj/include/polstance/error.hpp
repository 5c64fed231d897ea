#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polstance {

enum class ErrorKind {
  io,
  parse,
  duplicate_id,
  invariant,
  malformed_tree,
  out_of_range,
  version_mismatch,
  unclassifiable,
  missing_input,
  config,
};

std::string_view to_string(ErrorKind kind);

/// Every failure the library reports. `kind` feeds the CLI's machine-readable
/// error object.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace polstance
