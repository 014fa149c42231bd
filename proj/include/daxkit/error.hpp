#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace daxkit {

// Raised on contract violations: malformed input, group mismatch, or a
// precondition the caller was responsible for.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One finding of a validate_* pass; index points into the validated list.
struct Diagnostic {
  std::optional<std::size_t> index;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

using Diagnostics = std::vector<Diagnostic>;

}  // namespace daxkit
