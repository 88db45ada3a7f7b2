#pragma once

#include <stdexcept>
#include <string>

namespace sgt {

// Error taxonomy mirrored by the CLI exit codes:
//   regime violation -> 2, parse failure -> 3, resource limit -> 4,
//   non-stabilized numeric result -> 5.
struct RegimeError : std::domain_error {
  using std::domain_error::domain_error;
};

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StabilizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sgt
