#pragma once

#include <stdexcept>
#include <string>

namespace ckr {

// Bad user input: malformed files, out-of-range parameters, invalid flag
// combinations. CLI maps this to exit code 2.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A violated internal invariant. These are loud by design: the CLI maps them
// to exit code 3, distinct from ordinary input problems.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

#define CKR_CHECK(cond, msg)                  \
  do {                                        \
    if (!(cond)) throw ::ckr::internal_error(msg); \
  } while (0)

}  // namespace ckr
