#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace disc {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace disc

// Throws disc::Error when `cond` is false. Message supports streaming:
//   DISC_CHECK(a == b, "shape mismatch: " << a << " vs " << b);
#define DISC_CHECK(cond, msg)                  \
  do {                                         \
    if (!(cond)) {                             \
      std::ostringstream oss_;                 \
      oss_ << msg;                             \
      throw ::disc::Error(oss_.str());         \
    }                                          \
  } while (0)
