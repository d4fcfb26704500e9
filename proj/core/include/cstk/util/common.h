// core/include/cstk/util/common.h

// Copyright 2026  CSTK Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef CSTK_UTIL_COMMON_H_
#define CSTK_UTIL_COMMON_H_

#include <sstream>
#include <stdexcept>
#include <string>

namespace cstk {

// Base error for all data, format and invariant violations.  I/O wrappers
// and validators throw this; the CLI maps it to exit code 2.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Usage-level error (bad flags, bad subcommand); the CLI maps it to exit 1.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace internal {
inline void StrAppend(std::ostringstream&) {}
template <typename T, typename... Rest>
void StrAppend(std::ostringstream& os, const T& v, const Rest&... rest) {
  os << v;
  StrAppend(os, rest...);
}
}  // namespace internal

template <typename... Args>
std::string StrCat(const Args&... args) {
  std::ostringstream os;
  internal::StrAppend(os, args...);
  return os.str();
}

template <typename... Args>
[[noreturn]] void ThrowError(const Args&... args) {
  throw Error(StrCat(args...));
}

// Internal invariants.  These guard conditions that valid inputs cannot
// violate; user-triggerable conditions get explicit Error throws instead.
#define CSTK_ASSERT(cond)                                                    \
  do {                                                                       \
    if (!(cond))                                                             \
      throw ::cstk::Error(::cstk::StrCat("assertion failed: ", #cond, " (", \
                                         __FILE__, ":", __LINE__, ")"));     \
  } while (0)

}  // namespace cstk

#endif  // CSTK_UTIL_COMMON_H_
