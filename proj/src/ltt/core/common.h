// ltt/core/common.h

// Copyright 2026  LTT Authors

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

#ifndef LTT_CORE_COMMON_H_
#define LTT_CORE_COMMON_H_

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ltt {

// Failure taxonomy maps onto the CLI exit codes: usage errors are handled by
// the argument parser (1), DataError exits 2, NumericError exits 3.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& msg) : Error(msg) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

template <typename... Args>
std::string Str(Args&&... args) {
  std::ostringstream os;
  (os << ... << std::forward<Args>(args));
  return os.str();
}

#define LTT_CHECK(cond, ...)                                   \
  do {                                                         \
    if (!(cond)) throw ::ltt::Error(::ltt::Str(__VA_ARGS__));  \
  } while (0)

#define LTT_CHECK_DATA(cond, ...)                                  \
  do {                                                             \
    if (!(cond)) throw ::ltt::DataError(::ltt::Str(__VA_ARGS__));  \
  } while (0)

// Numeric mode is a process-global, construction-time choice: kF64 for
// gradient checks and oracle tests, kF32 for training. In kF32 mode every
// op output (and every stored parameter / optimizer moment) is rounded to
// binary32, so float checkpoints round-trip bit-exactly.
enum class NumericMode { kF64, kF32 };

NumericMode GetNumericMode();
void SetNumericMode(NumericMode mode);

namespace internal {
extern bool g_quantize_f32;
extern bool g_grad_enabled;
}  // namespace internal

inline double Quantize(double v) {
  return internal::g_quantize_f32 ? static_cast<double>(static_cast<float>(v))
                                  : v;
}

// Graph capture switch. Evaluation and decoding run under a NoGradGuard so
// forward ops do not record parents or backward closures.
inline bool GradEnabled() { return internal::g_grad_enabled; }

class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool prev_;
};

}  // namespace ltt

#endif  // LTT_CORE_COMMON_H_
