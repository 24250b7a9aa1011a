/*
 * Copyright 2026 The SOTE Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SOTE_ERROR_HPP_
#define SOTE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace sote {

enum class ErrorCode {
  kDimension,
  kParameter,
  kLevel,
  kProgram,
  kCapacity,
  kWireFormat,
  kTruncated,
  kRange,
  kIo,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension: return "dimension";
    case ErrorCode::kParameter: return "parameter";
    case ErrorCode::kLevel: return "level";
    case ErrorCode::kProgram: return "program";
    case ErrorCode::kCapacity: return "capacity";
    case ErrorCode::kWireFormat: return "wire-format";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kRange: return "range";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) throw Error(code, what);
}

}  // namespace sote

#endif  // SOTE_ERROR_HPP_
