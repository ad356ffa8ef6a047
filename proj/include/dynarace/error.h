// Copyright 2026 The dynarace authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// -----------------------------------------------------------------------------
// File: error.h
// -----------------------------------------------------------------------------
#ifndef DYNARACE_ERROR_H_
#define DYNARACE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace dynarace {

enum class ErrorCode {
  kSyntaxError,
  kUnboundVariable,
  kUnguardedRecursion,
  kParInsideDefinition,
  kDuplicateDefinition,
  kUndeclaredValue,
  kUndeclaredChannel,
  kEmptyModel,
  kDomainTooLarge,
  kLengthMismatch,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as `Error`. The message is meant for
// humans; callers branch on `code()`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dynarace

#endif  // DYNARACE_ERROR_H_
