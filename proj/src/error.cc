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
#include "dynarace/error.h"

namespace dynarace {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntaxError:
      return "SyntaxError";
    case ErrorCode::kUnboundVariable:
      return "UnboundVariable";
    case ErrorCode::kUnguardedRecursion:
      return "UnguardedRecursion";
    case ErrorCode::kParInsideDefinition:
      return "ParInsideDefinition";
    case ErrorCode::kDuplicateDefinition:
      return "DuplicateDefinition";
    case ErrorCode::kUndeclaredValue:
      return "UndeclaredValue";
    case ErrorCode::kUndeclaredChannel:
      return "UndeclaredChannel";
    case ErrorCode::kEmptyModel:
      return "EmptyModel";
    case ErrorCode::kDomainTooLarge:
      return "DomainTooLarge";
    case ErrorCode::kLengthMismatch:
      return "LengthMismatch";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace dynarace
