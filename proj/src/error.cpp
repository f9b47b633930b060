// Copyright 2026 The Geonto Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "geonto/error.hpp"

namespace geonto {

const char *ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownParent: return "UnknownParent";
    case ErrorCode::kEmptyName: return "EmptyName";
    case ErrorCode::kInvalidName: return "InvalidName";
    case ErrorCode::kUnknownConcept: return "UnknownConcept";
    case ErrorCode::kIsACycle: return "IsACycle";
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kXmlSyntax: return "XmlSyntax";
    case ErrorCode::kRuleSyntax: return "RuleSyntax";
    case ErrorCode::kPatternSyntax: return "PatternSyntax";
    case ErrorCode::kNoParse: return "NoParse";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kConfig: return "Config";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message, std::size_t position)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code),
      position_(position) {}

}  // namespace geonto
