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

#ifndef GEONTO_ERROR_HPP_
#define GEONTO_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geonto {

enum class ErrorCode {
  kUnknownParent,
  kEmptyName,
  kInvalidName,
  kUnknownConcept,
  kIsACycle,
  kMalformedInput,
  kXmlSyntax,
  kRuleSyntax,
  kPatternSyntax,
  kNoParse,
  kMalformedRecord,
  kConfig,
  kIo,
};

const char *ErrorCodeName(ErrorCode code);

// All library failures surface as this exception. `position` is a line
// number, a byte offset or a column depending on the code; 0 when unknown.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message, std::size_t position = 0);

  ErrorCode code() const { return code_; }
  std::size_t position() const { return position_; }

 private:
  ErrorCode code_;
  std::size_t position_;
};

}  // namespace geonto

#endif  // GEONTO_ERROR_HPP_
