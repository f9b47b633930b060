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

#ifndef GEONTO_NORMALIZE_HPP_
#define GEONTO_NORMALIZE_HPP_

#include <string>
#include <string_view>

namespace geonto {

// Matching key for common-noun terms: case-folded, whitespace collapsed,
// apostrophes folded, and each word stripped of a trailing plural "s" or "x"
// when at least three letters remain ("Avens" -> "aven", "col" -> "col").
// Diacritics are kept.
std::string NormalizeTerm(std::string_view term);

}  // namespace geonto

#endif  // GEONTO_NORMALIZE_HPP_
