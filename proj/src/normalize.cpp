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

#include "geonto/normalize.hpp"

#include <vector>

#include "geonto/text.hpp"

namespace geonto {

namespace {

std::string SingularWord(const std::string &word) {
  if (word.size() < 2) return word;
  char last = word.back();
  if (last != 's' && last != 'x') return word;
  std::string stem = word.substr(0, word.size() - 1);
  std::size_t letters = 0;
  for (std::size_t pos = 0; pos < stem.size();) {
    if (text::IsLetter(text::DecodeUtf8(stem, pos))) ++letters;
  }
  return letters >= 3 ? stem : word;
}

}  // namespace

std::string NormalizeTerm(std::string_view term) {
  std::vector<std::string> words = text::SplitWords(text::NormalizeName(term));
  for (std::string &w : words) w = SingularWord(w);
  return text::Join(words, " ");
}

}  // namespace geonto
