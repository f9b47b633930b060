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

#ifndef GEONTO_TEXT_HPP_
#define GEONTO_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers. Case mapping covers ASCII, Latin-1 and Latin Extended-A,
// which is everything French text needs (accented capitals, Œ, Ÿ).
namespace geonto::text {

// Decodes the code point starting at `pos` and advances `pos`. Invalid bytes
// decode as U+FFFD and consume one byte.
char32_t DecodeUtf8(std::string_view s, std::size_t &pos);
void AppendUtf8(std::string &out, char32_t cp);

bool IsUpper(char32_t cp);
bool IsLetter(char32_t cp);
bool IsDigit(char32_t cp);
bool IsSpace(char32_t cp);
bool IsApostrophe(char32_t cp);
char32_t ToLower(char32_t cp);
char32_t ToUpper(char32_t cp);

std::string ToLower(std::string_view s);
// Uppercases the first code point only.
std::string Capitalize(std::string_view s);
bool StartsWithUpper(std::string_view s);
std::size_t CodePointCount(std::string_view s);

std::string_view Trim(std::string_view s);
// Trims and replaces every internal whitespace run with one ASCII space.
std::string CollapseWhitespace(std::string_view s);
std::vector<std::string> Split(std::string_view s, char sep);
std::vector<std::string> SplitWords(std::string_view s);
std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// Lowercase, collapsed whitespace, typographic apostrophes folded to '.
// Used for proper names, where plural stripping would be wrong.
std::string NormalizeName(std::string_view s);

}  // namespace geonto::text

#endif  // GEONTO_TEXT_HPP_
