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

#ifndef GEONTO_NLP_HPP_
#define GEONTO_NLP_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace geonto {

enum class Pos { kNoun, kProperNoun, kVerb, kDet, kPrep, kAdj, kAdv, kPunct, kOther };

std::string_view PosName(Pos pos);
std::optional<Pos> ParsePos(std::string_view name);

struct Token {
  std::string surface;
  std::size_t start = 0;  // byte offsets into the source, end exclusive
  std::size_t end = 0;
  std::optional<std::string> lemma;
  std::optional<Pos> pos;
  bool capitalized = false;
  bool sentence_initial = false;

  bool IsNominal() const { return pos == Pos::kNoun || pos == Pos::kProperNoun; }
};

// Contiguous token range [first, last] holding at least one noun.
struct TermChunk {
  std::size_t first = 0;
  std::size_t last = 0;
  std::string lemma_form;  // lemmas joined by single spaces
};

// Surface form -> (lemma, part of speech), keyed case-insensitively, plus a
// stopword set. Unknown words fall back to their lowercased surface.
class Lexicon {
 public:
  struct Entry {
    std::string lemma;
    Pos pos;
  };

  // `surface<TAB>lemma<TAB>pos` lines and one stopword per line. Lines
  // starting with '#' are comments. Throws Error(kMalformedInput).
  static Lexicon FromTsv(std::string_view lexicon_tsv, std::string_view stopwords = {});

  void Add(std::string_view surface, std::string_view lemma, Pos pos);
  void AddStopword(std::string_view word);

  const Entry *Find(std::string_view surface) const;
  bool IsStopword(std::string_view surface) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, Entry> entries_;
  std::unordered_set<std::string> stopwords_;
};

// Splits on whitespace, isolates punctuation, splits French elisions after
// the apostrophe ("d'Artouste" -> "d'" "Artouste") and keeps word-internal
// hyphens. A token is sentence-initial at the start of the text, after
// . ! ? … or after a blank line.
std::vector<Token> Tokenize(std::string_view text);

// Fills lemma and part of speech on every token. An unknown capitalized word
// is a proper noun unless it is sentence-initial and never seen capitalized
// in a non-initial position of the same token list.
std::vector<Token> Tag(std::vector<Token> tokens, const Lexicon &lexicon);

// Maximal, non-overlapping runs of
//   (Noun|ProperNoun) (Prep? Det? (Noun|ProperNoun|Adj))*
// where stopwords may only fill the Prep and Det connector positions.
std::vector<TermChunk> ChunkTerms(std::span<const Token> tokens, const Lexicon *lexicon = nullptr);

// Space-joined surfaces with elided forms glued to the next word.
std::string JoinSurfaces(std::span<const Token> tokens);

}  // namespace geonto

#endif  // GEONTO_NLP_HPP_
