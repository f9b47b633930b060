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

#include "geonto/nlp.hpp"

#include "geonto/error.hpp"
#include "geonto/text.hpp"

namespace geonto {

std::string_view PosName(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return "noun";
    case Pos::kProperNoun: return "propn";
    case Pos::kVerb: return "verb";
    case Pos::kDet: return "det";
    case Pos::kPrep: return "prep";
    case Pos::kAdj: return "adj";
    case Pos::kAdv: return "adv";
    case Pos::kPunct: return "punct";
    case Pos::kOther: return "other";
  }
  return "other";
}

std::optional<Pos> ParsePos(std::string_view name) {
  std::string key = text::ToLower(name);
  for (Pos p : {Pos::kNoun, Pos::kProperNoun, Pos::kVerb, Pos::kDet, Pos::kPrep, Pos::kAdj, Pos::kAdv,
                Pos::kPunct, Pos::kOther}) {
    if (key == PosName(p)) return p;
  }
  if (key == "nom") return Pos::kNoun;
  if (key == "propernoun" || key == "npr") return Pos::kProperNoun;
  return std::nullopt;
}

namespace {

std::string LookupKey(std::string_view surface) { return text::NormalizeName(surface); }

bool IsWordChar(char32_t cp) { return text::IsLetter(cp) || text::IsDigit(cp); }

}  // namespace

Lexicon Lexicon::FromTsv(std::string_view lexicon_tsv, std::string_view stopwords) {
  Lexicon lexicon;
  std::size_t number = 0;
  for (const std::string &raw : text::Split(lexicon_tsv, '\n')) {
    ++number;
    std::string_view line = text::Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields = text::Split(line, '\t');
    if (fields.size() != 3) {
      throw Error(ErrorCode::kMalformedInput, "lexicon line needs surface, lemma and pos", number);
    }
    std::optional<Pos> pos = ParsePos(text::Trim(fields[2]));
    if (!pos) throw Error(ErrorCode::kMalformedInput, "unknown part of speech '" + fields[2] + "'", number);
    lexicon.Add(text::Trim(fields[0]), text::Trim(fields[1]), *pos);
  }
  for (const std::string &raw : text::Split(stopwords, '\n')) {
    std::string_view word = text::Trim(raw);
    if (!word.empty() && word.front() != '#') lexicon.AddStopword(word);
  }
  return lexicon;
}

void Lexicon::Add(std::string_view surface, std::string_view lemma, Pos pos) {
  entries_[LookupKey(surface)] = Entry{std::string(lemma), pos};
}

void Lexicon::AddStopword(std::string_view word) { stopwords_.insert(LookupKey(word)); }

const Lexicon::Entry *Lexicon::Find(std::string_view surface) const {
  auto it = entries_.find(LookupKey(surface));
  return it == entries_.end() ? nullptr : &it->second;
}

bool Lexicon::IsStopword(std::string_view surface) const { return stopwords_.count(LookupKey(surface)) > 0; }

std::vector<Token> Tokenize(std::string_view input) {
  std::vector<Token> tokens;
  bool boundary = true;  // next token starts a sentence
  std::size_t newlines = 0;
  std::size_t pos = 0;

  auto push = [&](std::size_t start, std::size_t end) {
    Token t;
    t.surface = std::string(input.substr(start, end - start));
    t.start = start;
    t.end = end;
    t.capitalized = text::StartsWithUpper(t.surface);
    t.sentence_initial = boundary || newlines >= 2;
    boundary = false;
    newlines = 0;
    tokens.push_back(std::move(t));
  };
  auto peek = [&](std::size_t at) -> char32_t {
    if (at >= input.size()) return 0;
    return text::DecodeUtf8(input, at);
  };

  while (pos < input.size()) {
    std::size_t start = pos;
    char32_t cp = text::DecodeUtf8(input, pos);
    if (text::IsSpace(cp)) {
      if (cp == '\n') ++newlines;
      continue;
    }
    if (!IsWordChar(cp)) {
      push(start, pos);
      if (cp == '.' || cp == '!' || cp == '?' || cp == 0x2026) boundary = true;
      continue;
    }
    // Word: letters and digits, with inner hyphens and decimal marks.
    while (pos < input.size()) {
      std::size_t look = pos;
      char32_t next = text::DecodeUtf8(input, look);
      if (IsWordChar(next)) {
        pos = look;
        continue;
      }
      char32_t after = peek(look);
      if ((next == '-' || next == 0x2011) && IsWordChar(after)) {
        pos = look;
        continue;
      }
      if ((next == '.' || next == ',') && text::IsDigit(after)) {
        std::size_t back = pos;
        // only between digits
        bool prev_digit = back > 0 && text::IsDigit(static_cast<unsigned char>(input[back - 1]));
        if (prev_digit) {
          pos = look;
          continue;
        }
      }
      if (text::IsApostrophe(next) && text::IsLetter(after)) {
        pos = look;  // elided form keeps its apostrophe and ends here
      }
      break;
    }
    push(start, pos);
  }
  return tokens;
}

std::vector<Token> Tag(std::vector<Token> tokens, const Lexicon &lexicon) {
  std::unordered_set<std::string> capitalized_inside;
  for (const Token &t : tokens) {
    if (t.capitalized && !t.sentence_initial) capitalized_inside.insert(t.surface);
  }
  for (Token &t : tokens) {
    if (const Lexicon::Entry *entry = lexicon.Find(t.surface)) {
      t.lemma = entry->lemma;
      t.pos = entry->pos;
      continue;
    }
    std::size_t at = 0;
    char32_t first = t.surface.empty() ? 0 : text::DecodeUtf8(t.surface, at);
    if (!IsWordChar(first)) {
      t.lemma = t.surface;
      t.pos = Pos::kPunct;
      continue;
    }
    t.lemma = text::ToLower(t.surface);
    const bool proper = t.capitalized && (!t.sentence_initial || capitalized_inside.count(t.surface) > 0);
    t.pos = proper ? Pos::kProperNoun : Pos::kOther;
  }
  return tokens;
}

std::vector<TermChunk> ChunkTerms(std::span<const Token> tokens, const Lexicon *lexicon) {
  auto stop = [&](const Token &t) { return lexicon != nullptr && lexicon->IsStopword(t.surface); };
  auto content = [&](const Token &t, bool head) {
    if (stop(t)) return false;
    if (t.IsNominal()) return true;
    return !head && t.pos == Pos::kAdj;
  };

  std::vector<TermChunk> chunks;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!content(tokens[i], true)) {
      ++i;
      continue;
    }
    std::size_t last = i;
    while (true) {
      std::size_t j = last + 1;
      if (j < tokens.size() && tokens[j].pos == Pos::kPrep) ++j;
      if (j < tokens.size() && tokens[j].pos == Pos::kDet) ++j;
      if (j < tokens.size() && content(tokens[j], false)) {
        last = j;
      } else {
        break;
      }
    }
    TermChunk chunk{i, last, {}};
    for (std::size_t k = i; k <= last; ++k) {
      if (k > i) chunk.lemma_form.push_back(' ');
      chunk.lemma_form += tokens[k].lemma.value_or(text::ToLower(tokens[k].surface));
    }
    chunks.push_back(std::move(chunk));
    i = last + 1;
  }
  return chunks;
}

std::string JoinSurfaces(std::span<const Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string &s = tokens[i].surface;
    const bool glue = i > 0 && !out.empty() &&
                      (out.back() == '\'' || (out.size() >= 3 && out.compare(out.size() - 3, 3, "\xE2\x80\x99") == 0));
    if (i > 0 && !glue) out.push_back(' ');
    out += s;
  }
  return out;
}

}  // namespace geonto
