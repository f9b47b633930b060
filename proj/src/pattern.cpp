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

#include "geonto/pattern.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "geonto/error.hpp"
#include "geonto/normalize.hpp"
#include "geonto/text.hpp"

namespace geonto {

namespace {

std::string MarkerWord(std::string_view surface) { return text::NormalizeName(surface); }

}  // namespace

void MarkerSets::Add(std::string_view set_name, std::string_view marker) {
  std::vector<std::string> words;
  for (const Token &t : Tokenize(marker)) words.push_back(MarkerWord(t.surface));
  if (words.empty()) return;
  auto &set = sets_[std::string(set_name)];
  if (std::find(set.begin(), set.end(), words) == set.end()) set.push_back(std::move(words));
}

void MarkerSets::Load(std::string_view set_name, std::string_view file_text) {
  sets_[std::string(set_name)];
  for (const std::string &raw : text::Split(file_text, '\n')) {
    std::string_view line = text::Trim(raw);
    if (!line.empty() && line.front() != '#') Add(set_name, line);
  }
}

bool MarkerSets::Has(std::string_view set_name) const { return sets_.find(set_name) != sets_.end(); }

const std::vector<std::vector<std::string>> &MarkerSets::Get(std::string_view set_name) const {
  static const std::vector<std::vector<std::string>> kEmpty;
  auto it = sets_.find(set_name);
  return it == sets_.end() ? kEmpty : it->second;
}

std::vector<std::size_t> MarkerSets::MatchesAt(std::string_view set_name, std::span<const Token> tokens,
                                               std::size_t at) const {
  std::vector<std::size_t> lengths;
  for (const auto &marker : Get(set_name)) {
    if (at + marker.size() > tokens.size()) continue;
    bool ok = true;
    for (std::size_t k = 0; ok && k < marker.size(); ++k) ok = MarkerWord(tokens[at + k].surface) == marker[k];
    if (ok) lengths.push_back(marker.size());
  }
  std::sort(lengths.rbegin(), lengths.rend());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  return lengths;
}

Pattern CompilePattern(std::string_view source) {
  struct Piece {
    std::string text;
    std::size_t column;
  };
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < source.size();) {
    if (source[i] == ' ' || source[i] == '\t' || source[i] == '\r' || source[i] == '\n') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < source.size() && source[i] != ' ' && source[i] != '\t' && source[i] != '\r' && source[i] != '\n') ++i;
    pieces.push_back({std::string(source.substr(start, i - start)), start + 1});
  }
  if (pieces.empty()) throw Error(ErrorCode::kPatternSyntax, "empty pattern", 1);

  auto arrow = std::find_if(pieces.begin(), pieces.end(), [](const Piece &p) { return p.text == "->"; });
  if (arrow == pieces.end()) {
    throw Error(ErrorCode::kPatternSyntax, "missing '->'", source.size() + 1);
  }
  if (arrow == pieces.begin()) throw Error(ErrorCode::kPatternSyntax, "no slots before '->'", arrow->column);
  const std::size_t annotations = static_cast<std::size_t>(pieces.end() - arrow - 1);
  if (annotations != 3) {
    std::size_t column = annotations > 3 ? (arrow + 4)->column : source.size() + 1;
    throw Error(ErrorCode::kPatternSyntax, "expected LABEL KIND RULE after '->'", column);
  }

  Pattern pattern;
  pattern.annotation_label = (arrow + 1)->text;
  pattern.name = (arrow + 2)->text;
  pattern.rule_id = (arrow + 3)->text;

  int optional_markers = 0;
  for (auto it = pieces.begin(); it != arrow; ++it) {
    std::string body = it->text;
    Slot slot;
    if (body.back() == '?' || body.back() == '*') {
      slot.repeat = body.back() == '?' ? Slot::Repeat::kOptional : Slot::Repeat::kStar;
      body.pop_back();
    }
    auto fail = [&](const std::string &what) { throw Error(ErrorCode::kPatternSyntax, what, it->column); };
    if (body == "TERM") {
      slot.kind = Slot::Kind::kTerm;
    } else if (body.starts_with("lemma=")) {
      slot.kind = Slot::Kind::kLemma;
      slot.value = text::ToLower(body.substr(6));
      if (slot.value.empty()) fail("empty lemma");
    } else if (body.starts_with("pos=")) {
      slot.kind = Slot::Kind::kPos;
      std::optional<Pos> pos = ParsePos(body.substr(4));
      if (!pos) fail("unknown part of speech '" + body.substr(4) + "'");
      slot.pos = *pos;
    } else if (body.starts_with("MARKER(") && body.size() > 8 && body.back() == ')') {
      slot.kind = Slot::Kind::kMarker;
      slot.value = body.substr(7, body.size() - 8);
      if (slot.repeat == Slot::Repeat::kOptional && ++optional_markers > 1) {
        fail("at most one optional marker per pattern");
      }
    } else {
      fail("unknown slot '" + it->text + "'");
    }
    pattern.sequence.push_back(std::move(slot));
  }
  return pattern;
}

std::vector<Pattern> CompilePatternFile(std::string_view input) {
  std::vector<Pattern> patterns;
  std::size_t number = 0;
  for (const std::string &raw : text::Split(input, '\n')) {
    ++number;
    std::string_view line = text::Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    try {
      patterns.push_back(CompilePattern(line));
    } catch (const Error &e) {
      throw Error(ErrorCode::kPatternSyntax, e.what(), number);
    }
  }
  return patterns;
}

namespace {

struct Attempt {
  std::size_t end = 0;  // one past the last token
  std::vector<std::size_t> term_starts;
  std::vector<std::string> terms;
};

class Matcher {
 public:
  Matcher(const Pattern &pattern, std::span<const Token> tokens, std::span<const TermChunk> chunks,
          const MarkerSets *markers)
      : pattern_(pattern), tokens_(tokens), markers_(markers) {
    for (const TermChunk &c : chunks) chunk_at_.emplace(c.first, &c);
  }

  std::optional<Attempt> LongestAt(std::size_t start) {
    best_.reset();
    Attempt current;
    Explore(0, start, current, start);
    return best_;
  }

 private:
  // Token counts one application of `slot` can consume at `at`.
  std::vector<std::size_t> Steps(const Slot &slot, std::size_t at, const TermChunk **chunk) const {
    *chunk = nullptr;
    if (at >= tokens_.size()) return {};
    const Token &t = tokens_[at];
    switch (slot.kind) {
      case Slot::Kind::kLemma:
        if (text::ToLower(t.lemma.value_or(t.surface)) == slot.value) return {1};
        return {};
      case Slot::Kind::kPos:
        if (t.pos == slot.pos) return {1};
        return {};
      case Slot::Kind::kTerm: {
        auto it = chunk_at_.find(at);
        if (it == chunk_at_.end()) return {};
        *chunk = it->second;
        return {it->second->last - it->second->first + 1};
      }
      case Slot::Kind::kMarker:
        if (markers_ == nullptr) return {};
        return markers_->MatchesAt(slot.value, tokens_, at);
    }
    return {};
  }

  void Consider(const Attempt &attempt, std::size_t start) {
    if (attempt.end <= start) return;
    if (!best_ || attempt.end > best_->end) best_ = attempt;
  }

  void Explore(std::size_t slot_index, std::size_t at, Attempt &current, std::size_t start) {
    if (slot_index == pattern_.sequence.size()) {
      current.end = at;
      Consider(current, start);
      return;
    }
    const Slot &slot = pattern_.sequence[slot_index];
    if (slot.repeat != Slot::Repeat::kOnce) Explore(slot_index + 1, at, current, start);

    const TermChunk *chunk = nullptr;
    for (std::size_t step : Steps(slot, at, &chunk)) {
      if (chunk != nullptr) {
        current.term_starts.push_back(at);
        current.terms.push_back(chunk->lemma_form);
      }
      if (slot.repeat == Slot::Repeat::kStar) {
        Explore(slot_index, at + step, current, start);
      } else {
        Explore(slot_index + 1, at + step, current, start);
      }
      if (chunk != nullptr) {
        current.term_starts.pop_back();
        current.terms.pop_back();
      }
    }
  }

  const Pattern &pattern_;
  std::span<const Token> tokens_;
  const MarkerSets *markers_;
  std::map<std::size_t, const TermChunk *> chunk_at_;
  std::optional<Attempt> best_;
};

}  // namespace

std::vector<PatternMatch> MatchPattern(const Pattern &pattern, std::span<const Token> tokens,
                                       std::span<const TermChunk> chunks, const MarkerSets *markers) {
  std::vector<PatternMatch> matches;
  if (pattern.sequence.empty()) return matches;
  const bool chains = pattern.sequence.front().kind == Slot::Kind::kTerm &&
                      pattern.sequence.back().kind == Slot::Kind::kTerm &&
                      pattern.sequence.back().repeat == Slot::Repeat::kOnce;
  Matcher matcher(pattern, tokens, chunks, markers);
  std::size_t start = 0;
  while (start < tokens.size()) {
    std::optional<Attempt> found = matcher.LongestAt(start);
    if (!found) {
      ++start;
      continue;
    }
    matches.push_back({pattern.name, pattern.annotation_label, pattern.rule_id, start, found->end - 1,
                       found->terms});
    std::size_t next = found->end;
    if (chains && !found->term_starts.empty() && found->term_starts.back() > start) {
      next = found->term_starts.back();
    }
    start = next;
  }
  return matches;
}

namespace {

bool IsCoordinator(const Token &t) {
  std::string w = text::ToLower(t.surface);
  return w == "ou" || w == "et" || w == ",";
}

bool IsClosingPunct(const Token &t) {
  return t.pos == Pos::kPunct && (t.surface == "." || t.surface == ";" || t.surface == ":" ||
                                  t.surface == "!" || t.surface == "?" || t.surface == ",");
}

std::string SourceSpan(std::string_view source, const Token &first, const Token &last) {
  return text::CollapseWhitespace(source.substr(first.start, last.end - first.start));
}

}  // namespace

DefinitionParse ParseDefinition(std::string_view definition_text, std::string_view owner_concept,
                                const Ontology &ontology, const Lexicon &lexicon, const MarkerSets &markers) {
  ontology.Get(owner_concept);
  std::vector<Token> tokens = Tag(Tokenize(definition_text), lexicon);
  while (!tokens.empty() && IsClosingPunct(tokens.back())) tokens.pop_back();
  const bool has_word = std::any_of(tokens.begin(), tokens.end(), [](const Token &t) { return t.pos != Pos::kPunct; });
  if (!has_word) throw Error(ErrorCode::kNoParse, "definition has no words: '" + std::string(definition_text) + "'");

  DefinitionParse parse;
  parse.concept_id = std::string(owner_concept);
  std::size_t i = 0;
  auto skip_det = [&] {
    while (i < tokens.size() && tokens[i].pos == Pos::kDet) ++i;
  };

  while (i < tokens.size() && tokens[i].pos == Pos::kAdj && !lexicon.IsStopword(tokens[i].surface)) {
    parse.leading_properties.push_back(tokens[i].surface);
    ++i;
  }
  skip_det();
  std::vector<std::size_t> marker_lengths = markers.MatchesAt(kPartOfMarkers, tokens, i);
  if (!marker_lengths.empty()) {
    std::span<const Token> marker_tokens(tokens.data() + i, marker_lengths.front());
    parse.meronymy_marker = text::ToLower(JoinSurfaces(marker_tokens));
    i += marker_lengths.front();
    skip_det();
  }

  std::span<const Token> rest(tokens.data() + i, tokens.size() - i);
  std::vector<TermChunk> chunks = ChunkTerms(rest, &lexicon);
  if (chunks.empty() || chunks.front().first != 0) {
    throw Error(ErrorCode::kNoParse, "no term in definition '" + std::string(definition_text) + "'");
  }

  std::vector<std::string> conjuncts{chunks.front().lemma_form};
  std::size_t j = chunks.front().last + 1;  // relative to `rest`
  std::size_t chunk_index = 1;
  if (!parse.meronymy_marker) {
    while (j < rest.size() && IsCoordinator(rest[j])) {
      std::size_t k = j + 1;
      while (k < rest.size() && rest[k].pos == Pos::kDet) ++k;
      while (chunk_index < chunks.size() && chunks[chunk_index].first < k) ++chunk_index;
      if (chunk_index == chunks.size() || chunks[chunk_index].first != k) break;
      conjuncts.push_back(chunks[chunk_index].lemma_form);
      j = chunks[chunk_index].last + 1;
      ++chunk_index;
    }
  }
  if (conjuncts.size() > 1) {
    parse.coordinated_terms = std::move(conjuncts);
  } else {
    parse.term = conjuncts.front();
  }

  // Remaining material: properties separated by commas or "et".
  std::size_t group_start = j;
  auto flush = [&](std::size_t end) {
    std::size_t a = group_start, b = end;
    while (a < b && rest[a].pos == Pos::kPunct) ++a;
    while (b > a && rest[b - 1].pos == Pos::kPunct) --b;
    if (a < b) parse.trailing_properties.push_back(SourceSpan(definition_text, rest[a], rest[b - 1]));
  };
  for (std::size_t k = j; k < rest.size(); ++k) {
    if (rest[k].surface == "," || text::ToLower(rest[k].surface) == "et") {
      flush(k);
      group_start = k + 1;
    }
  }
  flush(rest.size());
  return parse;
}

bool LexicallyIncludes(std::string_view outer, std::string_view inner) {
  std::vector<std::string> o = text::SplitWords(NormalizeTerm(outer));
  std::vector<std::string> in = text::SplitWords(NormalizeTerm(inner));
  if (in.empty() || o.size() <= in.size()) return false;
  return std::search(o.begin(), o.end(), in.begin(), in.end()) != o.end();
}

namespace {

struct Resolution {
  std::string id;
  bool existed = false;
};

Resolution ResolveTermConcept(const std::string &term, Ontology &ontology, IntegrationReport &report) {
  const std::string key = NormalizeTerm(term);
  for (const auto &[id, c] : ontology.concepts()) {
    if (id != Ontology::kTop && NormalizeTerm(c.display_name) == key) return {id, true};
  }
  std::vector<std::string> more_specific;
  for (const auto &[id, c] : ontology.concepts()) {
    if (id != Ontology::kTop && LexicallyIncludes(c.display_name, term)) more_specific.push_back(id);
  }
  std::string created = ontology.AddConcept(Ontology::kTop, text::Capitalize(term), Origin::kLanguage);
  report.created_concepts.push_back(created);
  report.added_relations.push_back({created, std::string(Ontology::kTop), RelationKind::IsA(), Origin::kLanguage});
  for (const std::string &specific : more_specific) {
    try {
      if (ontology.AddRelation(specific, created, RelationKind::IsA(), Origin::kLanguage) == AddOutcome::kAdded) {
        report.added_relations.push_back({specific, created, RelationKind::IsA(), Origin::kLanguage});
      }
    } catch (const Error &e) {
      report.warnings.push_back(e.what());
    }
  }
  return {created, false};
}

void Relate(Ontology &ontology, const std::string &source, const std::string &target, const RelationKind &kind,
            IntegrationReport &report) {
  if (source == target) {
    report.warnings.push_back("skipped self relation on " + source);
    return;
  }
  try {
    AddOutcome outcome = ontology.AddRelation(source, target, kind, Origin::kLanguage);
    if (outcome == AddOutcome::kAdded) {
      report.added_relations.push_back({source, target, kind, Origin::kLanguage});
    } else if (outcome == AddOutcome::kPartOfCycleSkipped) {
      report.warnings.push_back("part-of cycle skipped: " + source + " -> " + target);
    }
  } catch (const Error &e) {
    report.warnings.push_back(e.what());
  }
}

void AttachProperties(const DefinitionParse &parse, Ontology &ontology, IntegrationReport &report) {
  for (const auto *list : {&parse.leading_properties, &parse.trailing_properties}) {
    for (const std::string &p : *list) {
      if (ontology.AddProperty(parse.concept_id, p)) report.added_properties.push_back(p);
    }
  }
}

}  // namespace

IntegrationReport IntegrateDefinition(const DefinitionParse &parse, Ontology &ontology,
                                      const IntegrationOptions &options) {
  IntegrationReport report;
  ontology.Get(parse.concept_id);
  auto add_term = [&](const std::string &term) {
    if (ontology.AddAssociatedTerm(parse.concept_id, term)) report.added_terms.push_back(term);
  };

  if (!parse.coordinated_terms.empty()) {
    report.applied = IntegrationReport::Case::kCoordination;
    for (const std::string &t : parse.coordinated_terms) add_term(t);
    AttachProperties(parse, ontology, report);
    return report;
  }
  if (!parse.term) {
    report.warnings.push_back("definition without term");
    return report;
  }
  const bool has_properties = !parse.leading_properties.empty() || !parse.trailing_properties.empty();

  if (parse.meronymy_marker) {
    report.applied = IntegrationReport::Case::kMeronymy;
    Resolution t = ResolveTermConcept(*parse.term, ontology, report);
    Relate(ontology, parse.concept_id, t.id, RelationKind::PartOf(), report);
    AttachProperties(parse, ontology, report);
    return report;
  }
  if (!has_properties) {
    report.applied = IntegrationReport::Case::kQuasiSynonym;
    add_term(*parse.term);
    return report;
  }
  report.applied = IntegrationReport::Case::kGeneric;
  Resolution t = ResolveTermConcept(*parse.term, ontology, report);
  if (!(t.existed && options.no_edge_for_existing_term)) {
    Relate(ontology, parse.concept_id, t.id, RelationKind::IsA(), report);
  }
  AttachProperties(parse, ontology, report);
  return report;
}

IntegrationReport IntegrateHyponymy(const PatternMatch &match, Ontology &ontology) {
  IntegrationReport report;
  report.applied = IntegrationReport::Case::kGeneric;
  if (match.terms.size() < 2) {
    report.warnings.push_back("hyponymy match binds fewer than two terms");
    return report;
  }
  Resolution specific = ResolveTermConcept(match.terms[0], ontology, report);
  Resolution generic = ResolveTermConcept(match.terms[1], ontology, report);
  Relate(ontology, specific.id, generic.id, RelationKind::IsA(), report);
  return report;
}

}  // namespace geonto
