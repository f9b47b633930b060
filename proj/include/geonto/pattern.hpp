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

#ifndef GEONTO_PATTERN_HPP_
#define GEONTO_PATTERN_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geonto/nlp.hpp"
#include "geonto/ontology.hpp"

namespace geonto {

// Named lists of multiword markers ("portion de", "au sud de"). Marker words
// are compared case-insensitively with apostrophes folded.
class MarkerSets {
 public:
  void Add(std::string_view set_name, std::string_view marker);
  // One marker per line; '#' comments.
  void Load(std::string_view set_name, std::string_view file_text);

  bool Has(std::string_view set_name) const;
  const std::vector<std::vector<std::string>> &Get(std::string_view set_name) const;

  // Token counts of every marker of `set_name` matching at `at`, longest first.
  std::vector<std::size_t> MatchesAt(std::string_view set_name, std::span<const Token> tokens,
                                     std::size_t at) const;

 private:
  std::map<std::string, std::vector<std::vector<std::string>>, std::less<>> sets_;
};

inline constexpr std::string_view kPartOfMarkers = "partie_de";

struct Slot {
  enum class Kind { kLemma, kPos, kTerm, kMarker };
  enum class Repeat { kOnce, kOptional, kStar };

  Kind kind = Kind::kTerm;
  std::string value;  // lemma or marker set name
  Pos pos = Pos::kOther;
  Repeat repeat = Repeat::kOnce;

  bool operator==(const Slot &) const = default;
};

// A lexico-syntactic pattern. Source syntax, one pattern per line:
//
//   TERM lemma=est lemma=un TERM -> HYPONYMIE est-un R0
//
// Slots are whitespace separated: `lemma=X`, `pos=X`, `TERM` (binds a term
// chunk starting at that token) and `MARKER(set)`; a trailing `?` or `*`
// makes a slot optional or repeatable. After `->` come the annotation label,
// the kind (used as the pattern name) and the rule id.
struct Pattern {
  std::string name;
  std::vector<Slot> sequence;
  std::string annotation_label;
  std::string rule_id;
};

// Throws Error(kPatternSyntax) whose position is the 1-based column.
Pattern CompilePattern(std::string_view source);
// Skips blank and '#' lines; errors carry the line number.
std::vector<Pattern> CompilePatternFile(std::string_view text);

struct PatternMatch {
  std::string pattern_name;
  std::string annotation_label;
  std::string rule_id;
  std::size_t first = 0;  // token range, inclusive
  std::size_t last = 0;
  std::vector<std::string> terms;  // lemma forms bound by TERM slots
};

// Leftmost-longest scan. After a match the scan restarts right after it,
// except when the pattern both starts and ends with TERM: then it restarts at
// the last bound term so that "X est un Y est un Z" yields X/Y and Y/Z.
std::vector<PatternMatch> MatchPattern(const Pattern &pattern, std::span<const Token> tokens,
                                       std::span<const TermChunk> chunks,
                                       const MarkerSets *markers = nullptr);

// A definition read as
//   {Concept} {Property}* ({PartOf marker})? {Term} {Property}*
// where the concept slot is the definition's owner.
struct DefinitionParse {
  std::string concept_id;
  std::vector<std::string> leading_properties;
  std::optional<std::string> meronymy_marker;
  std::optional<std::string> term;
  std::vector<std::string> trailing_properties;
  // "X ou Y" definitions: no main term, each conjunct becomes an
  // associated term of the owner.
  std::vector<std::string> coordinated_terms;
};

// Throws Error(kNoParse) when no term can be read, Error(kUnknownConcept)
// when the owner is not in the ontology.
DefinitionParse ParseDefinition(std::string_view definition_text, std::string_view owner_concept,
                                const Ontology &ontology, const Lexicon &lexicon,
                                const MarkerSets &markers);

struct IntegrationOptions {
  // When the term already names a concept, do not add the Concept is-a Term
  // edge either.
  bool no_edge_for_existing_term = false;
};

struct IntegrationReport {
  enum class Case { kQuasiSynonym, kGeneric, kMeronymy, kCoordination };
  Case applied = Case::kQuasiSynonym;
  std::vector<std::string> created_concepts;
  std::vector<Relation> added_relations;
  std::vector<std::string> added_terms;
  std::vector<std::string> added_properties;
  std::vector<std::string> warnings;
};

// Applies a parsed definition:
//  - concept and term only: the term becomes an associated term;
//  - with properties: the term names a more generic concept, the owner is-a
//    that concept and carries the properties;
//  - with a part-of marker: same concept resolution, then owner part-of term.
// A missing term concept is created under Top; existing concepts whose name
// lexically contains the term become its children.
IntegrationReport IntegrateDefinition(const DefinitionParse &parse, Ontology &ontology,
                                      const IntegrationOptions &options = {});

// Applies a hyponymy pattern match binding (specific, generic) terms: both
// terms are resolved to concepts as above and specific is-a generic.
IntegrationReport IntegrateHyponymy(const PatternMatch &match, Ontology &ontology);

// True when the words of `inner` occur contiguously in `outer` after
// NormalizeTerm, and `outer` has more words.
bool LexicallyIncludes(std::string_view outer, std::string_view inner);

}  // namespace geonto

#endif  // GEONTO_PATTERN_HPP_
