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

#ifndef GEONTO_SPATIAL_HPP_
#define GEONTO_SPATIAL_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geonto/nlp.hpp"
#include "geonto/ontology.hpp"

namespace geonto {

// Inclusive token range.
struct TokenSpan {
  std::size_t first = 0;
  std::size_t last = 0;

  auto operator<=>(const TokenSpan &) const = default;
};

struct GeoPosition {
  double lat = 0;
  double lon = 0;

  bool operator==(const GeoPosition &) const = default;
};

struct GazetteerEntry {
  std::string name;
  std::string feature_type;
  double lat = 0;
  double lon = 0;

  bool operator==(const GazetteerEntry &) const = default;
};

// Place names keyed by NormalizeName.
class Gazetteer {
 public:
  // `name<TAB>feature_type<TAB>lat<TAB>lon` lines, '#' comments. Throws
  // Error(kMalformedInput) with the line number on bad rows or coordinates
  // out of range.
  static Gazetteer Parse(std::string_view tsv);

  void Add(GazetteerEntry entry);
  std::vector<const GazetteerEntry *> Lookup(std::string_view toponym) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<GazetteerEntry> entries_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> index_;
};

// Introducer nouns ("lac", "pic", "vallée"), compared after NormalizeTerm.
class IntroducerLexicon {
 public:
  // One noun lemma per line; '#' comments.
  static IntroducerLexicon Parse(std::string_view text);

  void Add(std::string_view lemma);
  bool Contains(const Token &token) const;
  std::size_t size() const { return lemmas_.size(); }

 private:
  std::set<std::string> lemmas_;
};

// Multiword relation markers ("au sud de", "au cœur de"). Markers and text
// are compared after expanding the contractions du -> de le, des -> de les,
// au -> à le, aux -> à les and folding d' to de.
class RelationMarkers {
 public:
  static RelationMarkers Parse(std::string_view text);

  struct Match {
    std::size_t length = 0;  // tokens
    std::string marker;      // as listed
  };

  void Add(std::string_view marker);
  // Longest marker whose tokens end right before token `at` and start at or
  // after `not_before`. A trailing determiner left over by a contraction
  // ("au cœur du quartier") is absorbed.
  std::optional<Match> MatchBefore(std::span<const Token> tokens, std::size_t at, std::size_t not_before) const;
  std::size_t size() const { return markers_.size(); }

 private:
  struct Entry {
    std::string text;
    std::vector<std::string> words;  // expanded
  };
  std::vector<Entry> markers_;
};

struct SpatialCandidate {
  TokenSpan span;  // capitalized toponym tokens
  std::optional<std::size_t> introducer;  // token index within the window
};

inline constexpr std::size_t kIntroducerWindow = 3;

struct EsaAnnotation {
  TokenSpan span;
  std::optional<std::string> introducer;  // lemma
  std::string toponym;
  bool validated = false;
  std::optional<std::string> gazetteer_type;
  std::optional<GeoPosition> position;
  // Every gazetteer hit when several matched and none agreed with the
  // introducer.
  std::vector<GazetteerEntry> alternatives;

  bool operator==(const EsaAnnotation &) const = default;
};

struct EsrAnnotation {
  TokenSpan span;
  std::string relation_marker;
  EsaAnnotation inner;

  bool operator==(const EsrAnnotation &) const = default;
};

struct TermAssociation {
  std::string toponym;
  std::string term;
  std::size_t occurrences = 0;
  bool toponym_validated = false;

  bool operator==(const TermAssociation &) const = default;
};

// Capitalized tokens that are not sentence-initial (or are tagged as proper
// nouns), merged into runs, each with the nearest introducer noun found in
// the kIntroducerWindow tokens before it. A capitalized introducer noun
// directly followed by a toponym ("Lac d'Artouste") is kept as introducer.
std::vector<SpatialCandidate> MarkCandidates(std::span<const Token> tokens, const IntroducerLexicon &introducers);

// Grammar, longest match first:
//   Det? Introducer (Prep Det?)? ProperName
//   ProperName
std::vector<EsaAnnotation> RecognizeEsa(std::span<const Token> tokens, std::span<const SpatialCandidate> candidates,
                                        const IntroducerLexicon &introducers);

// Wraps an ESA in an ESR when a relation marker immediately precedes it.
std::vector<EsrAnnotation> RecognizeEsr(std::span<const Token> tokens, std::span<const EsaAnnotation> esas,
                                        const RelationMarkers &markers);

// Fills validated, gazetteer_type, position and alternatives. With several
// hits the type comes from the hit whose feature type agrees with the
// introducer, either by normalized equality or by naming the same ontology
// concept.
EsaAnnotation ValidateEsa(EsaAnnotation esa, const Gazetteer &gazetteer, const Ontology *ontology = nullptr);

// One row per (toponym, normalized introducer, validated), sorted.
std::vector<TermAssociation> ExtractTermAssociations(std::span<const EsaAnnotation> esas);

struct TypingResult {
  bool typed = false;
  std::optional<std::string> concept_id;
  bool ambiguous = false;  // several equally deep matches
};

// Matches an introducer or gazetteer type against concept names and
// associated terms; the deepest match wins, ties go to the smallest id.
class EntityTyper {
 public:
  explicit EntityTyper(const Ontology &ontology);

  TypingResult Type(const std::optional<std::string> &introducer,
                    const std::optional<std::string> &gazetteer_type) const;

 private:
  const Ontology &ontology_;
  std::map<std::string, int, std::less<>> depths_;
};

TypingResult TypeEntity(const EsaAnnotation &esa, const Ontology &ontology);

struct SpatialResources {
  const Lexicon *lexicon = nullptr;
  const IntroducerLexicon *introducers = nullptr;
  const RelationMarkers *relation_markers = nullptr;
  const Gazetteer *gazetteer = nullptr;
  const Ontology *ontology = nullptr;  // used for introducer agreement only
};

struct DocumentAnnotations {
  std::string doc;
  std::vector<Token> tokens;
  std::vector<EsaAnnotation> esas;
  std::vector<EsrAnnotation> esrs;
};

// Tokenize, tag, mark, recognize ESA, validate, recognize ESR.
DocumentAnnotations AnnotateDocument(std::string doc_name, std::string_view text, const SpatialResources &resources);

// One row of the annotation dump:
//   doc start end kind introducer toponym validated type concept
// start/end are byte offsets into the document, end exclusive.
struct AnnotationRow {
  std::string doc;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string kind;  // ESA or ESR
  std::string introducer;
  std::string toponym;
  bool validated = false;
  std::string type;
  std::string concept_id;

  bool operator==(const AnnotationRow &) const = default;
};

std::vector<AnnotationRow> ToRows(const DocumentAnnotations &doc, const EntityTyper *typer);
std::string FormatAnnotationDump(std::span<const AnnotationRow> rows);
// Throws Error(kMalformedInput) with the line number.
std::vector<AnnotationRow> ParseAnnotationDump(std::string_view tsv);

// toponym term occurrences validated
std::string FormatAssociations(std::span<const TermAssociation> associations);
std::vector<TermAssociation> ParseAssociations(std::string_view tsv);

}  // namespace geonto

#endif  // GEONTO_SPATIAL_HPP_
