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

#include "geonto/spatial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <tuple>

#include "geonto/error.hpp"
#include "geonto/normalize.hpp"
#include "geonto/text.hpp"

namespace geonto {

namespace {

std::string Word(const Token &t) { return text::NormalizeName(t.surface); }

std::vector<std::string> Expand(std::string_view word) {
  if (word == "du") return {"de", "le"};
  if (word == "des") return {"de", "les"};
  if (word == "au") return {"à", "le"};
  if (word == "aux") return {"à", "les"};
  if (word == "d'") return {"de"};
  return {std::string(word)};
}

bool IsContraction(const Token &t) {
  std::string w = Word(t);
  return w == "du" || w == "des" || w == "au" || w == "aux";
}

bool IsDetWord(std::string_view w) { return w == "le" || w == "la" || w == "les" || w == "l'"; }

bool IsWordToken(const Token &t) { return t.pos != Pos::kPunct && !t.surface.empty(); }

std::string Lemma(const Token &t) { return text::ToLower(t.lemma.value_or(t.surface)); }

double ParseCoordinate(const std::string &field, std::size_t line) {
  std::string_view s = text::Trim(field);
  double value = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(value)) {
    throw Error(ErrorCode::kMalformedInput, "bad coordinate '" + field + "'", line);
  }
  return value;
}

std::string Clean(std::string_view field) {
  std::string out(field);
  std::replace_if(out.begin(), out.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
  return out;
}

}  // namespace

Gazetteer Gazetteer::Parse(std::string_view tsv) {
  Gazetteer gazetteer;
  std::size_t number = 0;
  for (const std::string &raw : text::Split(tsv, '\n')) {
    ++number;
    std::string_view line = text::Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields = text::Split(line, '\t');
    if (fields.size() != 4) throw Error(ErrorCode::kMalformedInput, "gazetteer row needs 4 fields", number);
    GazetteerEntry entry{text::CollapseWhitespace(fields[0]), text::CollapseWhitespace(fields[1]),
                         ParseCoordinate(fields[2], number), ParseCoordinate(fields[3], number)};
    if (entry.name.empty()) throw Error(ErrorCode::kMalformedInput, "empty place name", number);
    if (entry.lat < -90 || entry.lat > 90) throw Error(ErrorCode::kMalformedInput, "latitude out of range", number);
    if (entry.lon < -180 || entry.lon > 180) {
      throw Error(ErrorCode::kMalformedInput, "longitude out of range", number);
    }
    gazetteer.Add(std::move(entry));
  }
  return gazetteer;
}

void Gazetteer::Add(GazetteerEntry entry) {
  index_[text::NormalizeName(entry.name)].push_back(entries_.size());
  entries_.push_back(std::move(entry));
}

std::vector<const GazetteerEntry *> Gazetteer::Lookup(std::string_view toponym) const {
  std::vector<const GazetteerEntry *> hits;
  auto it = index_.find(text::NormalizeName(toponym));
  if (it != index_.end()) {
    for (std::size_t i : it->second) hits.push_back(&entries_[i]);
  }
  return hits;
}

IntroducerLexicon IntroducerLexicon::Parse(std::string_view input) {
  IntroducerLexicon lexicon;
  for (const std::string &raw : text::Split(input, '\n')) {
    std::string_view line = text::Trim(raw);
    if (!line.empty() && line.front() != '#') lexicon.Add(line);
  }
  return lexicon;
}

void IntroducerLexicon::Add(std::string_view lemma) {
  std::string key = NormalizeTerm(lemma);
  if (!key.empty()) lemmas_.insert(std::move(key));
}

bool IntroducerLexicon::Contains(const Token &token) const {
  if (token.pos == Pos::kPunct || token.pos == Pos::kDet || token.pos == Pos::kPrep) return false;
  return lemmas_.count(NormalizeTerm(Lemma(token))) > 0;
}

RelationMarkers RelationMarkers::Parse(std::string_view input) {
  RelationMarkers markers;
  for (const std::string &raw : text::Split(input, '\n')) {
    std::string_view line = text::Trim(raw);
    if (!line.empty() && line.front() != '#') markers.Add(line);
  }
  return markers;
}

void RelationMarkers::Add(std::string_view marker) {
  Entry entry{text::CollapseWhitespace(marker), {}};
  for (const Token &t : Tokenize(marker)) {
    for (std::string &w : Expand(Word(t))) entry.words.push_back(std::move(w));
  }
  if (entry.words.empty()) return;
  for (const Entry &e : markers_) {
    if (e.words == entry.words) return;
  }
  markers_.push_back(std::move(entry));
}

std::optional<RelationMarkers::Match> RelationMarkers::MatchBefore(std::span<const Token> tokens, std::size_t at,
                                                                   std::size_t not_before) const {
  std::size_t longest_words = 0;
  for (const Entry &e : markers_) longest_words = std::max(longest_words, e.words.size());
  const std::size_t reach = std::min(at - std::min(at, not_before), longest_words + 1);
  for (std::size_t k = reach; k >= 1; --k) {
    std::vector<std::string> words;
    for (std::size_t i = at - k; i < at; ++i) {
      for (std::string &w : Expand(Word(tokens[i]))) words.push_back(std::move(w));
    }
    for (const Entry &e : markers_) {
      bool exact = words == e.words;
      bool with_det = words.size() == e.words.size() + 1 && IsDetWord(words.back()) &&
                      std::equal(e.words.begin(), e.words.end(), words.begin());
      if (exact || with_det) return Match{k, e.text};
    }
  }
  return std::nullopt;
}

std::vector<SpatialCandidate> MarkCandidates(std::span<const Token> tokens, const IntroducerLexicon &introducers) {
  auto capital = [&](std::size_t i) {
    const Token &t = tokens[i];
    if (!t.capitalized || !IsWordToken(t)) return false;
    if (t.pos == Pos::kDet || t.pos == Pos::kPrep || t.pos == Pos::kVerb) return false;
    return !t.sentence_initial || t.pos == Pos::kProperNoun;
  };
  // Length of a (Prep Det?)? connector starting at i, or nullopt.
  auto connector_then_capital = [&](std::size_t i) {
    std::size_t j = i;
    if (j < tokens.size() && (tokens[j].pos == Pos::kPrep || IsContraction(tokens[j]))) {
      bool contracted = IsContraction(tokens[j]);
      ++j;
      if (!contracted && j < tokens.size() && tokens[j].pos == Pos::kDet) ++j;
    }
    return j < tokens.size() && capital(j);
  };

  std::vector<bool> toponymic(tokens.size(), false);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!capital(i)) continue;
    toponymic[i] = !(introducers.Contains(tokens[i]) && connector_then_capital(i + 1));
  }

  std::vector<SpatialCandidate> candidates;
  std::size_t floor = 0;  // first index the next window may look at
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!toponymic[i]) continue;
    SpatialCandidate c{{i, i}, std::nullopt};
    while (c.span.last + 1 < tokens.size() && toponymic[c.span.last + 1]) ++c.span.last;
    for (std::size_t k = 1; k <= kIntroducerWindow && i >= k && i - k >= floor; ++k) {
      const Token &t = tokens[i - k];
      if (t.pos == Pos::kPunct) break;
      if (introducers.Contains(t)) {
        c.introducer = i - k;
        break;
      }
    }
    floor = c.span.last + 1;
    i = c.span.last;
    candidates.push_back(c);
  }
  return candidates;
}

std::vector<EsaAnnotation> RecognizeEsa(std::span<const Token> tokens, std::span<const SpatialCandidate> candidates,
                                        const IntroducerLexicon &introducers) {
  std::vector<EsaAnnotation> esas;
  std::size_t floor = 0;
  for (const SpatialCandidate &c : candidates) {
    EsaAnnotation esa;
    esa.span = c.span;
    esa.toponym = JoinSurfaces(tokens.subspan(c.span.first, c.span.last - c.span.first + 1));
    if (c.introducer && *c.introducer >= floor && introducers.Contains(tokens[*c.introducer])) {
      const std::size_t intro = *c.introducer;
      std::span<const Token> link = tokens.subspan(intro + 1, c.span.first - intro - 1);
      bool fits = link.empty() || (link.size() == 1 && (link[0].pos == Pos::kPrep || IsContraction(link[0]))) ||
                  (link.size() == 2 && link[0].pos == Pos::kPrep && link[1].pos == Pos::kDet);
      if (fits) {
        esa.introducer = Lemma(tokens[intro]);
        esa.span.first = intro;
        if (intro > floor && tokens[intro - 1].pos == Pos::kDet) esa.span.first = intro - 1;
      }
    }
    floor = c.span.last + 1;
    esas.push_back(std::move(esa));
  }
  return esas;
}

std::vector<EsrAnnotation> RecognizeEsr(std::span<const Token> tokens, std::span<const EsaAnnotation> esas,
                                        const RelationMarkers &markers) {
  std::vector<EsrAnnotation> esrs;
  std::size_t floor = 0;
  for (const EsaAnnotation &esa : esas) {
    if (auto match = markers.MatchBefore(tokens, esa.span.first, floor)) {
      esrs.push_back({{esa.span.first - match->length, esa.span.last}, match->marker, esa});
    }
    floor = esa.span.last + 1;
  }
  return esrs;
}

EsaAnnotation ValidateEsa(EsaAnnotation esa, const Gazetteer &gazetteer, const Ontology *ontology) {
  esa.validated = false;
  esa.gazetteer_type.reset();
  esa.position.reset();
  esa.alternatives.clear();
  std::vector<const GazetteerEntry *> hits = gazetteer.Lookup(esa.toponym);
  if (hits.empty()) return esa;
  esa.validated = true;
  auto take = [&](const GazetteerEntry &e) {
    esa.gazetteer_type = e.feature_type;
    esa.position = GeoPosition{e.lat, e.lon};
  };
  if (hits.size() == 1) {
    take(*hits.front());
    return esa;
  }
  if (esa.introducer) {
    const std::string intro = NormalizeTerm(*esa.introducer);
    std::vector<std::string> intro_concepts;
    if (ontology != nullptr) intro_concepts = ontology->FindByTerm(intro);
    for (const GazetteerEntry *hit : hits) {
      const std::string type = NormalizeTerm(hit->feature_type);
      bool agrees = type == intro;
      if (!agrees && !intro_concepts.empty()) {
        std::vector<std::string> type_concepts = ontology->FindByTerm(type);
        agrees = std::any_of(type_concepts.begin(), type_concepts.end(), [&](const std::string &id) {
          return std::binary_search(intro_concepts.begin(), intro_concepts.end(), id);
        });
      }
      if (agrees) {
        take(*hit);
        return esa;
      }
    }
  }
  for (const GazetteerEntry *hit : hits) esa.alternatives.push_back(*hit);
  return esa;
}

std::vector<TermAssociation> ExtractTermAssociations(std::span<const EsaAnnotation> esas) {
  std::map<std::tuple<std::string, std::string, bool>, std::size_t> counts;
  for (const EsaAnnotation &esa : esas) {
    if (!esa.introducer) continue;
    std::string term = NormalizeTerm(*esa.introducer);
    if (term.empty()) continue;
    ++counts[{esa.toponym, term, esa.validated}];
  }
  std::vector<TermAssociation> rows;
  for (const auto &[key, n] : counts) {
    rows.push_back({std::get<0>(key), std::get<1>(key), n, std::get<2>(key)});
  }
  return rows;
}

EntityTyper::EntityTyper(const Ontology &ontology) : ontology_(ontology), depths_(ontology.Depths()) {}

TypingResult EntityTyper::Type(const std::optional<std::string> &introducer,
                               const std::optional<std::string> &gazetteer_type) const {
  std::set<std::string> matches;
  for (const auto *source : {&introducer, &gazetteer_type}) {
    if (!source->has_value()) continue;
    std::string key = NormalizeTerm(**source);
    if (key.empty()) continue;
    for (std::string &id : ontology_.FindByTerm(key)) matches.insert(std::move(id));
  }
  TypingResult result;
  int best_depth = -1;
  for (const std::string &id : matches) {  // sorted, so the first deepest is the smallest id
    auto it = depths_.find(id);
    int depth = it == depths_.end() ? 0 : it->second;
    if (depth > best_depth) {
      best_depth = depth;
      result.concept_id = id;
      result.ambiguous = false;
    } else if (depth == best_depth) {
      result.ambiguous = true;
    }
  }
  result.typed = result.concept_id.has_value();
  return result;
}

TypingResult TypeEntity(const EsaAnnotation &esa, const Ontology &ontology) {
  return EntityTyper(ontology).Type(esa.introducer, esa.gazetteer_type);
}

DocumentAnnotations AnnotateDocument(std::string doc_name, std::string_view input,
                                     const SpatialResources &resources) {
  static const Lexicon kEmptyLexicon;
  static const IntroducerLexicon kNoIntroducers;
  const Lexicon &lexicon = resources.lexicon != nullptr ? *resources.lexicon : kEmptyLexicon;
  const IntroducerLexicon &introducers = resources.introducers != nullptr ? *resources.introducers : kNoIntroducers;

  DocumentAnnotations doc;
  doc.doc = std::move(doc_name);
  doc.tokens = Tag(Tokenize(input), lexicon);
  std::vector<SpatialCandidate> candidates = MarkCandidates(doc.tokens, introducers);
  doc.esas = RecognizeEsa(doc.tokens, candidates, introducers);
  if (resources.gazetteer != nullptr) {
    for (EsaAnnotation &esa : doc.esas) esa = ValidateEsa(std::move(esa), *resources.gazetteer, resources.ontology);
  }
  if (resources.relation_markers != nullptr) {
    doc.esrs = RecognizeEsr(doc.tokens, doc.esas, *resources.relation_markers);
  }
  return doc;
}

std::vector<AnnotationRow> ToRows(const DocumentAnnotations &doc, const EntityTyper *typer) {
  std::vector<AnnotationRow> rows;
  auto row = [&](std::string kind, const TokenSpan &span, const EsaAnnotation &esa) {
    AnnotationRow r;
    r.doc = Clean(doc.doc);
    r.start = doc.tokens[span.first].start;
    r.end = doc.tokens[span.last].end;
    r.kind = std::move(kind);
    r.introducer = Clean(esa.introducer.value_or(""));
    r.toponym = Clean(esa.toponym);
    r.validated = esa.validated;
    r.type = Clean(esa.gazetteer_type.value_or(""));
    if (typer != nullptr) r.concept_id = typer->Type(esa.introducer, esa.gazetteer_type).concept_id.value_or("");
    rows.push_back(std::move(r));
  };
  for (const EsaAnnotation &esa : doc.esas) row("ESA", esa.span, esa);
  for (const EsrAnnotation &esr : doc.esrs) row("ESR", esr.span, esr.inner);
  std::stable_sort(rows.begin(), rows.end(), [](const AnnotationRow &a, const AnnotationRow &b) {
    return std::tie(a.start, a.end, a.kind) < std::tie(b.start, b.end, b.kind);
  });
  return rows;
}

std::string FormatAnnotationDump(std::span<const AnnotationRow> rows) {
  std::ostringstream out;
  for (const AnnotationRow &r : rows) {
    out << r.doc << '\t' << r.start << '\t' << r.end << '\t' << r.kind << '\t' << r.introducer << '\t' << r.toponym
        << '\t' << (r.validated ? 1 : 0) << '\t' << r.type << '\t' << r.concept_id << '\n';
  }
  return out.str();
}

namespace {

std::size_t ParseCount(const std::string &field, std::size_t line) {
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || end != field.data() + field.size() || field.empty()) {
    throw Error(ErrorCode::kMalformedInput, "bad number '" + field + "'", line);
  }
  return value;
}

bool ParseFlag(const std::string &field, std::size_t line) {
  if (field == "1") return true;
  if (field == "0") return false;
  throw Error(ErrorCode::kMalformedInput, "flag must be 0 or 1, got '" + field + "'", line);
}

}  // namespace

std::vector<AnnotationRow> ParseAnnotationDump(std::string_view tsv) {
  std::vector<AnnotationRow> rows;
  std::size_t number = 0;
  for (std::string line : text::Split(tsv, '\n')) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f = text::Split(line, '\t');
    if (f.size() != 9) throw Error(ErrorCode::kMalformedInput, "annotation row needs 9 fields", number);
    if (f[3] != "ESA" && f[3] != "ESR") throw Error(ErrorCode::kMalformedInput, "kind must be ESA or ESR", number);
    if (f[5].empty()) throw Error(ErrorCode::kMalformedInput, "empty toponym", number);
    rows.push_back({f[0], ParseCount(f[1], number), ParseCount(f[2], number), f[3], f[4], f[5],
                    ParseFlag(f[6], number), f[7], f[8]});
  }
  return rows;
}

std::string FormatAssociations(std::span<const TermAssociation> associations) {
  std::ostringstream out;
  for (const TermAssociation &a : associations) {
    out << Clean(a.toponym) << '\t' << Clean(a.term) << '\t' << a.occurrences << '\t' << (a.toponym_validated ? 1 : 0)
        << '\n';
  }
  return out.str();
}

std::vector<TermAssociation> ParseAssociations(std::string_view tsv) {
  std::vector<TermAssociation> rows;
  std::size_t number = 0;
  for (std::string line : text::Split(tsv, '\n')) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> f = text::Split(line, '\t');
    if (f.size() != 4) throw Error(ErrorCode::kMalformedInput, "association row needs 4 fields", number);
    TermAssociation a{f[0], f[1], ParseCount(f[2], number), ParseFlag(f[3], number)};
    if (a.occurrences == 0) throw Error(ErrorCode::kMalformedInput, "occurrences must be at least 1", number);
    rows.push_back(std::move(a));
  }
  return rows;
}

}  // namespace geonto
