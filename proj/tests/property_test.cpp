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

// Randomized invariant checks. Every generator is seeded, so failures are
// reproducible; the seed is printed with each failing case.

#include <gtest/gtest.h>

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "geonto/error.hpp"
#include "geonto/normalize.hpp"
#include "geonto/ontology.hpp"
#include "geonto/pattern.hpp"
#include "geonto/spatial.hpp"
#include "geonto/text.hpp"
#include "geonto/thesaurus.hpp"
#include "support.hpp"

namespace geonto {
namespace {

using Rng = std::mt19937;

const std::vector<std::string> kWords = {"aven",  "antre",  "gouffre", "grotte", "abîme", "caverne", "col",
                                         "pic",   "lac",    "mont",    "crête",  "sommet", "route",  "chemin",
                                         "sentier", "étang", "mare",   "glacier", "névé",  "cime"};

template <typename T>
const T &Pick(Rng &rng, const std::vector<T> &v) {
  return v[rng() % v.size()];
}

std::size_t Uniform(Rng &rng, std::size_t lo, std::size_t hi) { return lo + rng() % (hi - lo + 1); }

bool Coin(Rng &rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

std::string Inflect(Rng &rng, const std::string &word) {
  std::string w = Coin(rng, 0.3) ? word + "s" : word;
  return Coin(rng, 0.5) ? text::Capitalize(w) : w;
}

std::vector<std::string> Ids(const Ontology &o) {
  std::vector<std::string> ids;
  for (const auto &[id, c] : o.concepts()) ids.push_back(id);
  return ids;
}

// Kahn's algorithm over IsA edges; true when every concept gets ordered.
bool IsAIsAcyclic(const Ontology &o) {
  std::map<std::string, std::size_t> indegree;
  std::map<std::string, std::vector<std::string>> out;
  for (const auto &[id, c] : o.concepts()) indegree[id] = 0;
  for (const Relation &r : o.relations()) {
    if (r.kind != RelationKind::IsA()) continue;
    out[r.source].push_back(r.target);
    ++indegree[r.target];
  }
  std::deque<std::string> ready;
  for (const auto &[id, d] : indegree) {
    if (d == 0) ready.push_back(id);
  }
  std::size_t ordered = 0;
  while (!ready.empty()) {
    std::string id = ready.front();
    ready.pop_front();
    ++ordered;
    for (const std::string &t : out[id]) {
      if (--indegree[t] == 0) ready.push_back(t);
    }
  }
  return ordered == o.size();
}

bool Reaches(const std::map<std::string, std::vector<std::string>> &isa, const std::string &from,
             const std::string &to) {
  std::set<std::string> seen{from};
  std::deque<std::string> queue{from};
  while (!queue.empty()) {
    std::string id = queue.front();
    queue.pop_front();
    if (id == to) return true;
    auto it = isa.find(id);
    if (it == isa.end()) continue;
    for (const std::string &t : it->second) {
      if (seen.insert(t).second) queue.push_back(t);
    }
  }
  return false;
}

TEST(OntologyProperty, IsAStaysAcyclicUnderRandomMutation) {
  Rng rng(1001);
  Ontology o;
  std::vector<std::string> ids{std::string(Ontology::kTop)};
  std::set<std::string> known{std::string(Ontology::kTop)};
  std::map<std::string, std::vector<std::string>> isa;
  std::size_t cycles_rejected = 0;
  for (int step = 1; step <= 10000; ++step) {
    int op = static_cast<int>(rng() % 10);
    if (op < 3 || ids.size() < 3) {
      const std::string parent = Pick(rng, ids);
      std::string id = o.AddConcept(parent, Pick(rng, kWords) + std::to_string(rng() % 50), Origin::kStructure);
      if (known.insert(id).second) {
        ids.push_back(id);
        isa[id].push_back(parent);
      }
    } else {
      const std::string &a = Pick(rng, ids);
      const std::string &b = Pick(rng, ids);
      RelationKind kind = op < 8 ? RelationKind::IsA() : RelationKind::PartOf();
      try {
        if (o.AddRelation(a, b, kind, Origin::kLanguage) == AddOutcome::kAdded && kind == RelationKind::IsA()) {
          isa[a].push_back(b);
        }
      } catch (const Error &e) {
        ASSERT_EQ(e.code(), ErrorCode::kIsACycle);
        // Only a genuine cycle may be refused.
        ASSERT_TRUE(a == b || Reaches(isa, b, a)) << a << " -> " << b;
        ++cycles_rejected;
      }
    }
    if (step % 1000 == 0) ASSERT_TRUE(IsAIsAcyclic(o)) << "after step " << step;
  }
  EXPECT_GT(cycles_rejected, 0u);
  EXPECT_TRUE(IsAIsAcyclic(o));
}

std::string RandomText(Rng &rng, std::size_t max_len) {
  static const std::vector<std::string> pieces = {"a", "é", "Œ", " ", "\t", "\n", "\\", "'", "’", "z", "-", "ç", "K"};
  std::string s;
  std::size_t n = Uniform(rng, 0, max_len);
  for (std::size_t i = 0; i < n; ++i) s += Pick(rng, pieces);
  return s;
}

Ontology RandomOntology(Rng &rng, std::size_t max_concepts) {
  Ontology o;
  std::size_t n = Uniform(rng, 0, max_concepts);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> ids = Ids(o);
    std::string name = Inflect(rng, Pick(rng, kWords));
    if (Coin(rng, 0.2)) name += " d'" + text::Capitalize(Pick(rng, kWords));
    std::optional<std::string> definition;
    if (Coin(rng, 0.3)) definition = RandomText(rng, 12);
    Origin origin = static_cast<Origin>(rng() % 3);
    std::string id = o.AddConcept(Pick(rng, ids), name, origin, definition);
    if (Coin(rng, 0.3)) o.AddAssociatedTerm(id, Inflect(rng, Pick(rng, kWords)));
    if (Coin(rng, 0.2)) o.AddProperty(id, RandomText(rng, 8));
    if (Coin(rng, 0.1)) o.SetReference(id, "valueName");
  }
  std::vector<std::string> ids = Ids(o);
  for (std::size_t i = 0; i < n / 3; ++i) {
    RelationKind kind = Coin(rng, 0.5) ? RelationKind::PartOf() : RelationKind::Named("a-pour-" + Pick(rng, kWords));
    const std::string &a = Pick(rng, ids);
    const std::string &b = Pick(rng, ids);
    if (a != b) o.AddRelation(a, b, kind, Origin::kLanguage);
  }
  return o;
}

TEST(OntologyProperty, SerializeRoundTrip) {
  for (unsigned seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    Ontology o = RandomOntology(rng, 25);
    std::string text = Serialize(o);
    Ontology back = Deserialize(text);
    ASSERT_EQ(back, o) << "seed " << seed;
    ASSERT_EQ(Serialize(back), text) << "seed " << seed;
  }
}

Thesaurus RandomThesaurus(Rng &rng) {
  Thesaurus t;
  std::size_t n = Uniform(rng, 1, 8);
  for (std::size_t i = 0; i < n; ++i) {
    VedetteEntry e;
    e.label = Inflect(rng, Pick(rng, kWords));
    std::size_t ep = Uniform(rng, 0, 5);
    for (std::size_t k = 0; k < ep; ++k) {
      std::string term = Inflect(rng, Pick(rng, kWords));
      if (term != e.label) e.employed_for.insert(term);
    }
    e.geographic_subdivision = Coin(rng, 0.5);
    t.Add(std::move(e));
  }
  return t;
}

std::vector<Qualifier> RandomQualifiers(Rng &rng, std::size_t max_count) {
  std::vector<Qualifier> q;
  std::size_t n = Uniform(rng, 1, max_count);
  for (std::size_t i = 0; i < n; ++i) q.push_back({Inflect(rng, Pick(rng, kWords)), Uniform(rng, 1, 4)});
  return q;
}

// Structure-only ontology for enrichment: leaves under a handful of parents.
Ontology RandomHierarchy(Rng &rng, std::size_t max_concepts) {
  Ontology o;
  std::size_t n = Uniform(rng, 1, max_concepts);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> ids = Ids(o);
    std::string id = o.AddConcept(Pick(rng, ids), text::Capitalize(Pick(rng, kWords)), Origin::kStructure);
    if (Coin(rng, 0.2)) o.AddAssociatedTerm(id, Pick(rng, kWords));
  }
  return o;
}

TEST(EnrichProperty, OnlyAddsLeavesAndKeepsExistingStructure) {
  for (unsigned seed = 0; seed < 50; ++seed) {
    Rng rng(5000 + seed);
    Ontology before = RandomHierarchy(rng, 12);
    Thesaurus thesaurus = RandomThesaurus(rng);
    EnrichResult r = Enrich(before, RandomQualifiers(rng, 8), thesaurus);
    const Ontology &after = r.ontology;
    for (const auto &[id, c] : after.concepts()) {
      if (before.Contains(id)) {
        ASSERT_EQ(c, before.Get(id)) << "seed " << seed << " " << id;
      } else {
        ASSERT_EQ(c.origin, Origin::kEnrichment) << "seed " << seed;
        ASSERT_TRUE(after.Children(id).empty()) << "seed " << seed << " " << id;
      }
    }
    for (const auto &[id, c] : before.concepts()) ASSERT_TRUE(after.Contains(id));
    std::set<std::tuple<std::string, std::string, std::string>> old_edges, kept_edges;
    for (const Relation &x : before.relations()) old_edges.insert({x.source, x.kind.ToString(), x.target});
    for (const Relation &x : after.relations()) {
      if (before.Contains(x.source) && before.Contains(x.target)) kept_edges.insert({x.source, x.kind.ToString(), x.target});
    }
    ASSERT_EQ(kept_edges, old_edges) << "seed " << seed;
    for (const EnrichmentDecision &d : r.decisions) {
      if (d.outcome == EnrichmentOutcome::kAttached) {
        ASSERT_GE(d.equivalence_count, 1u);
        ASSERT_TRUE(d.best_cluster.has_value());
      } else {
        ASSERT_FALSE(d.created_concept.has_value());
      }
    }
  }
}

// Independent re-statement of enrichment: every (vedette, cluster) pair is
// enumerated and ranked from scratch after each attachment.
std::vector<EnrichmentDecision> BruteForceEnrich(Ontology o, const std::vector<Qualifier> &raw,
                                                 const Thesaurus &thesaurus) {
  std::map<std::string, std::size_t> merged;
  for (const Qualifier &q : raw) merged[NormalizeTerm(q.term)] += q.count;
  std::vector<std::pair<std::string, std::size_t>> order(merged.begin(), merged.end());
  std::stable_sort(order.begin(), order.end(), [](const auto &a, const auto &b) { return a.second > b.second; });

  std::vector<EnrichmentDecision> out;
  for (const auto &[q, count] : order) {
    EnrichmentDecision d;
    d.qualifier = q;
    bool known = false;
    for (const auto &[id, c] : o.concepts()) {
      if (id == "Top") continue;
      known = known || NormalizeTerm(c.display_name) == q;
      for (const std::string &t : c.associated_terms) known = known || NormalizeTerm(t) == q;
    }
    if (known) {
      d.outcome = EnrichmentOutcome::kAlreadyConcept;
      out.push_back(d);
      continue;
    }
    std::vector<const VedetteEntry *> vedettes;
    for (const VedetteEntry &e : thesaurus.entries()) {
      bool hit = NormalizeTerm(e.label) == q;
      for (const std::string &t : e.employed_for) hit = hit || NormalizeTerm(t) == q;
      if (hit) vedettes.push_back(&e);
    }
    if (vedettes.empty()) {
      d.outcome = EnrichmentOutcome::kNoVedette;
      out.push_back(d);
      continue;
    }

    // Children through any IsA/PartOf edge; leaves have none.
    std::map<std::string, std::set<std::string>> children;
    for (const Relation &r : o.relations()) {
      if (r.kind == RelationKind::IsA() || r.kind == RelationKind::PartOf()) children[r.target].insert(r.source);
    }
    std::function<int(const std::string &)> depth = [&](const std::string &id) {
      int best = 0;
      for (const Relation &r : o.relations()) {
        if (r.kind == RelationKind::IsA() && r.source == id) best = std::max(best, 1 + depth(r.target));
      }
      return best;
    };
    struct Pair {
      std::size_t count;
      int depth;
      std::string rep;
      std::size_t vedette_index;
    };
    std::vector<Pair> pairs;
    for (std::size_t vi = 0; vi < vedettes.size(); ++vi) {
      std::set<std::string> list{NormalizeTerm(vedettes[vi]->label)};
      for (const std::string &t : vedettes[vi]->employed_for) list.insert(NormalizeTerm(t));
      for (const auto &[rep, kids] : children) {
        if (rep == "Top") continue;
        std::set<std::string> members;
        auto add = [&](const std::string &id) {
          members.insert(NormalizeTerm(o.Get(id).display_name));
          for (const std::string &t : o.Get(id).associated_terms) members.insert(NormalizeTerm(t));
        };
        bool any_leaf = false;
        for (const std::string &k : kids) {
          if (children.count(k) == 0) {
            any_leaf = true;
            add(k);
          }
        }
        if (!any_leaf) continue;
        add(rep);
        std::size_t n = 0;
        for (const std::string &t : list) n += members.count(t);
        if (n > 0) pairs.push_back({n, depth(rep), rep, vi});
      }
    }
    if (pairs.empty()) {
      d.resolved_vedette = vedettes.front()->label;
      d.outcome = EnrichmentOutcome::kNoEquivalence;
      out.push_back(d);
      continue;
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair &a, const Pair &b) {
      return std::tie(b.count, b.depth, a.rep, a.vedette_index) < std::tie(a.count, a.depth, b.rep, b.vedette_index);
    });
    const Pair &best = pairs.front();
    const VedetteEntry &v = *vedettes[best.vedette_index];
    d.resolved_vedette = v.label;
    d.best_cluster = best.rep;
    d.equivalence_count = best.count;
    d.outcome = EnrichmentOutcome::kAttached;
    d.created_concept = o.AddConcept(best.rep, text::Capitalize(q), Origin::kEnrichment);
    o.AddAssociatedTerm(*d.created_concept, NormalizeTerm(v.label));
    for (const std::string &t : v.employed_for) o.AddAssociatedTerm(*d.created_concept, NormalizeTerm(t));
    out.push_back(d);
  }
  return out;
}

TEST(EnrichProperty, MatchesBruteForceOracle) {
  int instances = 0;
  int attached = 0;
  for (unsigned seed = 0; seed < 400; ++seed) {
    Rng rng(9000 + seed);
    Ontology o = RandomHierarchy(rng, 11);
    std::vector<Qualifier> qualifiers = RandomQualifiers(rng, 10);
    if (LeafClusters(o).size() > 10) continue;
    Thesaurus thesaurus = RandomThesaurus(rng);
    ++instances;
    std::vector<EnrichmentDecision> expected = BruteForceEnrich(o, qualifiers, thesaurus);
    std::vector<EnrichmentDecision> actual = Enrich(o, qualifiers, thesaurus).decisions;
    ASSERT_EQ(actual, expected) << "seed " << 9000 + seed;
    for (const EnrichmentDecision &d : actual) attached += d.outcome == EnrichmentOutcome::kAttached;
  }
  EXPECT_GT(instances, 300);
  EXPECT_GT(attached, 50);
}

TEST(EnrichProperty, Deterministic) {
  for (unsigned seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    Ontology o = RandomHierarchy(rng, 10);
    Thesaurus t = RandomThesaurus(rng);
    std::vector<Qualifier> q = RandomQualifiers(rng, 6);
    EnrichResult a = Enrich(o, q, t);
    EnrichResult b = Enrich(o, q, t);
    ASSERT_EQ(a.decisions, b.decisions);
    ASSERT_EQ(Serialize(a.ontology), Serialize(b.ontology));
  }
}

// Random French-looking travel prose.
std::string RandomProse(Rng &rng, std::size_t sentences) {
  static const std::vector<std::string> intro = {"lac", "col", "pic", "mont", "vallée", "quartier", "route", "cabane"};
  static const std::vector<std::string> topo = {"Artouste", "Ossau", "Pau", "Bious", "Emile Zola", "Anéou", "Marais"};
  static const std::vector<std::string> marker = {"au sud de", "près de", "au cœur de", "au nord de"};
  static const std::vector<std::string> filler = {"nous", "marchons", "vers", "et", "puis", "longtemps", "voit"};
  static const std::vector<std::string> det = {"le", "la", "un", "les"};
  std::string out;
  for (std::size_t s = 0; s < sentences; ++s) {
    std::string sentence = Coin(rng, 0.5) ? "Nous" : "Ensuite";
    std::size_t parts = Uniform(rng, 1, 4);
    for (std::size_t p = 0; p < parts; ++p) {
      int kind = static_cast<int>(rng() % 5);
      std::string place = Pick(rng, topo);
      std::string link = (place[0] == 'A' || place[0] == 'O' || place[0] == 'E') ? " d'" : " de ";
      if (kind == 0) sentence += " " + Pick(rng, filler);
      if (kind == 1) sentence += " " + place;
      if (kind == 2) sentence += " " + Pick(rng, det) + " " + Pick(rng, intro) + link + place;
      if (kind == 3) sentence += " " + Pick(rng, marker) + " la " + Pick(rng, intro) + link + place;
      if (kind == 4) sentence += " ,";
    }
    out += sentence + (Coin(rng, 0.8) ? ". " : ".\n\n");
  }
  return out;
}

struct SpatialFixture {
  Lexicon lexicon = testing::ShippedLexicon();
  IntroducerLexicon introducers = testing::ShippedIntroducers();
  RelationMarkers markers = testing::ShippedRelationMarkers();
  Gazetteer gazetteer = Gazetteer::Parse(ReadFile(testing::TestDataDir() / "gazetteer.tsv"));
  SpatialResources Resources() const { return {&lexicon, &introducers, &markers, &gazetteer, nullptr}; }
};

const SpatialFixture &Spatial() {
  static const SpatialFixture f;
  return f;
}

bool IsSpace(char c) { return c == ' ' || c == '\n' || c == '\t' || c == '\r'; }

TEST(NlpProperty, TokensCoverAllNonWhitespace) {
  for (unsigned seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    std::string text = RandomProse(rng, 4) + RandomText(rng, 20);
    std::vector<Token> tokens = Tokenize(text);
    std::string joined, squeezed;
    std::size_t previous_end = 0;
    for (const Token &t : tokens) {
      ASSERT_LT(t.start, t.end);
      ASSERT_GE(t.start, previous_end);
      ASSERT_EQ(text.substr(t.start, t.end - t.start), t.surface);
      for (std::size_t i = previous_end; i < t.start; ++i) ASSERT_TRUE(IsSpace(text[i])) << "seed " << seed;
      ASSERT_EQ(t.capitalized, text::StartsWithUpper(t.surface));
      previous_end = t.end;
      joined += t.surface;
    }
    for (char c : text) {
      if (!IsSpace(c)) squeezed += c;
    }
    ASSERT_EQ(joined, squeezed) << "seed " << seed;
  }
}

TEST(NlpProperty, TagIsTotalAndChunksAreOrderedAndNominal) {
  const Lexicon &lex = Spatial().lexicon;
  for (unsigned seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    std::vector<Token> tokens = testing::TagText(RandomProse(rng, 5), lex);
    for (const Token &t : tokens) ASSERT_TRUE(t.lemma && t.pos);
    std::vector<TermChunk> chunks = ChunkTerms(tokens, &lex);
    for (std::size_t i = 0; i < chunks.size(); ++i) {
      ASSERT_LE(chunks[i].first, chunks[i].last);
      ASSERT_LT(chunks[i].last, tokens.size());
      if (i > 0) ASSERT_GT(chunks[i].first, chunks[i - 1].last) << "seed " << seed;
      bool nominal = false;
      for (std::size_t k = chunks[i].first; k <= chunks[i].last; ++k) nominal = nominal || tokens[k].IsNominal();
      ASSERT_TRUE(nominal);
    }
  }
}

TEST(PatternProperty, EstUnMatchesEqualExhaustiveAlignment) {
  static const std::vector<std::string> nouns = {"aven", "grotte", "gouffre", "voie de communication", "lac", "route"};
  const Lexicon &lex = Spatial().lexicon;
  Pattern pattern = CompilePattern("TERM lemma=est lemma=un TERM -> HYPONYMIE est-un R0");
  int total = 0;
  for (unsigned seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    std::string text = "un " + Pick(rng, nouns);
    std::size_t n = Uniform(rng, 0, 4);
    for (std::size_t i = 0; i < n; ++i) {
      int kind = static_cast<int>(rng() % 3);
      if (kind == 0) text += " est un " + Pick(rng, nouns);
      if (kind == 1) text += " et " + Pick(rng, nouns);
      if (kind == 2) text += " est une " + Pick(rng, nouns);
    }
    std::vector<Token> tokens = testing::TagText(text, lex);
    std::vector<TermChunk> chunks = ChunkTerms(tokens, &lex);

    // Every alignment: a chunk, then est, then un/une, then a chunk.
    std::vector<std::pair<std::size_t, std::size_t>> expected;
    for (const TermChunk &a : chunks) {
      std::size_t k = a.last + 1;
      if (k + 2 >= tokens.size() || *tokens[k].lemma != "est" || *tokens[k + 1].lemma != "un") continue;
      for (const TermChunk &b : chunks) {
        if (b.first == k + 2) expected.push_back({a.first, b.last});
      }
    }
    std::vector<PatternMatch> matches = MatchPattern(pattern, tokens, chunks);
    std::vector<std::pair<std::size_t, std::size_t>> actual;
    for (std::size_t i = 0; i < matches.size(); ++i) {
      actual.push_back({matches[i].first, matches[i].last});
      if (i > 0) ASSERT_GT(matches[i].first, matches[i - 1].first);
    }
    ASSERT_EQ(actual, expected) << text;
    total += static_cast<int>(matches.size());
  }
  EXPECT_GT(total, 100);
}

bool Inside(const TokenSpan &inner, const TokenSpan &outer) {
  return outer.first <= inner.first && inner.last <= outer.last;
}

TEST(SpatialProperty, AnnotationsDoNotOverlapAndEsrWrapsOneEsa) {
  for (unsigned seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    DocumentAnnotations d = AnnotateDocument("doc", RandomProse(rng, 6), Spatial().Resources());
    for (std::size_t i = 1; i < d.esas.size(); ++i) ASSERT_GT(d.esas[i].span.first, d.esas[i - 1].span.last);
    for (std::size_t i = 1; i < d.esrs.size(); ++i) ASSERT_GT(d.esrs[i].span.first, d.esrs[i - 1].span.last);
    for (const EsrAnnotation &r : d.esrs) {
      ASSERT_TRUE(Inside(r.inner.span, r.span));
      ASSERT_LT(r.span.first, r.inner.span.first);
      std::size_t wrapped = std::count_if(d.esas.begin(), d.esas.end(),
                                          [&](const EsaAnnotation &e) { return Inside(e.span, r.span); });
      ASSERT_EQ(wrapped, 1u) << "seed " << seed;
    }
    for (const EsaAnnotation &e : d.esas) {
      ASSERT_FALSE(e.toponym.empty());
      if (e.gazetteer_type) ASSERT_TRUE(e.validated);
    }
  }
}

TEST(SpatialProperty, AssociationOccurrencesConserved) {
  for (unsigned seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    DocumentAnnotations d = AnnotateDocument("doc", RandomProse(rng, 8), Spatial().Resources());
    std::map<std::pair<std::string, std::string>, std::size_t> recount;
    for (const EsaAnnotation &e : d.esas) {
      if (e.introducer) ++recount[{e.toponym, NormalizeTerm(*e.introducer)}];
    }
    std::map<std::pair<std::string, std::string>, std::size_t> summed;
    for (const TermAssociation &a : ExtractTermAssociations(d.esas)) {
      ASSERT_GE(a.occurrences, 1u);
      summed[{a.toponym, a.term}] += a.occurrences;
    }
    ASSERT_EQ(summed, recount) << "seed " << seed;
  }
}

TEST(SpatialProperty, EnrichmentNeverUntypes) {
  static const std::vector<std::string> intro = {"lac", "col", "pic", "mont", "vallée", "quartier", "route",
                                                 "cabane", "abîme", "aven", "névé", "cime"};
  for (unsigned seed = 0; seed < 100; ++seed) {
    Rng rng(700 + seed);
    Ontology before = RandomHierarchy(rng, 10);
    Ontology after = before;
    std::size_t additions = Uniform(rng, 1, 5);
    for (std::size_t i = 0; i < additions; ++i) {
      std::vector<std::string> ids = Ids(after);
      std::string id = Pick(rng, ids);
      if (Coin(rng, 0.5)) {
        after.AddConcept(id, text::Capitalize(Pick(rng, intro)), Origin::kEnrichment);
      } else if (id != "Top") {
        after.AddAssociatedTerm(id, Pick(rng, intro));
      }
    }
    EntityTyper typer_before(before);
    EntityTyper typer_after(after);
    for (const std::string &term : intro) {
      for (const std::optional<std::string> &type : {std::optional<std::string>(), std::optional<std::string>("lac")}) {
        if (typer_before.Type(term, type).typed) ASSERT_TRUE(typer_after.Type(term, type).typed) << term;
      }
    }
  }
}

TEST(SpatialProperty, AnnotationDumpDeterministic) {
  Rng rng(42);
  std::string text = RandomProse(rng, 30);
  Ontology o = testing::BuildFixtures({"geo_spec.xml"}, "property_dump");
  EntityTyper typer(o);
  std::string a = FormatAnnotationDump(ToRows(AnnotateDocument("d", text, Spatial().Resources()), &typer));
  std::string b = FormatAnnotationDump(ToRows(AnnotateDocument("d", text, Spatial().Resources()), &typer));
  EXPECT_EQ(a, b);
  EXPECT_EQ(FormatAnnotationDump(ParseAnnotationDump(a)), a);
}

}  // namespace
}  // namespace geonto
