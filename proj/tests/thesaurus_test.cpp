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

#include <gtest/gtest.h>

#include <algorithm>

#include "geonto/error.hpp"
#include "geonto/pipeline.hpp"
#include "geonto/thesaurus.hpp"
#include "support.hpp"

namespace geonto {
namespace {

using testing::TestDataDir;

const Thesaurus &Rameau() {
  static const Thesaurus t = Thesaurus::Parse(ReadFile(TestDataDir() / "thesaurus.txt"));
  return t;
}

const VedetteEntry &Entry(std::string_view label) {
  for (const VedetteEntry &e : Rameau().entries()) {
    if (e.label == label) return e;
  }
  throw std::runtime_error("no entry " + std::string(label));
}

std::size_t Intersection(const std::set<std::string> &a, const std::set<std::string> &b) {
  std::size_t n = 0;
  for (const std::string &x : a) n += b.count(x);
  return n;
}

Ontology CaveOntology(std::initializer_list<const char *> leaves) {
  Ontology o;
  std::string g = o.AddConcept(Ontology::kTop, "Grottes", Origin::kStructure);
  for (const char *leaf : leaves) o.AddConcept(g, leaf, Origin::kStructure);
  return o;
}

TEST(Thesaurus, ParsesCaveNotice) {
  const VedetteEntry &g = Entry("Grottes");
  EXPECT_TRUE(g.geographic_subdivision);
  for (const char *t : {"Abîmes", "Antres", "Avens", "Cavernes", "Gouffres", "Spélonques"}) {
    EXPECT_TRUE(g.employed_for.count(t)) << t;
  }
  EXPECT_TRUE(g.generic_terms.count("Relief (géographie)"));
  EXPECT_FALSE(g.employed_for.count("Grottes"));
}

TEST(Thesaurus, EmptyInput) {
  EXPECT_EQ(Thesaurus::Parse("").size(), 0u);
  EXPECT_EQ(Thesaurus::Parse("# only a comment\n\n").size(), 0u);
}

TEST(Thesaurus, DuplicateLabelsBothRetained) {
  EXPECT_EQ(Rameau().Lookup("glacier").size(), 2u);
  std::size_t glaciers = std::count_if(Rameau().entries().begin(), Rameau().entries().end(),
                                       [](const VedetteEntry &e) { return e.label == "Glaciers"; });
  EXPECT_EQ(glaciers, 2u);
}

TEST(Thesaurus, LabelNeverInEmployedFor) {
  Thesaurus t = Thesaurus::Parse("V\tLacs\t1\nEP\tLacs\nEP\tÉtangs\n");
  EXPECT_EQ(t.entries()[0].employed_for, std::set<std::string>{"Étangs"});
}

TEST(Thesaurus, MalformedRecordsReportLine) {
  auto line_of = [](std::string_view data) -> std::size_t {
    try {
      Thesaurus::Parse(data);
    } catch (const Error &e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedRecord);
      return e.position();
    }
    ADD_FAILURE() << data;
    return 0;
  };
  EXPECT_EQ(line_of("EP\tAbîmes\n"), 1u);
  EXPECT_EQ(line_of("V\tGrottes\t1\nEP\tAvens\nV\tCols\t1\n"), 3u);
  EXPECT_EQ(line_of("V\tGrottes\t2\n"), 1u);
  EXPECT_EQ(line_of("V\tGrottes\n"), 1u);
  EXPECT_EQ(line_of("V\tGrottes\t1\nXX\tfoo\n"), 2u);
  EXPECT_EQ(line_of("V\tGrottes\t1\nEP\n"), 2u);
}

TEST(ResolveVedette, EmployedForTerm) {
  std::vector<const VedetteEntry *> v = ResolveVedette(Rameau(), "abîme");
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0]->label, "Grottes");
  EXPECT_EQ(ResolveVedette(Rameau(), "Abîmes").size(), 1u);
}

TEST(ResolveVedette, UnknownAndAmbiguous) {
  EXPECT_TRUE(ResolveVedette(Rameau(), "xyzzy").empty());
  EXPECT_EQ(ResolveVedette(Rameau(), "glacier").size(), 2u);
}

TEST(CurrentTermList, CaveNotice) {
  std::set<std::string> terms = CurrentTermList(Entry("Grottes"));
  for (const char *t : {"grotte", "abîme", "antre", "aven", "caverne", "gouffre"}) EXPECT_TRUE(terms.count(t)) << t;
  EXPECT_TRUE(terms.count("caverne préhistorique"));
  EXPECT_EQ(terms.size(), 1 + Entry("Grottes").employed_for.size());
}

TEST(CurrentTermList, NoEmployedForIsSingleton) {
  EXPECT_EQ(CurrentTermList(Entry("Routes de montagne")), std::set<std::string>{"route de montagne"});
}

TEST(Enrich, AbimeAttachedUnderCaveCluster) {
  // Cluster terms {grotte, antre, aven, cave}: three of them are in the
  // vedette list (grotte, antre, aven).
  Ontology o = CaveOntology({"Antre", "Aven", "Cave"});
  EnrichResult r = Enrich(o, {{"abîme", 1}}, Rameau());
  ASSERT_EQ(r.decisions.size(), 1u);
  const EnrichmentDecision &d = r.decisions[0];
  EXPECT_EQ(d.outcome, EnrichmentOutcome::kAttached);
  EXPECT_EQ(d.resolved_vedette, std::optional<std::string>("Grottes"));
  EXPECT_EQ(d.best_cluster, std::optional<std::string>("Grottes"));
  EXPECT_EQ(d.equivalence_count, 3u);
  ASSERT_EQ(d.created_concept, std::optional<std::string>("Grottes/Abîme"));
  EXPECT_EQ(r.ontology.Get("Grottes/Abîme").origin, Origin::kEnrichment);
  EXPECT_EQ(r.ontology.IsAParents("Grottes/Abîme"), std::vector<std::string>{"Grottes"});
}

TEST(Enrich, CountIsTheSetIntersection) {
  Ontology o = CaveOntology({"Antre", "Aven", "Gouffre"});
  std::size_t oracle = Intersection(CurrentTermList(Entry("Grottes")), LeafClusters(o)[0].member_terms);
  EnrichResult r = Enrich(o, {{"abîme", 1}}, Rameau());
  EXPECT_EQ(r.decisions[0].equivalence_count, oracle);
  EXPECT_EQ(oracle, 4u);
}

TEST(Enrich, NoVedetteLeavesOntologyUnchanged) {
  Ontology o = CaveOntology({"Antre", "Aven"});
  EnrichResult r = Enrich(o, {{"xyzzy", 3}}, Rameau());
  EXPECT_EQ(r.decisions[0].outcome, EnrichmentOutcome::kNoVedette);
  EXPECT_EQ(r.ontology, o);
}

TEST(Enrich, NoEquivalenceLeavesOntologyUnchanged) {
  Ontology o = CaveOntology({"Antre", "Aven"});
  EnrichResult r = Enrich(o, {{"promenade", 1}}, Rameau());
  EXPECT_EQ(r.decisions[0].outcome, EnrichmentOutcome::kNoEquivalence);
  EXPECT_EQ(r.decisions[0].resolved_vedette, std::optional<std::string>("Promenades"));
  EXPECT_FALSE(r.decisions[0].created_concept.has_value());
  EXPECT_EQ(r.ontology, o);
}

TEST(Enrich, ExistingConceptIsAlreadyConcept) {
  Ontology o = CaveOntology({"Antre", "Aven"});
  EnrichResult r = Enrich(o, {{"avens", 2}}, Rameau());
  EXPECT_EQ(r.decisions[0].outcome, EnrichmentOutcome::kAlreadyConcept);
  EXPECT_EQ(r.decisions[0].qualifier, "aven");
  EXPECT_EQ(r.ontology, o);
}

TEST(Enrich, AmbiguousVedetteDisambiguatedByOverlap) {
  Ontology o;
  std::string neige = o.AddConcept(Ontology::kTop, "Neige", Origin::kStructure);
  o.AddConcept(neige, "Névé", Origin::kStructure);
  o.AddConcept(neige, "Firn", Origin::kStructure);
  std::string froid = o.AddConcept(Ontology::kTop, "Stockage", Origin::kStructure);
  o.AddConcept(froid, "Silo", Origin::kStructure);

  // Exhaustive comparison over every (vedette, cluster) pair.
  std::size_t best = 0;
  std::string best_vedette_target;
  std::set<std::string> best_flags;
  for (const VedetteEntry *v : ResolveVedette(Rameau(), "glacier")) {
    for (const LeafCluster &c : LeafClusters(o)) {
      std::size_t n = Intersection(CurrentTermList(*v), c.member_terms);
      if (n > best) {
        best = n;
        best_vedette_target = c.representative;
        best_flags = v->employed_for;
      }
    }
  }
  ASSERT_EQ(best, 1u);
  EXPECT_TRUE(best_flags.count("Névés"));

  EnrichResult r = Enrich(o, {{"glacier", 1}}, Rameau());
  const EnrichmentDecision &d = r.decisions[0];
  EXPECT_EQ(d.outcome, EnrichmentOutcome::kAttached);
  EXPECT_EQ(d.best_cluster, std::optional<std::string>(best_vedette_target));
  EXPECT_EQ(d.equivalence_count, best);
  EXPECT_TRUE(r.ontology.Get(*d.created_concept).associated_terms.count("névé"));
  EXPECT_FALSE(r.ontology.Get(*d.created_concept).associated_terms.count("glacière"));
}

TEST(Enrich, QualifiersProcessedByCountThenName) {
  std::vector<Qualifier> ordered =
      OrderQualifiers({{"caverne", 1}, {"abîme", 1}, {"Spélonques", 5}, {"spélonque", 1}, {"gouffre", 2}});
  std::vector<std::string> terms;
  for (const Qualifier &q : ordered) terms.push_back(q.term);
  EXPECT_EQ(terms, (std::vector<std::string>{"spélonque", "gouffre", "abîme", "caverne"}));
  EXPECT_EQ(ordered[0].count, 6u);
}

TEST(Enrich, LaterSynonymsSeeTheNewConcept) {
  Ontology o = CaveOntology({"Antre", "Aven"});
  EnrichResult r = Enrich(o, {{"abîme", 3}, {"caverne", 1}}, Rameau());
  ASSERT_EQ(r.decisions.size(), 2u);
  EXPECT_EQ(r.decisions[0].outcome, EnrichmentOutcome::kAttached);
  EXPECT_EQ(r.decisions[1].outcome, EnrichmentOutcome::kAlreadyConcept);
}

TEST(Enrich, MinEquivalencesThreshold) {
  Ontology o = CaveOntology({"Antre", "Aven", "Cave"});
  EnrichOptions options;
  options.min_equivalences = 4;
  EXPECT_EQ(Enrich(o, {{"abîme", 1}}, Rameau(), options).decisions[0].outcome, EnrichmentOutcome::kNoEquivalence);
  options.min_equivalences = 3;
  EXPECT_EQ(Enrich(o, {{"abîme", 1}}, Rameau(), options).decisions[0].outcome, EnrichmentOutcome::kAttached);
}

TEST(Enrich, AllowedVedettesRestrictResolution) {
  Ontology o = CaveOntology({"Antre", "Aven"});
  EnrichOptions options;
  options.allowed_vedettes = std::set<std::string>{"Cols (géographie)"};
  EXPECT_EQ(Enrich(o, {{"abîme", 1}}, Rameau(), options).decisions[0].outcome, EnrichmentOutcome::kNoVedette);
}

TEST(Enrich, TieGoesToDeeperRepresentative) {
  Ontology o;
  std::string a = o.AddConcept(Ontology::kTop, "Aa", Origin::kStructure);
  o.AddConcept(a, "Antre", Origin::kStructure);
  std::string z = o.AddConcept(Ontology::kTop, "Zz", Origin::kStructure);
  std::string deep = o.AddConcept(z, "Souterrain", Origin::kStructure);
  o.AddConcept(deep, "Aven", Origin::kStructure);
  EnrichResult r = Enrich(o, {{"abîme", 1}}, Rameau());
  EXPECT_EQ(r.decisions[0].best_cluster, std::optional<std::string>("Zz/Souterrain"));
  // Equal depth: smaller id.
  Ontology flat;
  std::string b = flat.AddConcept(Ontology::kTop, "Bb", Origin::kStructure);
  flat.AddConcept(b, "Aven", Origin::kStructure);
  std::string aa = flat.AddConcept(Ontology::kTop, "Aa", Origin::kStructure);
  flat.AddConcept(aa, "Antre", Origin::kStructure);
  EXPECT_EQ(Enrich(flat, {{"abîme", 1}}, Rameau()).decisions[0].best_cluster, std::optional<std::string>("Aa"));
}

TEST(Enrich, OnlyAddsLeavesAndKeepsExistingStructure) {
  Ontology o = testing::BuildFixtures({"geo_spec.xml"}, "thesaurus_enrich");
  EnrichResult r = Enrich(o, {{"abîme", 1}, {"caverne", 1}, {"cime", 2}, {"corniche", 1}}, Rameau());
  for (const auto &[id, c] : r.ontology.concepts()) {
    if (c.origin == Origin::kEnrichment) EXPECT_TRUE(r.ontology.Children(id).empty()) << id;
    if (o.Contains(id)) EXPECT_EQ(c.display_name, o.Get(id).display_name);
  }
  for (const Relation &rel : o.relations()) {
    EXPECT_TRUE(std::any_of(r.ontology.relations().begin(), r.ontology.relations().end(), [&](const Relation &x) {
      return x.source == rel.source && x.target == rel.target && x.kind == rel.kind;
    }));
  }
  for (const Relation &rel : r.ontology.relations()) {
    if (o.Contains(rel.source) && o.Contains(rel.target)) {
      EXPECT_TRUE(std::any_of(o.relations().begin(), o.relations().end(), [&](const Relation &x) {
        return x.source == rel.source && x.target == rel.target && x.kind == rel.kind;
      }));
    }
  }
  EXPECT_TRUE(r.ontology.Contains("Orographie/Oronyme/Sommet/Cime") ||
              r.ontology.Contains("Orographie/Oronyme/Cime"));
}

TEST(Enrich, Deterministic) {
  Ontology o = testing::BuildFixtures({"geo_spec.xml"}, "thesaurus_det");
  std::vector<Qualifier> q{{"abîme", 1}, {"caverne", 2}, {"corniche", 1}, {"cime", 1}};
  EnrichResult a = Enrich(o, q, Rameau());
  EnrichResult b = Enrich(o, q, Rameau());
  EXPECT_EQ(a.decisions, b.decisions);
  EXPECT_EQ(Serialize(a.ontology), Serialize(b.ontology));
  EXPECT_EQ(FormatDecisions(a.decisions), FormatDecisions(b.decisions));
}

TEST(GeographicSense, GenericMarkerFlags) {
  std::set<std::string> flagged = GeographicSenseFilter(Rameau(), {"Relief (géographie)"});
  EXPECT_TRUE(flagged.count("Grottes"));
  EXPECT_TRUE(flagged.count("Cols (géographie)"));  // subdivision flag
  EXPECT_FALSE(flagged.count("Promenades"));
}

TEST(GeographicSense, NoGenericNoFlag) {
  Thesaurus t = Thesaurus::Parse("V\tBalades\t0\n");
  EXPECT_TRUE(GeographicSenseFilter(t, {"Relief (géographie)"}).empty());
}

TEST(GeographicSense, TransitiveAtDepthTwo) {
  Thesaurus t = Thesaurus::Parse("V\tAvens\t0\nTG\tCavités\n\nV\tCavités\t0\nTG\tRelief\n\nV\tRelief\t0\n");
  EXPECT_TRUE(GeographicSenseFilter(t, {"Relief"}).count("Avens"));
  EXPECT_TRUE(GeographicSenseFilter(t, {"Relief"}).count("Cavités"));
  EXPECT_FALSE(GeographicSenseFilter(t, {"Relief"}, 1).count("Avens"));
  EXPECT_FALSE(GeographicSenseFilter(t, {"Relief"}).count("Relief"));
}

TEST(FormatDecisions, OneTsvLinePerDecision) {
  Ontology o = CaveOntology({"Antre", "Aven", "Cave"});
  EnrichResult r = Enrich(o, {{"abîme", 1}, {"xyzzy", 1}}, Rameau());
  EXPECT_EQ(FormatDecisions(r.decisions), "abîme\tAttached\tGrottes\tGrottes\t3\nxyzzy\tNoVedette\t\t\t0\n");
}

}  // namespace
}  // namespace geonto
