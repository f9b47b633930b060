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

#ifndef GEONTO_TESTS_SUPPORT_HPP_
#define GEONTO_TESTS_SUPPORT_HPP_

#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "geonto/nlp.hpp"
#include "geonto/pattern.hpp"
#include "geonto/pipeline.hpp"
#include "geonto/spatial.hpp"

namespace geonto::testing {

inline std::filesystem::path DataDir() { return GEONTO_DATA_DIR; }
inline std::filesystem::path TestDataDir() { return GEONTO_TEST_DATA_DIR; }

// Fresh, empty scratch directory under the build tree.
inline std::filesystem::path ScratchDir(const std::string &name) {
  std::filesystem::path dir = std::filesystem::path(GEONTO_TEST_OUT_DIR) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline Lexicon ShippedLexicon() {
  return Lexicon::FromTsv(ReadFile(DataDir() / "lexicon.tsv"), ReadFile(DataDir() / "stopwords.txt"));
}

inline MarkerSets ShippedMarkers() {
  MarkerSets markers;
  markers.Load(kPartOfMarkers, ReadFile(DataDir() / "partie_de.txt"));
  return markers;
}

inline IntroducerLexicon ShippedIntroducers() {
  return IntroducerLexicon::Parse(ReadFile(DataDir() / "introducers.txt"));
}

inline RelationMarkers ShippedRelationMarkers() {
  return RelationMarkers::Parse(ReadFile(DataDir() / "relation_markers.txt"));
}

// Config wired to the shipped resources, writing into `out`.
inline PipelineConfig ShippedConfig(const std::filesystem::path &out) {
  PipelineConfig config = PipelineConfig::FromString("", out);
  config.Set("rules", (DataDir() / "rules.tsv").string());
  config.Set("lexicon", (DataDir() / "lexicon.tsv").string());
  config.Set("stopwords", (DataDir() / "stopwords.txt").string());
  config.Set("patterns", (DataDir() / "patterns.txt").string());
  config.Set("partie_de", (DataDir() / "partie_de.txt").string());
  config.Set("introducers", (DataDir() / "introducers.txt").string());
  config.Set("relation_markers", (DataDir() / "relation_markers.txt").string());
  config.Set("ontology", "ontology.tsv");
  config.Set("enriched_ontology", "enriched.tsv");
  config.Set("annotations", "annotations.tsv");
  config.Set("associations", "associations.tsv");
  config.Set("decisions", "decisions.tsv");
  return config;
}

// Builds an ontology from spec fixtures with the shipped rules.
inline Ontology BuildFixtures(const std::vector<std::string> &fixtures, const std::string &scratch) {
  PipelineConfig config = ShippedConfig(ScratchDir(scratch));
  std::string specs;
  for (const std::string &f : fixtures) {
    if (!specs.empty()) specs += ',';
    specs += (TestDataDir() / f).string();
  }
  config.Set("spec", specs);
  return CmdBuild(config).ontology;
}

// Stats of the synthetic corpus under the three typing configurations:
// gazetteer only, with the geographic ontology, and with the ontology
// enriched from the corpus's own qualifiers.
struct Staircase {
  CorpusStats gazetteer;
  CorpusStats ontology;
  CorpusStats enriched;
  AnnotateResult annotated;
  EnrichResult enrichment;
};

inline Staircase RunStaircase(const std::string &scratch) {
  PipelineConfig config = ShippedConfig(ScratchDir(scratch));
  config.Set("spec", (TestDataDir() / "geo_spec.xml").string());
  config.Set("corpus_dir", (TestDataDir() / "synthetic").string());
  config.Set("gazetteer", (TestDataDir() / "synthetic_gazetteer.tsv").string());
  config.Set("thesaurus", (TestDataDir() / "thesaurus.txt").string());
  CmdBuild(config);

  Staircase s;
  PipelineConfig no_ontology = config;
  no_ontology.Set("ontology", "");
  s.annotated = CmdAnnotate(no_ontology);
  s.enrichment = CmdEnrich(config);

  s.gazetteer = CmdStats(no_ontology);
  s.ontology = CmdStats(config);
  PipelineConfig enriched = config;
  enriched.Set("ontology", "enriched.tsv");
  s.enriched = CmdStats(enriched);
  return s;
}

// Rows of synthetic_expected.tsv keyed by "config/population":
// {esa_occurrences, esa_distinct, typed_occurrences, typed_distinct}.
inline std::map<std::string, std::vector<std::size_t>> ExpectedStaircase() {
  std::map<std::string, std::vector<std::size_t>> out;
  std::istringstream in(ReadFile(TestDataDir() / "synthetic_expected.tsv"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string config, population;
    std::vector<std::size_t> values(4);
    row >> config >> population >> values[0] >> values[1] >> values[2] >> values[3];
    out[config + "/" + population] = values;
  }
  return out;
}

inline std::vector<std::size_t> Observed(const PopulationStats &p) {
  return {p.esa_occurrences, p.esa_distinct, p.typed_occurrences, p.typed_distinct};
}

inline std::vector<Token> TagText(std::string_view text, const Lexicon &lexicon) {
  return Tag(Tokenize(text), lexicon);
}

}  // namespace geonto::testing

#endif  // GEONTO_TESTS_SUPPORT_HPP_
