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

#ifndef GEONTO_PIPELINE_HPP_
#define GEONTO_PIPELINE_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geonto/ontology.hpp"
#include "geonto/pattern.hpp"
#include "geonto/spatial.hpp"
#include "geonto/spec_ingest.hpp"
#include "geonto/thesaurus.hpp"

namespace geonto {

// Plain key=value configuration. Relative paths resolve against the
// directory of the config file; an empty value means "unset".
//
// Path keys:
//   spec (comma separated), rules, lexicon, stopwords, patterns, partie_de,
//   introducers, relation_markers, gazetteer, thesaurus, geo_markers,
//   corpus_dir, ontology, enriched_ontology, ingest_report, annotations,
//   associations, decisions, stats, triples
// Flags and defaults:
//   static_clusters=0 include_unvalidated=0 min_equivalences=1
//   include_associated_terms=1 no_edge_for_existing_term=0
class PipelineConfig {
 public:
  static PipelineConfig Load(const std::filesystem::path &file);
  static PipelineConfig FromString(std::string_view text, std::filesystem::path base_dir);

  // Throws Error(kConfig) on unknown keys.
  void Set(std::string_view key, std::string_view value);
  // "key=value"
  void Override(std::string_view assignment);

  bool Has(std::string_view key) const;
  std::optional<std::filesystem::path> Path(std::string_view key) const;
  // Throws Error(kConfig) when unset.
  std::filesystem::path RequirePath(std::string_view key) const;
  std::vector<std::filesystem::path> Paths(std::string_view key) const;
  bool Flag(std::string_view key) const;
  std::size_t Count(std::string_view key) const;

  const std::filesystem::path &base_dir() const { return base_dir_; }

 private:
  std::filesystem::path base_dir_;
  std::map<std::string, std::string, std::less<>> values_;
};

// Throws Error(kIo).
std::string ReadFile(const std::filesystem::path &path);
void WriteFile(const std::filesystem::path &path, std::string_view content);

struct BuildResult {
  Ontology ontology;
  IngestReport ingest;
  std::size_t definitions_integrated = 0;
  std::size_t hyponymy_matches = 0;
  std::vector<std::string> warnings;
};

// Ingests every spec document, integrates queued definitions and hyponymy
// pattern matches found in them, writes `ontology` (and `ingest_report`).
BuildResult CmdBuild(const PipelineConfig &config);

struct AnnotateResult {
  std::vector<AnnotationRow> rows;
  std::vector<TermAssociation> associations;
  std::size_t documents = 0;
  std::size_t esa_count = 0;
  std::size_t esr_count = 0;
  std::size_t validated_count = 0;
  std::size_t introduced_count = 0;
  std::vector<std::string> warnings;
};

// Annotates every regular file of `corpus_dir` in path order; writes
// `annotations` and `associations`.
AnnotateResult CmdAnnotate(const PipelineConfig &config);

// Reads `ontology`, `thesaurus` and `associations`; writes
// `enriched_ontology` and `decisions`. Only validated toponyms contribute
// qualifiers unless include_unvalidated is set.
EnrichResult CmdEnrich(const PipelineConfig &config);

struct PopulationStats {
  std::size_t esa_occurrences = 0;
  std::size_t esa_distinct = 0;
  std::size_t term_occurrences = 0;
  std::size_t terms_distinct = 0;
  std::size_t terms_common_distinct = 0;
  std::size_t terms_different_distinct = 0;
  std::size_t terms_common_occurrences = 0;
  std::size_t terms_different_occurrences = 0;
  std::size_t typed_occurrences = 0;
  std::size_t typed_distinct = 0;
  double typed_distinct_rate = 0;
  double typed_occurrence_rate = 0;

  bool operator==(const PopulationStats &) const = default;
};

// `candidates` covers every ESA, `validated` the gazetteer-validated ones.
struct CorpusStats {
  PopulationStats candidates;
  PopulationStats validated;

  bool operator==(const CorpusStats &) const = default;
};

// A distinct ESA is a (normalized toponym, normalized introducer) pair. An
// ESA is typed when the gazetteer gave it a type or, with an ontology, when
// its introducer or gazetteer type names a concept.
CorpusStats ComputeStats(std::span<const AnnotationRow> rows, const Ontology *ontology);
// population<TAB>metric<TAB>value
std::string FormatStats(const CorpusStats &stats);

// Reads `annotations` and, when set, `ontology`; writes `stats`.
CorpusStats CmdStats(const PipelineConfig &config);

// Reads `ontology`; writes `triples` when set and returns the text.
std::string CmdExportTriples(const PipelineConfig &config);

}  // namespace geonto

#endif  // GEONTO_PIPELINE_HPP_
