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

#include "geonto/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "geonto/error.hpp"
#include "geonto/nlp.hpp"
#include "geonto/normalize.hpp"
#include "geonto/text.hpp"

namespace geonto {

namespace fs = std::filesystem;

namespace {

const std::set<std::string, std::less<>> kPathKeys = {
    "spec",        "rules",      "lexicon",     "stopwords",   "patterns",          "partie_de",
    "introducers", "relation_markers", "gazetteer", "thesaurus", "geo_markers",     "corpus_dir",
    "ontology",    "enriched_ontology", "ingest_report", "annotations", "associations", "decisions",
    "stats",       "triples"};

const std::map<std::string, std::string, std::less<>> kFlagDefaults = {
    {"static_clusters", "0"},          {"include_unvalidated", "0"},       {"min_equivalences", "1"},
    {"include_associated_terms", "1"}, {"no_edge_for_existing_term", "0"}};

}  // namespace

PipelineConfig PipelineConfig::Load(const fs::path &file) {
  fs::path dir = file.parent_path();
  return FromString(ReadFile(file), dir.empty() ? fs::path(".") : dir);
}

PipelineConfig PipelineConfig::FromString(std::string_view input, fs::path base_dir) {
  PipelineConfig config;
  config.base_dir_ = std::move(base_dir);
  std::size_t number = 0;
  for (const std::string &raw : text::Split(input, '\n')) {
    ++number;
    std::string_view line = text::Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorCode::kConfig, "expected key=value", number);
    try {
      config.Set(text::Trim(line.substr(0, eq)), text::Trim(line.substr(eq + 1)));
    } catch (const Error &e) {
      throw Error(ErrorCode::kConfig, e.what(), number);
    }
  }
  return config;
}

void PipelineConfig::Set(std::string_view key, std::string_view value) {
  if (!kPathKeys.count(key) && !kFlagDefaults.count(key)) {
    throw Error(ErrorCode::kConfig, "unknown key '" + std::string(key) + "'");
  }
  values_[std::string(key)] = std::string(text::Trim(value));
}

void PipelineConfig::Override(std::string_view assignment) {
  std::size_t eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorCode::kConfig, "override must be key=value: '" + std::string(assignment) + "'");
  }
  Set(text::Trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

bool PipelineConfig::Has(std::string_view key) const {
  auto it = values_.find(key);
  return it != values_.end() && !it->second.empty();
}

std::optional<fs::path> PipelineConfig::Path(std::string_view key) const {
  if (!Has(key)) return std::nullopt;
  fs::path p(values_.find(key)->second);
  return p.is_absolute() ? p : base_dir_ / p;
}

fs::path PipelineConfig::RequirePath(std::string_view key) const {
  std::optional<fs::path> p = Path(key);
  if (!p) throw Error(ErrorCode::kConfig, "missing required setting '" + std::string(key) + "'");
  return *p;
}

std::vector<fs::path> PipelineConfig::Paths(std::string_view key) const {
  std::vector<fs::path> paths;
  if (!Has(key)) return paths;
  for (const std::string &part : text::Split(values_.find(key)->second, ',')) {
    std::string_view item = text::Trim(part);
    if (item.empty()) continue;
    fs::path p{std::string(item)};
    paths.push_back(p.is_absolute() ? p : base_dir_ / p);
  }
  return paths;
}

bool PipelineConfig::Flag(std::string_view key) const {
  auto it = values_.find(key);
  std::string value = it != values_.end() ? it->second : kFlagDefaults.at(std::string(key));
  value = text::ToLower(value);
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off" || value.empty()) return false;
  throw Error(ErrorCode::kConfig, "flag '" + std::string(key) + "' is not boolean: '" + value + "'");
}

std::size_t PipelineConfig::Count(std::string_view key) const {
  auto it = values_.find(key);
  const std::string &value = it != values_.end() && !it->second.empty() ? it->second
                                                                         : kFlagDefaults.at(std::string(key));
  std::size_t n = 0;
  auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
  if (ec != std::errc() || end != value.data() + value.size()) {
    throw Error(ErrorCode::kConfig, "setting '" + std::string(key) + "' is not a count: '" + value + "'");
  }
  return n;
}

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in || fs::is_directory(path)) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const fs::path &path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

namespace {

void RequireExisting(const PipelineConfig &config, std::initializer_list<std::string_view> required,
                     std::initializer_list<std::string_view> optional = {}) {
  auto check = [&](std::string_view key, bool must) {
    if (!config.Has(key)) {
      if (must) throw Error(ErrorCode::kConfig, "missing required setting '" + std::string(key) + "'");
      return;
    }
    for (const fs::path &p : config.Paths(key)) {
      if (!fs::exists(p)) {
        throw Error(ErrorCode::kConfig, "'" + std::string(key) + "' does not exist: " + p.string());
      }
    }
  };
  for (std::string_view key : required) check(key, true);
  for (std::string_view key : optional) check(key, false);
}

std::string ReadOptional(const PipelineConfig &config, std::string_view key) {
  std::optional<fs::path> p = config.Path(key);
  return p ? ReadFile(*p) : std::string();
}

Lexicon LoadLexicon(const PipelineConfig &config) {
  return Lexicon::FromTsv(ReadOptional(config, "lexicon"), ReadOptional(config, "stopwords"));
}

}  // namespace

BuildResult CmdBuild(const PipelineConfig &config) {
  RequireExisting(config, {"spec", "rules"}, {"lexicon", "stopwords", "patterns", "partie_de"});
  config.RequirePath("ontology");

  BuildResult result;
  std::vector<ExtractionRule> rules = ParseRules(ReadFile(config.RequirePath("rules")));
  ValidateRules(rules);
  if (rules.empty()) result.warnings.push_back("rule file has no extraction rules");

  for (const fs::path &spec : config.Paths("spec")) {
    StructureNode tree = ParseSpec(ReadFile(spec));
    IngestReport report = ApplyRules(tree, rules, result.ontology);
    for (IngestEvent &e : report.events) {
      if (e.kind == IngestEvent::Kind::kWarning) result.warnings.push_back(spec.filename().string() + ": " + e.detail);
      result.ingest.events.push_back(std::move(e));
    }
    for (QueuedDefinition &d : report.definitions) result.ingest.definitions.push_back(std::move(d));
  }

  const Lexicon lexicon = LoadLexicon(config);
  MarkerSets markers;
  markers.Load(kPartOfMarkers, ReadOptional(config, "partie_de"));
  std::vector<Pattern> patterns = CompilePatternFile(ReadOptional(config, "patterns"));
  IntegrationOptions options;
  options.no_edge_for_existing_term = config.Flag("no_edge_for_existing_term");

  auto note = [&](const IntegrationReport &report, const std::string &where) {
    for (const std::string &w : report.warnings) result.warnings.push_back(where + ": " + w);
  };
  for (const QueuedDefinition &d : result.ingest.definitions) {
    try {
      DefinitionParse parse = ParseDefinition(d.text, d.concept_id, result.ontology, lexicon, markers);
      note(IntegrateDefinition(parse, result.ontology, options), d.concept_id);
      ++result.definitions_integrated;
    } catch (const Error &e) {
      result.warnings.push_back(d.concept_id + ": " + e.what());
    }
  }
  for (const QueuedDefinition &d : result.ingest.definitions) {
    std::vector<Token> tokens = Tag(Tokenize(d.text), lexicon);
    std::vector<TermChunk> chunks = ChunkTerms(tokens, &lexicon);
    for (const Pattern &pattern : patterns) {
      if (pattern.annotation_label != "HYPONYMIE") continue;
      for (const PatternMatch &m : MatchPattern(pattern, tokens, chunks, &markers)) {
        ++result.hyponymy_matches;
        note(IntegrateHyponymy(m, result.ontology), d.concept_id);
      }
    }
  }

  WriteFile(config.RequirePath("ontology"), Serialize(result.ontology));
  if (std::optional<fs::path> report = config.Path("ingest_report")) {
    WriteFile(*report, FormatIngestReport(result.ingest));
  }
  return result;
}

AnnotateResult CmdAnnotate(const PipelineConfig &config) {
  RequireExisting(config, {"corpus_dir", "gazetteer"},
                  {"lexicon", "stopwords", "introducers", "relation_markers", "ontology"});
  config.RequirePath("annotations");
  config.RequirePath("associations");

  const Lexicon lexicon = LoadLexicon(config);
  const IntroducerLexicon introducers = IntroducerLexicon::Parse(ReadOptional(config, "introducers"));
  const RelationMarkers relation_markers = RelationMarkers::Parse(ReadOptional(config, "relation_markers"));
  const Gazetteer gazetteer = Gazetteer::Parse(ReadFile(config.RequirePath("gazetteer")));
  std::optional<Ontology> ontology;
  if (config.Has("ontology")) ontology = Deserialize(ReadFile(config.RequirePath("ontology")));
  std::optional<EntityTyper> typer;
  if (ontology) typer.emplace(*ontology);
  SpatialResources resources{&lexicon, &introducers, &relation_markers, &gazetteer, ontology ? &*ontology : nullptr};

  const fs::path corpus = config.RequirePath("corpus_dir");
  std::vector<fs::path> files;
  for (const auto &entry : fs::recursive_directory_iterator(corpus)) {
    if (!entry.is_directory()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  AnnotateResult result;
  std::vector<EsaAnnotation> all_esas;
  std::size_t failed = 0;
  for (const fs::path &file : files) {
    std::string content;
    try {
      content = ReadFile(file);
    } catch (const Error &e) {
      result.warnings.push_back(std::string("skipped: ") + e.what());
      ++failed;
      continue;
    }
    ++result.documents;
    DocumentAnnotations doc = AnnotateDocument(fs::relative(file, corpus).generic_string(), content, resources);
    for (AnnotationRow &row : ToRows(doc, typer ? &*typer : nullptr)) result.rows.push_back(std::move(row));
    result.esa_count += doc.esas.size();
    result.esr_count += doc.esrs.size();
    for (EsaAnnotation &esa : doc.esas) {
      result.validated_count += esa.validated;
      result.introduced_count += esa.introducer.has_value();
      all_esas.push_back(std::move(esa));
    }
  }
  if (!files.empty() && failed == files.size()) throw Error(ErrorCode::kIo, "no corpus document could be read");
  result.associations = ExtractTermAssociations(all_esas);

  WriteFile(config.RequirePath("annotations"), FormatAnnotationDump(result.rows));
  WriteFile(config.RequirePath("associations"), FormatAssociations(result.associations));
  return result;
}

EnrichResult CmdEnrich(const PipelineConfig &config) {
  RequireExisting(config, {"ontology", "thesaurus", "associations"}, {"geo_markers"});
  config.RequirePath("enriched_ontology");

  Ontology ontology = Deserialize(ReadFile(config.RequirePath("ontology")));
  Thesaurus thesaurus = Thesaurus::Parse(ReadFile(config.RequirePath("thesaurus")));
  const bool include_unvalidated = config.Flag("include_unvalidated");
  std::vector<Qualifier> qualifiers;
  for (const TermAssociation &a : ParseAssociations(ReadFile(config.RequirePath("associations")))) {
    if (a.toponym_validated || include_unvalidated) qualifiers.push_back({a.term, a.occurrences});
  }

  EnrichOptions options;
  options.static_clusters = config.Flag("static_clusters");
  options.min_equivalences = config.Count("min_equivalences");
  options.include_associated_terms = config.Flag("include_associated_terms");
  if (config.Has("geo_markers")) {
    std::set<std::string> markers;
    for (const std::string &raw : text::Split(ReadFile(config.RequirePath("geo_markers")), '\n')) {
      std::string_view line = text::Trim(raw);
      if (!line.empty() && line.front() != '#') markers.insert(std::string(line));
    }
    options.allowed_vedettes = GeographicSenseFilter(thesaurus, markers);
  }

  EnrichResult result = Enrich(ontology, qualifiers, thesaurus, options);
  WriteFile(config.RequirePath("enriched_ontology"), Serialize(result.ontology));
  if (std::optional<fs::path> decisions = config.Path("decisions")) {
    WriteFile(*decisions, FormatDecisions(result.decisions));
  }
  return result;
}

namespace {

PopulationStats Population(std::span<const AnnotationRow> rows, bool validated_only, const Ontology *ontology,
                           const EntityTyper *typer) {
  using Key = std::pair<std::string, std::string>;
  PopulationStats s;
  std::set<Key> distinct, typed_distinct;
  std::map<std::string, std::size_t> terms;
  for (const AnnotationRow &r : rows) {
    if (r.kind != "ESA" || (validated_only && !r.validated)) continue;
    const std::string term = r.introducer.empty() ? std::string() : NormalizeTerm(r.introducer);
    const Key key{text::NormalizeName(r.toponym), term};
    ++s.esa_occurrences;
    distinct.insert(key);
    if (!term.empty()) {
      ++s.term_occurrences;
      ++terms[term];
    }
    bool typed = r.validated && !r.type.empty();
    if (!typed && typer != nullptr) {
      auto as_opt = [](const std::string &v) { return v.empty() ? std::nullopt : std::optional<std::string>(v); };
      typed = typer->Type(as_opt(r.introducer), as_opt(r.type)).typed;
    }
    if (typed) {
      ++s.typed_occurrences;
      typed_distinct.insert(key);
    }
  }
  s.esa_distinct = distinct.size();
  s.typed_distinct = typed_distinct.size();
  s.terms_distinct = terms.size();
  for (const auto &[term, n] : terms) {
    bool common = ontology != nullptr && !ontology->FindByTerm(term).empty();
    (common ? s.terms_common_distinct : s.terms_different_distinct) += 1;
    (common ? s.terms_common_occurrences : s.terms_different_occurrences) += n;
  }
  auto ratio = [](std::size_t a, std::size_t b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); };
  s.typed_distinct_rate = ratio(s.typed_distinct, s.esa_distinct);
  s.typed_occurrence_rate = ratio(s.typed_occurrences, s.esa_occurrences);
  return s;
}

}  // namespace

CorpusStats ComputeStats(std::span<const AnnotationRow> rows, const Ontology *ontology) {
  std::optional<EntityTyper> typer;
  if (ontology != nullptr) typer.emplace(*ontology);
  const EntityTyper *t = typer ? &*typer : nullptr;
  return {Population(rows, false, ontology, t), Population(rows, true, ontology, t)};
}

std::string FormatStats(const CorpusStats &stats) {
  std::ostringstream out;
  out << std::setprecision(6) << std::fixed;
  for (const auto &[name, s] : {std::pair<const char *, const PopulationStats &>{"candidates", stats.candidates},
                                {"validated", stats.validated}}) {
    auto line = [&](const char *metric, auto value) { out << name << '\t' << metric << '\t' << value << '\n'; };
    line("esa_occurrences", s.esa_occurrences);
    line("esa_distinct", s.esa_distinct);
    line("term_occurrences", s.term_occurrences);
    line("terms_distinct", s.terms_distinct);
    line("terms_common_distinct", s.terms_common_distinct);
    line("terms_different_distinct", s.terms_different_distinct);
    line("terms_common_occurrences", s.terms_common_occurrences);
    line("terms_different_occurrences", s.terms_different_occurrences);
    line("typed_occurrences", s.typed_occurrences);
    line("typed_distinct", s.typed_distinct);
    line("typed_distinct_rate", s.typed_distinct_rate);
    line("typed_occurrence_rate", s.typed_occurrence_rate);
  }
  return out.str();
}

CorpusStats CmdStats(const PipelineConfig &config) {
  RequireExisting(config, {"annotations"}, {"ontology"});
  std::vector<AnnotationRow> rows = ParseAnnotationDump(ReadFile(config.RequirePath("annotations")));
  std::optional<Ontology> ontology;
  if (config.Has("ontology")) ontology = Deserialize(ReadFile(config.RequirePath("ontology")));
  CorpusStats stats = ComputeStats(rows, ontology ? &*ontology : nullptr);
  if (std::optional<fs::path> out = config.Path("stats")) WriteFile(*out, FormatStats(stats));
  return stats;
}

std::string CmdExportTriples(const PipelineConfig &config) {
  RequireExisting(config, {"ontology"});
  std::string triples = ExportTriples(Deserialize(ReadFile(config.RequirePath("ontology"))));
  if (std::optional<fs::path> out = config.Path("triples")) WriteFile(*out, triples);
  return triples;
}

}  // namespace geonto
