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

// geonto: build a domain ontology from specification documents, annotate
// spatial entities in a corpus and enrich the ontology from a thesaurus.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "geonto/error.hpp"
#include "geonto/pipeline.hpp"

namespace {

struct CommonOptions {
  std::string config;
  std::vector<std::string> overrides;
};

void AddCommon(CLI::App *cmd, CommonOptions &opts) {
  cmd->add_option("-c,--config", opts.config, "key=value configuration file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--set", opts.overrides, "override a configuration key (key=value)");
}

geonto::PipelineConfig LoadConfig(const CommonOptions &opts) {
  geonto::PipelineConfig config = geonto::PipelineConfig::Load(opts.config);
  for (const std::string &o : opts.overrides) config.Override(o);
  return config;
}

void PrintWarnings(const std::vector<std::string> &warnings) {
  for (const std::string &w : warnings) std::cerr << "warning: " << w << '\n';
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Ontology construction, spatial annotation and thesaurus-based enrichment"};
  app.require_subcommand(1);

  CommonOptions build_opts, annotate_opts, enrich_opts, stats_opts, export_opts;
  bool static_clusters = false;
  bool include_unvalidated = false;
  std::size_t min_equivalences = 0;

  CLI::App *build = app.add_subcommand("build", "ingest spec documents and write the ontology");
  AddCommon(build, build_opts);
  CLI::App *annotate = app.add_subcommand("annotate", "annotate a corpus with spatial entities");
  AddCommon(annotate, annotate_opts);
  CLI::App *enrich = app.add_subcommand("enrich", "enrich the ontology from qualifier terms");
  AddCommon(enrich, enrich_opts);
  enrich->add_flag("--static-clusters", static_clusters, "compute leaf clusters once");
  enrich->add_flag("--include-unvalidated", include_unvalidated, "also use qualifiers of unvalidated toponyms");
  enrich->add_option("--min-equivalences", min_equivalences, "minimum equivalence count to attach");
  CLI::App *stats = app.add_subcommand("stats", "corpus statistics from an annotation dump");
  AddCommon(stats, stats_opts);
  CLI::App *export_triples = app.add_subcommand("export-triples", "print the ontology as triples");
  AddCommon(export_triples, export_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      geonto::BuildResult r = geonto::CmdBuild(LoadConfig(build_opts));
      PrintWarnings(r.warnings);
      std::cout << "concepts\t" << r.ontology.size() << "\nrelations\t" << r.ontology.relations().size()
                << "\ndefinitions_integrated\t" << r.definitions_integrated << "\nhyponymy_matches\t"
                << r.hyponymy_matches << '\n';
    } else if (annotate->parsed()) {
      geonto::AnnotateResult r = geonto::CmdAnnotate(LoadConfig(annotate_opts));
      PrintWarnings(r.warnings);
      std::cout << "documents\t" << r.documents << "\nesa\t" << r.esa_count << "\nesr\t" << r.esr_count
                << "\nvalidated\t" << r.validated_count << "\nassociations\t" << r.associations.size() << '\n';
    } else if (enrich->parsed()) {
      geonto::PipelineConfig config = LoadConfig(enrich_opts);
      if (static_clusters) config.Set("static_clusters", "1");
      if (include_unvalidated) config.Set("include_unvalidated", "1");
      if (enrich->count("--min-equivalences") > 0) config.Set("min_equivalences", std::to_string(min_equivalences));
      geonto::EnrichResult r = geonto::CmdEnrich(config);
      std::cout << geonto::FormatDecisions(r.decisions);
    } else if (stats->parsed()) {
      std::cout << geonto::FormatStats(geonto::CmdStats(LoadConfig(stats_opts)));
    } else if (export_triples->parsed()) {
      geonto::PipelineConfig config = LoadConfig(export_opts);
      std::string triples = geonto::CmdExportTriples(config);
      if (!config.Has("triples")) std::cout << triples;
    }
  } catch (const geonto::Error &e) {
    std::cerr << "error: " << e.what();
    if (e.position() > 0) std::cerr << " (at " << e.position() << ')';
    std::cerr << '\n';
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
