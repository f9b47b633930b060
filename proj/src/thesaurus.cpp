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

#include "geonto/thesaurus.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "geonto/error.hpp"
#include "geonto/text.hpp"

namespace geonto {

Thesaurus Thesaurus::Parse(std::string_view data) {
  Thesaurus thesaurus;
  std::optional<VedetteEntry> current;
  auto flush = [&] {
    if (current) thesaurus.Add(std::move(*current));
    current.reset();
  };
  std::size_t number = 0;
  for (const std::string &raw : text::Split(data, '\n')) {
    ++number;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::Trim(line).empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') continue;
    std::vector<std::string> fields = text::Split(line, '\t');
    for (std::string &f : fields) f = text::CollapseWhitespace(f);
    const std::string &tag = fields[0];
    if (tag == "V") {
      if (current) throw Error(ErrorCode::kMalformedRecord, "V line inside a record (missing blank line?)", number);
      if (fields.size() != 3 || fields[1].empty()) {
        throw Error(ErrorCode::kMalformedRecord, "V needs a label and a geo flag", number);
      }
      if (fields[2] != "0" && fields[2] != "1") {
        throw Error(ErrorCode::kMalformedRecord, "geo flag must be 0 or 1", number);
      }
      current = VedetteEntry{fields[1], {}, {}, fields[2] == "1"};
    } else if (tag == "EP" || tag == "TG") {
      if (!current) throw Error(ErrorCode::kMalformedRecord, tag + " line before its V line", number);
      if (fields.size() != 2 || fields[1].empty()) {
        throw Error(ErrorCode::kMalformedRecord, tag + " needs exactly one term", number);
      }
      if (tag == "TG") {
        current->generic_terms.insert(fields[1]);
      } else if (NormalizeTerm(fields[1]) != NormalizeTerm(current->label)) {
        current->employed_for.insert(fields[1]);
      }
    } else {
      throw Error(ErrorCode::kMalformedRecord, "unknown line type '" + tag + "'", number);
    }
  }
  flush();
  return thesaurus;
}

void Thesaurus::Add(VedetteEntry entry) {
  const std::size_t index = entries_.size();
  std::set<std::string> keys{NormalizeTerm(entry.label)};
  for (const std::string &t : entry.employed_for) keys.insert(NormalizeTerm(t));
  for (const std::string &k : keys) reverse_index_[k].push_back(index);
  entries_.push_back(std::move(entry));
}

const std::vector<std::size_t> &Thesaurus::Lookup(std::string_view normalized_key) const {
  static const std::vector<std::size_t> kNone;
  auto it = reverse_index_.find(normalized_key);
  return it == reverse_index_.end() ? kNone : it->second;
}

std::vector<const VedetteEntry *> ResolveVedette(const Thesaurus &thesaurus, std::string_view qualifier) {
  std::vector<const VedetteEntry *> found;
  for (std::size_t i : thesaurus.Lookup(NormalizeTerm(qualifier))) found.push_back(&thesaurus.entries()[i]);
  return found;
}

std::set<std::string> CurrentTermList(const VedetteEntry &entry) {
  std::set<std::string> terms{NormalizeTerm(entry.label)};
  for (const std::string &t : entry.employed_for) terms.insert(NormalizeTerm(t));
  return terms;
}

std::set<std::string> GeographicSenseFilter(const Thesaurus &thesaurus, const std::set<std::string> &markers,
                                            int max_depth) {
  std::set<std::string> marker_keys;
  for (const std::string &m : markers) marker_keys.insert(NormalizeTerm(m));
  std::map<std::string, std::vector<const VedetteEntry *>> by_label;
  for (const VedetteEntry &e : thesaurus.entries()) by_label[NormalizeTerm(e.label)].push_back(&e);

  std::set<std::string> flagged;
  for (const VedetteEntry &entry : thesaurus.entries()) {
    if (entry.geographic_subdivision) {
      flagged.insert(entry.label);
      continue;
    }
    std::set<std::string> frontier;
    for (const std::string &g : entry.generic_terms) frontier.insert(NormalizeTerm(g));
    std::set<std::string> seen = frontier;
    for (int depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
      bool hit = std::any_of(frontier.begin(), frontier.end(), [&](const std::string &g) { return marker_keys.count(g); });
      if (hit) {
        flagged.insert(entry.label);
        break;
      }
      std::set<std::string> next;
      for (const std::string &g : frontier) {
        auto it = by_label.find(g);
        if (it == by_label.end()) continue;
        for (const VedetteEntry *broader : it->second) {
          for (const std::string &gg : broader->generic_terms) {
            std::string key = NormalizeTerm(gg);
            if (seen.insert(key).second) next.insert(key);
          }
        }
      }
      frontier = std::move(next);
    }
  }
  return flagged;
}

std::string_view OutcomeName(EnrichmentOutcome outcome) {
  switch (outcome) {
    case EnrichmentOutcome::kAttached: return "Attached";
    case EnrichmentOutcome::kNoVedette: return "NoVedette";
    case EnrichmentOutcome::kNoEquivalence: return "NoEquivalence";
    case EnrichmentOutcome::kAlreadyConcept: return "AlreadyConcept";
  }
  return "NoVedette";
}

std::vector<Qualifier> OrderQualifiers(const std::vector<Qualifier> &qualifiers) {
  std::map<std::string, std::size_t> merged;
  for (const Qualifier &q : qualifiers) {
    std::string key = NormalizeTerm(q.term);
    if (!key.empty()) merged[key] += q.count;
  }
  std::vector<Qualifier> ordered;
  for (auto &[term, count] : merged) ordered.push_back({term, count});
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Qualifier &a, const Qualifier &b) { return a.count > b.count; });
  return ordered;
}

namespace {

struct Candidate {
  const VedetteEntry *vedette = nullptr;
  const LeafCluster *cluster = nullptr;
  std::size_t count = 0;
  int depth = 0;
};

// True when `a` should be preferred over `b`.
bool Better(const Candidate &a, const Candidate &b) {
  if (b.cluster == nullptr) return true;
  if (a.count != b.count) return a.count > b.count;
  if (a.depth != b.depth) return a.depth > b.depth;
  return a.cluster->representative < b.cluster->representative;
}

}  // namespace

EnrichResult Enrich(const Ontology &ontology, const std::vector<Qualifier> &qualifiers, const Thesaurus &thesaurus,
                    const EnrichOptions &options) {
  EnrichResult result{ontology, {}};
  Ontology &onto = result.ontology;
  std::vector<LeafCluster> clusters = LeafClusters(onto, options.include_associated_terms);
  auto depths = onto.Depths();

  for (const Qualifier &q : OrderQualifiers(qualifiers)) {
    EnrichmentDecision decision;
    decision.qualifier = q.term;
    if (!onto.FindByTerm(q.term).empty()) {
      decision.outcome = EnrichmentOutcome::kAlreadyConcept;
      result.decisions.push_back(std::move(decision));
      continue;
    }
    std::vector<const VedetteEntry *> vedettes = ResolveVedette(thesaurus, q.term);
    if (options.allowed_vedettes) {
      std::erase_if(vedettes, [&](const VedetteEntry *v) { return !options.allowed_vedettes->count(v->label); });
    }
    if (vedettes.empty()) {
      decision.outcome = EnrichmentOutcome::kNoVedette;
      result.decisions.push_back(std::move(decision));
      continue;
    }

    Candidate best;
    for (const VedetteEntry *v : vedettes) {
      const std::set<std::string> terms = CurrentTermList(*v);
      for (const LeafCluster &c : clusters) {
        Candidate candidate{v, &c, 0, depths.at(c.representative)};
        for (const std::string &t : terms) candidate.count += c.member_terms.count(t);
        if (candidate.count > 0 && Better(candidate, best)) best = candidate;
      }
    }
    if (best.cluster == nullptr) {
      decision.resolved_vedette = vedettes.front()->label;
      decision.outcome = EnrichmentOutcome::kNoEquivalence;
      result.decisions.push_back(std::move(decision));
      continue;
    }
    decision.resolved_vedette = best.vedette->label;
    decision.best_cluster = best.cluster->representative;
    decision.equivalence_count = best.count;
    if (best.count < std::max<std::size_t>(1, options.min_equivalences)) {
      decision.outcome = EnrichmentOutcome::kNoEquivalence;
      result.decisions.push_back(std::move(decision));
      continue;
    }

    std::string id = onto.AddConcept(best.cluster->representative, text::Capitalize(q.term), Origin::kEnrichment);
    for (const std::string &t : CurrentTermList(*best.vedette)) onto.AddAssociatedTerm(id, t);
    decision.created_concept = id;
    decision.outcome = EnrichmentOutcome::kAttached;
    result.decisions.push_back(std::move(decision));
    if (!options.static_clusters) {
      clusters = LeafClusters(onto, options.include_associated_terms);
      depths = onto.Depths();
    }
  }
  return result;
}

std::string FormatDecisions(const std::vector<EnrichmentDecision> &decisions) {
  std::ostringstream out;
  for (const EnrichmentDecision &d : decisions) {
    out << d.qualifier << '\t' << OutcomeName(d.outcome) << '\t' << d.resolved_vedette.value_or("") << '\t'
        << d.best_cluster.value_or("") << '\t' << d.equivalence_count << '\n';
  }
  return out.str();
}

}  // namespace geonto
