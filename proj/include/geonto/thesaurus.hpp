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

#ifndef GEONTO_THESAURUS_HPP_
#define GEONTO_THESAURUS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "geonto/normalize.hpp"
#include "geonto/ontology.hpp"

namespace geonto {

// One controlled-vocabulary record: the preferred term (vedette), the
// non-preferred terms it is employed for, and its broader terms.
struct VedetteEntry {
  std::string label;
  std::set<std::string> employed_for;
  std::set<std::string> generic_terms;
  bool geographic_subdivision = false;

  bool operator==(const VedetteEntry &) const = default;
};

class Thesaurus {
 public:
  // Blank-line separated records:
  //   V<TAB>label<TAB>geo_flag(0|1)
  //   EP<TAB>term     (repeatable)
  //   TG<TAB>term     (repeatable)
  // Throws Error(kMalformedRecord) with the line number.
  static Thesaurus Parse(std::string_view data);

  void Add(VedetteEntry entry);

  const std::vector<VedetteEntry> &entries() const { return entries_; }
  // Indices of entries whose label or employed-for terms normalize to `key`.
  const std::vector<std::size_t> &Lookup(std::string_view normalized_key) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<VedetteEntry> entries_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> reverse_index_;
};

// Entries in which the qualifier appears as label or employed-for term, in
// thesaurus order.
std::vector<const VedetteEntry *> ResolveVedette(const Thesaurus &thesaurus, std::string_view qualifier);

// Normalized label plus normalized employed-for terms.
std::set<std::string> CurrentTermList(const VedetteEntry &entry);

// Labels of vedettes with a geographic sense: flagged for geographic
// subdivision, or reaching one of `markers` through at most `max_depth`
// generic links.
std::set<std::string> GeographicSenseFilter(const Thesaurus &thesaurus, const std::set<std::string> &markers,
                                            int max_depth = 3);

enum class EnrichmentOutcome { kAttached, kNoVedette, kNoEquivalence, kAlreadyConcept };
std::string_view OutcomeName(EnrichmentOutcome outcome);

struct EnrichmentDecision {
  std::string qualifier;  // normalized
  std::optional<std::string> resolved_vedette;
  std::optional<std::string> best_cluster;
  std::size_t equivalence_count = 0;
  EnrichmentOutcome outcome = EnrichmentOutcome::kNoVedette;
  std::optional<std::string> created_concept;

  bool operator==(const EnrichmentDecision &) const = default;
};

struct Qualifier {
  std::string term;
  std::size_t count = 1;
};

struct EnrichOptions {
  // Compute leaf clusters once instead of after every attachment.
  bool static_clusters = false;
  std::size_t min_equivalences = 1;
  bool include_associated_terms = true;
  // When set, only these vedette labels may be used.
  std::optional<std::set<std::string>> allowed_vedettes;
};

struct EnrichResult {
  Ontology ontology;
  std::vector<EnrichmentDecision> decisions;
};

// Merges qualifiers by normalized form and orders them by descending count,
// then lexicographically.
std::vector<Qualifier> OrderQualifiers(const std::vector<Qualifier> &qualifiers);

// For each qualifier not already naming a concept: find its vedettes, score
// every (vedette, leaf cluster) pair by |term list ∩ cluster terms| and
// attach the qualifier as a new leaf under the representative of the best
// cluster. Ties go to the deeper representative, then the smaller id. The
// input ontology is not modified.
EnrichResult Enrich(const Ontology &ontology, const std::vector<Qualifier> &qualifiers,
                    const Thesaurus &thesaurus, const EnrichOptions &options = {});

// qualifier<TAB>outcome<TAB>vedette<TAB>cluster<TAB>count
std::string FormatDecisions(const std::vector<EnrichmentDecision> &decisions);

}  // namespace geonto

#endif  // GEONTO_THESAURUS_HPP_
