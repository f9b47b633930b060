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

#ifndef GEONTO_ONTOLOGY_HPP_
#define GEONTO_ONTOLOGY_HPP_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace geonto {

// Where a concept or relation came from. Concepts built from document
// structure, from definition text, or added by thesaurus enrichment.
enum class Origin { kStructure, kLanguage, kEnrichment };

std::string_view OriginName(Origin origin);
Origin ParseOrigin(std::string_view name);

struct RelationKind {
  enum class Type { kIsA, kPartOf, kNamed };

  Type type = Type::kIsA;
  std::string label;  // only for kNamed

  static RelationKind IsA() { return {Type::kIsA, {}}; }
  static RelationKind PartOf() { return {Type::kPartOf, {}}; }
  static RelationKind Named(std::string label) { return {Type::kNamed, std::move(label)}; }

  // "isa", "partof" or "named:<label>".
  std::string ToString() const;
  static RelationKind Parse(std::string_view text);

  auto operator<=>(const RelationKind &) const = default;
};

struct Relation {
  std::string source;
  std::string target;
  RelationKind kind;
  Origin origin = Origin::kStructure;
};

// A concept is identified by its qualified path: the display names of its
// ancestors from the root, joined by '/'. Children of Top have a one-segment
// path. The path keeps homonyms found at different places of a document
// apart and traces each concept back to where it was read.
struct Concept {
  std::string id;
  std::string display_name;
  std::optional<std::string> definition;
  std::set<std::string> associated_terms;
  Origin origin = Origin::kStructure;
  std::optional<std::string> reference;

  bool operator==(const Concept &) const = default;
};

struct PropertyAttachment {
  std::string concept_id;
  std::string label;  // verbatim surface form

  auto operator<=>(const PropertyAttachment &) const = default;
};

enum class AddOutcome { kAdded, kDuplicate, kPartOfCycleSkipped };

// A parent concept and those of its children that are leaves, the matching
// unit used by enrichment.
struct LeafCluster {
  std::string representative;
  std::vector<std::string> members;
  std::set<std::string> member_terms;  // normalized

  bool operator==(const LeafCluster &) const = default;
};

class Ontology {
 public:
  static constexpr std::string_view kTop = "Top";

  Ontology();

  // Creates (or returns the existing) concept `display_name` under `parent`
  // and records the child->parent IsA edge.
  std::string AddConcept(std::string_view parent, std::string_view display_name,
                         Origin origin,
                         std::optional<std::string> definition = std::nullopt);

  // Set semantics on (source, kind, target). IsA edges closing a cycle throw;
  // PartOf edges closing a part-of cycle are skipped and reported.
  AddOutcome AddRelation(std::string_view source, std::string_view target,
                         const RelationKind &kind, Origin origin);

  bool AddAssociatedTerm(std::string_view id, std::string_view term);
  bool AddProperty(std::string_view id, std::string_view label);
  void SetDefinition(std::string_view id, std::string definition);
  void SetReference(std::string_view id, std::string reference);

  bool Contains(std::string_view id) const;
  const Concept &Get(std::string_view id) const;
  const std::map<std::string, Concept, std::less<>> &concepts() const { return concepts_; }
  const std::vector<Relation> &relations() const { return relations_; }
  const std::vector<PropertyAttachment> &properties() const { return properties_; }
  std::size_t size() const { return concepts_.size(); }

  // Children through IsA or PartOf edges, sorted.
  std::vector<std::string> Children(std::string_view id) const;
  std::vector<std::string> IsAParents(std::string_view id) const;
  bool IsLeaf(std::string_view id) const;
  bool HasIsAPath(std::string_view from, std::string_view to) const;
  // Longest IsA path from each concept up to Top (Top itself is 0).
  std::map<std::string, int, std::less<>> Depths() const;

  // Concepts whose normalized display name or associated term equals
  // `normalized_term`, sorted by id.
  std::vector<std::string> FindByTerm(std::string_view normalized_term) const;

  std::vector<Relation> SortedRelations() const;

  friend bool operator==(const Ontology &a, const Ontology &b);

 private:
  friend Ontology Deserialize(std::string_view data);

  Concept &Mutable(std::string_view id);
  void InsertConcept(Concept concept_value);
  bool HasPartOfPath(std::string_view from, std::string_view to) const;

  using RelationKey = std::tuple<std::string, std::string, RelationKind>;

  std::map<std::string, Concept, std::less<>> concepts_;
  std::vector<Relation> relations_;
  std::set<RelationKey> relation_keys_;
  std::map<std::string, std::set<std::string>, std::less<>> isa_parents_;
  std::map<std::string, std::set<std::string>, std::less<>> partof_targets_;
  std::map<std::string, std::set<std::string>, std::less<>> children_;
  std::vector<PropertyAttachment> properties_;
  std::set<PropertyAttachment> property_keys_;
};

// One cluster per non-root concept having at least one leaf child; sorted by
// representative id. Member terms are the normalized display names (and,
// when `include_associated_terms`, associated terms) of the representative
// and its leaf children.
std::vector<LeafCluster> LeafClusters(const Ontology &ontology,
                                      bool include_associated_terms = true);

// Line-oriented TSV form, deterministic:
//   C  path  origin  definition
//   F  path  reference
//   T  path  associated_term
//   R  source  kind  target  origin
//   P  path  property
// Fields escape '\\', tab, CR and LF as \\ \t \r \n.
std::string Serialize(const Ontology &ontology);
Ontology Deserialize(std::string_view data);

// `source<TAB>kind<TAB>target` per relation, sorted.
std::string ExportTriples(const Ontology &ontology);

}  // namespace geonto

#endif  // GEONTO_ONTOLOGY_HPP_
