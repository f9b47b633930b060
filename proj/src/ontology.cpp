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

#include "geonto/ontology.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "geonto/error.hpp"
#include "geonto/normalize.hpp"
#include "geonto/text.hpp"

namespace geonto {

std::string_view OriginName(Origin origin) {
  switch (origin) {
    case Origin::kStructure: return "Structure";
    case Origin::kLanguage: return "Language";
    case Origin::kEnrichment: return "Enrichment";
  }
  return "Structure";
}

Origin ParseOrigin(std::string_view name) {
  if (name == "Structure") return Origin::kStructure;
  if (name == "Language") return Origin::kLanguage;
  if (name == "Enrichment") return Origin::kEnrichment;
  throw Error(ErrorCode::kMalformedInput, "unknown origin '" + std::string(name) + "'");
}

std::string RelationKind::ToString() const {
  switch (type) {
    case Type::kIsA: return "isa";
    case Type::kPartOf: return "partof";
    case Type::kNamed: return "named:" + label;
  }
  return "isa";
}

RelationKind RelationKind::Parse(std::string_view text) {
  if (text == "isa") return IsA();
  if (text == "partof") return PartOf();
  if (text.starts_with("named:") && text.size() > 6) return Named(std::string(text.substr(6)));
  throw Error(ErrorCode::kMalformedInput, "unknown relation kind '" + std::string(text) + "'");
}

Ontology::Ontology() {
  Concept top;
  top.id = std::string(kTop);
  top.display_name = std::string(kTop);
  top.origin = Origin::kStructure;
  InsertConcept(std::move(top));
}

void Ontology::InsertConcept(Concept concept_value) {
  std::string id = concept_value.id;
  concepts_.emplace(id, std::move(concept_value));
}

Concept &Ontology::Mutable(std::string_view id) {
  auto it = concepts_.find(id);
  if (it == concepts_.end()) {
    throw Error(ErrorCode::kUnknownConcept, "no concept '" + std::string(id) + "'");
  }
  return it->second;
}

std::string Ontology::AddConcept(std::string_view parent, std::string_view display_name,
                                 Origin origin, std::optional<std::string> definition) {
  if (!Contains(parent)) {
    throw Error(ErrorCode::kUnknownParent, "no parent '" + std::string(parent) + "'");
  }
  std::string name = text::CollapseWhitespace(display_name);
  if (name.empty()) throw Error(ErrorCode::kEmptyName, "empty concept name");
  if (name.find('/') != std::string::npos) {
    throw Error(ErrorCode::kInvalidName, "concept name contains '/': " + name);
  }
  const bool under_top = parent == kTop;
  if (under_top && name == kTop) {
    throw Error(ErrorCode::kInvalidName, "'Top' is reserved for the root");
  }
  std::string id = under_top ? name : std::string(parent) + "/" + name;
  if (Contains(id)) return id;

  Concept c;
  c.id = id;
  c.display_name = name;
  c.origin = origin;
  if (definition && !definition->empty()) c.definition = std::move(definition);
  InsertConcept(std::move(c));
  AddRelation(id, parent, RelationKind::IsA(), origin);
  return id;
}

AddOutcome Ontology::AddRelation(std::string_view source, std::string_view target,
                                 const RelationKind &kind, Origin origin) {
  if (!Contains(source)) {
    throw Error(ErrorCode::kUnknownConcept, "no concept '" + std::string(source) + "'");
  }
  if (!Contains(target)) {
    throw Error(ErrorCode::kUnknownConcept, "no concept '" + std::string(target) + "'");
  }
  RelationKey key{std::string(source), std::string(target), kind};
  if (relation_keys_.count(key)) return AddOutcome::kDuplicate;

  switch (kind.type) {
    case RelationKind::Type::kIsA:
      if (source == target || HasIsAPath(target, source)) {
        throw Error(ErrorCode::kIsACycle,
                    "is-a " + std::string(source) + " -> " + std::string(target) + " closes a cycle");
      }
      break;
    case RelationKind::Type::kPartOf:
      if (source == target || HasPartOfPath(target, source)) {
        return AddOutcome::kPartOfCycleSkipped;
      }
      break;
    case RelationKind::Type::kNamed:
      if (source == target) {
        throw Error(ErrorCode::kInvalidName, "named relation on a single concept: " + std::string(source));
      }
      break;
  }

  relation_keys_.insert(key);
  relations_.push_back({std::string(source), std::string(target), kind, origin});
  if (kind.type == RelationKind::Type::kIsA) {
    isa_parents_[std::string(source)].insert(std::string(target));
    children_[std::string(target)].insert(std::string(source));
  } else if (kind.type == RelationKind::Type::kPartOf) {
    partof_targets_[std::string(source)].insert(std::string(target));
    children_[std::string(target)].insert(std::string(source));
  }
  return AddOutcome::kAdded;
}

bool Ontology::AddAssociatedTerm(std::string_view id, std::string_view term) {
  Concept &c = Mutable(id);
  std::string value = text::CollapseWhitespace(term);
  if (value.empty() || NormalizeTerm(value) == NormalizeTerm(c.display_name)) return false;
  return c.associated_terms.insert(value).second;
}

bool Ontology::AddProperty(std::string_view id, std::string_view label) {
  Mutable(id);
  if (label.empty()) return false;
  PropertyAttachment p{std::string(id), std::string(label)};
  if (!property_keys_.insert(p).second) return false;
  properties_.push_back(std::move(p));
  return true;
}

void Ontology::SetDefinition(std::string_view id, std::string definition) {
  Concept &c = Mutable(id);
  if (definition.empty()) {
    c.definition.reset();
  } else {
    c.definition = std::move(definition);
  }
}

void Ontology::SetReference(std::string_view id, std::string reference) {
  Concept &c = Mutable(id);
  if (reference.empty()) {
    c.reference.reset();
  } else {
    c.reference = std::move(reference);
  }
}

bool Ontology::Contains(std::string_view id) const { return concepts_.find(id) != concepts_.end(); }

const Concept &Ontology::Get(std::string_view id) const {
  auto it = concepts_.find(id);
  if (it == concepts_.end()) {
    throw Error(ErrorCode::kUnknownConcept, "no concept '" + std::string(id) + "'");
  }
  return it->second;
}

std::vector<std::string> Ontology::Children(std::string_view id) const {
  auto it = children_.find(id);
  if (it == children_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

std::vector<std::string> Ontology::IsAParents(std::string_view id) const {
  auto it = isa_parents_.find(id);
  if (it == isa_parents_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

bool Ontology::IsLeaf(std::string_view id) const {
  auto it = children_.find(id);
  return it == children_.end() || it->second.empty();
}

namespace {

bool Reaches(const std::map<std::string, std::set<std::string>, std::less<>> &up,
             std::string_view from, std::string_view to) {
  if (from == to) return true;
  std::vector<std::string> stack{std::string(from)};
  std::set<std::string> seen{std::string(from)};
  while (!stack.empty()) {
    std::string current = std::move(stack.back());
    stack.pop_back();
    auto it = up.find(current);
    if (it == up.end()) continue;
    for (const std::string &next : it->second) {
      if (next == to) return true;
      if (seen.insert(next).second) stack.push_back(next);
    }
  }
  return false;
}

}  // namespace

bool Ontology::HasIsAPath(std::string_view from, std::string_view to) const {
  return Reaches(isa_parents_, from, to);
}

bool Ontology::HasPartOfPath(std::string_view from, std::string_view to) const {
  return Reaches(partof_targets_, from, to);
}

std::map<std::string, int, std::less<>> Ontology::Depths() const {
  std::map<std::string, int, std::less<>> depth;
  std::function<int(const std::string &)> visit = [&](const std::string &id) -> int {
    auto known = depth.find(id);
    if (known != depth.end()) return known->second;
    int best = 0;
    auto it = isa_parents_.find(id);
    if (it != isa_parents_.end()) {
      for (const std::string &p : it->second) best = std::max(best, visit(p) + 1);
    }
    depth[id] = best;
    return best;
  };
  for (const auto &[id, c] : concepts_) visit(id);
  return depth;
}

std::vector<std::string> Ontology::FindByTerm(std::string_view normalized_term) const {
  std::vector<std::string> found;
  for (const auto &[id, c] : concepts_) {
    if (id == kTop) continue;
    bool hit = NormalizeTerm(c.display_name) == normalized_term;
    for (auto t = c.associated_terms.begin(); !hit && t != c.associated_terms.end(); ++t) {
      hit = NormalizeTerm(*t) == normalized_term;
    }
    if (hit) found.push_back(id);
  }
  return found;
}

std::vector<Relation> Ontology::SortedRelations() const {
  std::vector<Relation> sorted = relations_;
  std::sort(sorted.begin(), sorted.end(), [](const Relation &a, const Relation &b) {
    return std::tie(a.source, a.kind, a.target, a.origin) < std::tie(b.source, b.kind, b.target, b.origin);
  });
  return sorted;
}

bool operator==(const Ontology &a, const Ontology &b) {
  if (a.concepts_ != b.concepts_) return false;
  if (a.property_keys_ != b.property_keys_) return false;
  std::vector<Relation> ra = a.SortedRelations();
  std::vector<Relation> rb = b.SortedRelations();
  if (ra.size() != rb.size()) return false;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    if (ra[i].source != rb[i].source || ra[i].target != rb[i].target || ra[i].kind != rb[i].kind ||
        ra[i].origin != rb[i].origin) {
      return false;
    }
  }
  return true;
}

std::vector<LeafCluster> LeafClusters(const Ontology &ontology, bool include_associated_terms) {
  std::vector<LeafCluster> clusters;
  auto add_terms = [&](LeafCluster &cluster, const Concept &c) {
    cluster.member_terms.insert(NormalizeTerm(c.display_name));
    if (!include_associated_terms) return;
    for (const std::string &t : c.associated_terms) cluster.member_terms.insert(NormalizeTerm(t));
  };
  for (const auto &[id, c] : ontology.concepts()) {
    if (id == Ontology::kTop) continue;
    LeafCluster cluster;
    for (const std::string &child : ontology.Children(id)) {
      if (ontology.IsLeaf(child)) cluster.members.push_back(child);
    }
    if (cluster.members.empty()) continue;
    cluster.representative = id;
    add_terms(cluster, c);
    for (const std::string &m : cluster.members) add_terms(cluster, ontology.Get(m));
    clusters.push_back(std::move(cluster));
  }
  return clusters;
}

namespace {

std::string Escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string Unescape(std::string_view s, std::size_t line) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out.push_back(s[i]);
      continue;
    }
    if (++i == s.size()) throw Error(ErrorCode::kMalformedInput, "dangling escape", line);
    switch (s[i]) {
      case '\\': out.push_back('\\'); break;
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      default: throw Error(ErrorCode::kMalformedInput, "bad escape", line);
    }
  }
  return out;
}

}  // namespace

std::string Serialize(const Ontology &ontology) {
  std::ostringstream out;
  for (const auto &[id, c] : ontology.concepts()) {
    out << "C\t" << Escape(id) << '\t' << OriginName(c.origin) << '\t'
        << Escape(c.definition.value_or("")) << '\n';
  }
  for (const auto &[id, c] : ontology.concepts()) {
    if (c.reference) out << "F\t" << Escape(id) << '\t' << Escape(*c.reference) << '\n';
  }
  for (const auto &[id, c] : ontology.concepts()) {
    for (const std::string &t : c.associated_terms) {
      out << "T\t" << Escape(id) << '\t' << Escape(t) << '\n';
    }
  }
  for (const Relation &r : ontology.SortedRelations()) {
    out << "R\t" << Escape(r.source) << '\t' << Escape(r.kind.ToString()) << '\t' << Escape(r.target)
        << '\t' << OriginName(r.origin) << '\n';
  }
  std::vector<PropertyAttachment> props = ontology.properties();
  std::sort(props.begin(), props.end());
  for (const PropertyAttachment &p : props) {
    out << "P\t" << Escape(p.concept_id) << '\t' << Escape(p.label) << '\n';
  }
  return out.str();
}

Ontology Deserialize(std::string_view data) {
  struct Line {
    std::size_t number;
    std::vector<std::string> fields;
  };
  std::vector<Line> concept_lines, other_lines;
  std::size_t number = 0;
  for (const std::string &raw : text::Split(data, '\n')) {
    ++number;
    if (raw.empty()) continue;
    std::vector<std::string> fields = text::Split(raw, '\t');
    for (std::string &f : fields) f = Unescape(f, number);
    if (fields[0] == "C") {
      concept_lines.push_back({number, std::move(fields)});
    } else {
      other_lines.push_back({number, std::move(fields)});
    }
  }

  auto expect = [](const Line &line, std::size_t n) {
    if (line.fields.size() != n) {
      throw Error(ErrorCode::kMalformedInput,
                  "record '" + line.fields[0] + "' needs " + std::to_string(n) + " fields",
                  line.number);
    }
  };

  Ontology ontology;
  bool saw_top = false;
  // Parents sort before children ("A" < "A/B"), so map order is safe.
  std::sort(concept_lines.begin(), concept_lines.end(),
            [](const Line &a, const Line &b) { return a.fields[1] < b.fields[1]; });
  for (const Line &line : concept_lines) {
    expect(line, 4);
    const std::string &id = line.fields[1];
    try {
      Origin origin = ParseOrigin(line.fields[2]);
      if (id == Ontology::kTop) {
        saw_top = true;
        ontology.Mutable(id).origin = origin;
        ontology.SetDefinition(id, line.fields[3]);
        continue;
      }
      if (id.empty() || ontology.Contains(id)) {
        throw Error(ErrorCode::kMalformedInput, "empty or duplicate concept id");
      }
      std::size_t slash = id.rfind('/');
      std::string parent = slash == std::string::npos ? std::string(Ontology::kTop) : id.substr(0, slash);
      std::string name = slash == std::string::npos ? id : id.substr(slash + 1);
      if (!ontology.Contains(parent)) {
        throw Error(ErrorCode::kMalformedInput, "path prefix '" + parent + "' is not a concept");
      }
      if (name.empty() || text::CollapseWhitespace(name) != name) {
        throw Error(ErrorCode::kMalformedInput, "bad display name in '" + id + "'");
      }
      Concept c;
      c.id = id;
      c.display_name = name;
      c.origin = origin;
      if (!line.fields[3].empty()) c.definition = line.fields[3];
      ontology.InsertConcept(std::move(c));
    } catch (const Error &e) {
      throw Error(ErrorCode::kMalformedInput, e.what(), line.number);
    }
  }
  if (!saw_top) throw Error(ErrorCode::kMalformedInput, "missing Top concept record", 1);

  for (const Line &line : other_lines) {
    const std::string &tag = line.fields[0];
    try {
      if (tag == "F") {
        expect(line, 3);
        ontology.SetReference(line.fields[1], line.fields[2]);
      } else if (tag == "T") {
        expect(line, 3);
        if (!ontology.AddAssociatedTerm(line.fields[1], line.fields[2])) {
          throw Error(ErrorCode::kMalformedInput, "invalid or duplicate associated term");
        }
      } else if (tag == "R") {
        expect(line, 5);
        AddOutcome outcome = ontology.AddRelation(line.fields[1], line.fields[3],
                                                  RelationKind::Parse(line.fields[2]),
                                                  ParseOrigin(line.fields[4]));
        if (outcome != AddOutcome::kAdded) {
          throw Error(ErrorCode::kMalformedInput, "duplicate or cyclic relation");
        }
      } else if (tag == "P") {
        expect(line, 3);
        ontology.AddProperty(line.fields[1], line.fields[2]);
      } else {
        throw Error(ErrorCode::kMalformedInput, "unknown record type '" + tag + "'");
      }
    } catch (const Error &e) {
      throw Error(ErrorCode::kMalformedInput, e.what(), line.number);
    }
  }

  for (const auto &[id, c] : ontology.concepts()) {
    if (id == Ontology::kTop) continue;
    if (!ontology.HasIsAPath(id, Ontology::kTop)) {
      throw Error(ErrorCode::kMalformedInput, "concept '" + id + "' has no is-a path to Top");
    }
  }
  return ontology;
}

std::string ExportTriples(const Ontology &ontology) {
  std::ostringstream out;
  for (const Relation &r : ontology.SortedRelations()) {
    out << r.source << '\t' << r.kind.ToString() << '\t' << r.target << '\n';
  }
  return out.str();
}

}  // namespace geonto
