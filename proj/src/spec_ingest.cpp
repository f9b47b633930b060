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

#include "geonto/spec_ingest.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "geonto/error.hpp"
#include "geonto/text.hpp"

namespace geonto {

std::string RuleAction::ToString() const {
  switch (type) {
    case Type::kHyponymy: return "hyponymy";
    case Type::kAssociatedTerm: return "term";
    case Type::kDefinitionField: return "definition";
    case Type::kNamedRelation: return "named:" + label;
  }
  return "hyponymy";
}

std::vector<ExtractionRule> ParseRules(std::string_view input) {
  std::vector<ExtractionRule> rules;
  std::size_t number = 0;
  for (const std::string &raw : text::Split(input, '\n')) {
    ++number;
    std::string_view line = text::Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields = text::Split(line, '\t');
    if (fields.size() != 4) {
      throw Error(ErrorCode::kRuleSyntax, "expected scope, source, target and action", number);
    }
    for (std::string &f : fields) f = std::string(text::Trim(f));
    ExtractionRule rule{fields[0], fields[1], fields[2], {}};
    const std::string &action = fields[3];
    if (action == "hyponymy") {
      rule.action.type = RuleAction::Type::kHyponymy;
    } else if (action == "term") {
      rule.action.type = RuleAction::Type::kAssociatedTerm;
    } else if (action == "definition") {
      rule.action.type = RuleAction::Type::kDefinitionField;
    } else if (action.starts_with("named:") && action.size() > 6) {
      rule.action = {RuleAction::Type::kNamedRelation, action.substr(6)};
    } else {
      throw Error(ErrorCode::kRuleSyntax, "unknown action '" + action + "'", number);
    }
    try {
      ValidateRules({rule});
    } catch (const Error &e) {
      throw Error(ErrorCode::kRuleSyntax, e.what(), number);
    }
    rules.push_back(std::move(rule));
  }
  ValidateRules(rules);
  return rules;
}

void ValidateRules(const std::vector<ExtractionRule> &rules) {
  std::set<std::string> definition_scopes;
  for (const ExtractionRule &r : rules) {
    if (r.scope_tag.empty() || r.source_tag.empty() || r.target_tag.empty()) {
      throw Error(ErrorCode::kRuleSyntax, "rule tags must be non-empty");
    }
    if (!r.has_target() && r.action.type != RuleAction::Type::kHyponymy) {
      throw Error(ErrorCode::kRuleSyntax, "only hyponymy rules may omit the target");
    }
    if (r.action.type == RuleAction::Type::kDefinitionField &&
        !definition_scopes.insert(r.scope_tag).second) {
      throw Error(ErrorCode::kRuleSyntax, "more than one definition rule for scope '" + r.scope_tag + "'");
    }
  }
}

std::size_t IngestReport::Count(IngestEvent::Kind kind) const {
  std::size_t n = 0;
  for (const IngestEvent &e : events) n += e.kind == kind;
  return n;
}

namespace {

class RuleApplier {
 public:
  RuleApplier(const std::vector<ExtractionRule> &rules, Ontology &ontology)
      : ontology_(ontology) {
    for (const ExtractionRule &r : rules) by_scope_[r.scope_tag].push_back(&r);
  }

  IngestReport Run(const StructureNode &root) {
    Visit(root, std::string(Ontology::kTop), "");
    return std::move(report_);
  }

 private:
  void Event(IngestEvent::Kind kind, std::string detail, const std::string &path, std::size_t offset) {
    report_.events.push_back({kind, std::move(detail), path, offset});
  }

  static std::vector<const StructureNode *> ChildrenTagged(const StructureNode &node, const std::string &tag) {
    std::vector<const StructureNode *> out;
    for (const StructureNode &c : node.children) {
      if (c.tag == tag) out.push_back(&c);
    }
    return out;
  }

  // Creates or locates a concept, recording it when it is new. Returns
  // nullopt (with a warning) for names the ontology rejects.
  std::optional<std::string> Locate(const std::string &parent, const StructureNode &named,
                                    const std::string &path) {
    const std::string child_path = path + "/" + named.tag;
    if (named.text_content.empty()) {
      Event(IngestEvent::Kind::kWarning, "RuleTagMissing: <" + named.tag + "> has no text", child_path,
            named.byte_offset);
      return std::nullopt;
    }
    if (named.text_content.find('/') != std::string::npos) {
      Event(IngestEvent::Kind::kWarning, "name contains '/': " + named.text_content, child_path,
            named.byte_offset);
      return std::nullopt;
    }
    std::string expected = parent == Ontology::kTop ? named.text_content : parent + "/" + named.text_content;
    const bool fresh = !ontology_.Contains(expected);
    std::string id;
    try {
      id = ontology_.AddConcept(parent, named.text_content, Origin::kStructure);
    } catch (const Error &e) {
      Event(IngestEvent::Kind::kWarning, e.what(), child_path, named.byte_offset);
      return std::nullopt;
    }
    if (fresh) {
      Event(IngestEvent::Kind::kConcept, id, child_path, named.byte_offset);
      Event(IngestEvent::Kind::kRelation, id + "\tisa\t" + parent, child_path, named.byte_offset);
    }
    return id;
  }

  std::optional<std::string> FindByName(const std::string &name) const {
    std::string key = text::NormalizeName(name);
    for (const auto &[id, c] : ontology_.concepts()) {
      if (id != Ontology::kTop && text::NormalizeName(c.display_name) == key) return id;
    }
    return std::nullopt;
  }

  void Visit(const StructureNode &node, const std::string &enclosing, const std::string &parent_path) {
    const std::string path = parent_path + "/" + node.tag;
    std::string scope_concept = enclosing;
    auto rules_it = by_scope_.find(node.tag);
    if (rules_it != by_scope_.end()) {
      std::optional<std::string> source_concept;
      std::vector<std::string> created_targets;
      const ExtractionRule *definition_rule = nullptr;

      for (const ExtractionRule *rule : rules_it->second) {
        if (rule->action.type == RuleAction::Type::kDefinitionField) {
          definition_rule = rule;
          continue;
        }
        auto sources = ChildrenTagged(node, rule->source_tag);
        auto targets = rule->has_target() ? ChildrenTagged(node, rule->target_tag)
                                          : std::vector<const StructureNode *>{};
        if (sources.empty() || (rule->has_target() && targets.empty())) {
          Event(IngestEvent::Kind::kWarning,
                "RuleTagMissing: <" + (sources.empty() ? rule->source_tag : rule->target_tag) +
                    "> absent under <" + node.tag + ">",
                path, node.byte_offset);
          continue;
        }
        if (sources.size() > 1) {
          Event(IngestEvent::Kind::kWarning, "several <" + rule->source_tag + ">, using the first", path,
                node.byte_offset);
        }
        std::optional<std::string> source = Locate(enclosing, *sources.front(), path);
        if (!source) continue;
        if (!source_concept) source_concept = source;

        for (const StructureNode *t : targets) {
          const std::string target_path = path + "/" + t->tag;
          switch (rule->action.type) {
            case RuleAction::Type::kHyponymy:
              if (auto child = Locate(*source, *t, path)) {
                ontology_.SetReference(*child, t->tag);
                created_targets.push_back(*child);
              }
              break;
            case RuleAction::Type::kAssociatedTerm:
              if (!t->text_content.empty() && ontology_.AddAssociatedTerm(*source, t->text_content)) {
                Event(IngestEvent::Kind::kTerm, *source + "\t" + t->text_content, target_path, t->byte_offset);
              }
              break;
            case RuleAction::Type::kNamedRelation: {
              std::optional<std::string> target = FindByName(t->text_content);
              if (!target) target = Locate(enclosing, *t, path);
              if (!target || *target == *source) break;
              RelationKind kind = RelationKind::Named(rule->action.label);
              if (ontology_.AddRelation(*source, *target, kind, Origin::kStructure) == AddOutcome::kAdded) {
                Event(IngestEvent::Kind::kRelation, *source + "\t" + kind.ToString() + "\t" + *target,
                      target_path, t->byte_offset);
              }
              break;
            }
            case RuleAction::Type::kDefinitionField:
              break;
          }
        }
      }

      if (definition_rule != nullptr) ApplyDefinition(node, *definition_rule, enclosing, source_concept,
                                                       created_targets, path);
      if (source_concept) scope_concept = *source_concept;
    }
    for (const StructureNode &child : node.children) Visit(child, scope_concept, path);
  }

  void ApplyDefinition(const StructureNode &node, const ExtractionRule &rule, const std::string &enclosing,
                       const std::optional<std::string> &source_concept,
                       const std::vector<std::string> &created_targets, const std::string &path) {
    auto texts = ChildrenTagged(node, rule.target_tag);
    if (texts.empty()) {
      Event(IngestEvent::Kind::kWarning, "RuleTagMissing: <" + rule.target_tag + "> absent under <" + node.tag + ">",
            path, node.byte_offset);
      return;
    }
    std::optional<std::string> owner;
    std::set<std::string> distinct_targets(created_targets.begin(), created_targets.end());
    if (distinct_targets.size() == 1) {
      owner = *distinct_targets.begin();
    } else if (source_concept) {
      owner = source_concept;
    } else {
      auto sources = ChildrenTagged(node, rule.source_tag);
      if (sources.empty()) {
        Event(IngestEvent::Kind::kWarning, "RuleTagMissing: <" + rule.source_tag + "> absent under <" + node.tag + ">",
              path, node.byte_offset);
        return;
      }
      owner = Locate(enclosing, *sources.front(), path);
    }
    if (!owner) return;
    std::vector<std::string> parts;
    for (const StructureNode *t : texts) {
      if (!t->text_content.empty()) parts.push_back(t->text_content);
    }
    if (parts.empty()) return;
    std::string definition = text::Join(parts, " ");
    ontology_.SetDefinition(*owner, definition);
    const StructureNode *first = texts.front();
    Event(IngestEvent::Kind::kDefinition, *owner + "\t" + definition, path + "/" + first->tag, first->byte_offset);
    report_.definitions.push_back({*owner, definition, path + "/" + first->tag, first->byte_offset});
  }

  Ontology &ontology_;
  std::map<std::string, std::vector<const ExtractionRule *>> by_scope_;
  IngestReport report_;
};

const char *KindName(IngestEvent::Kind kind) {
  switch (kind) {
    case IngestEvent::Kind::kConcept: return "concept";
    case IngestEvent::Kind::kRelation: return "relation";
    case IngestEvent::Kind::kTerm: return "term";
    case IngestEvent::Kind::kDefinition: return "definition";
    case IngestEvent::Kind::kWarning: return "warning";
  }
  return "warning";
}

}  // namespace

IngestReport ApplyRules(const StructureNode &tree, const std::vector<ExtractionRule> &rules, Ontology &ontology) {
  ValidateRules(rules);
  return RuleApplier(rules, ontology).Run(tree);
}

std::string FormatIngestReport(const IngestReport &report) {
  std::ostringstream out;
  for (const IngestEvent &e : report.events) {
    out << KindName(e.kind) << '\t' << e.tag_path << '\t' << e.byte_offset << '\t' << e.detail << '\n';
  }
  return out.str();
}

}  // namespace geonto
