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

#ifndef GEONTO_SPEC_INGEST_HPP_
#define GEONTO_SPEC_INGEST_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "geonto/ontology.hpp"

namespace geonto {

// Element tree of a specification document. Attributes are dropped; the
// documents carry their content in elements.
struct StructureNode {
  std::string tag;
  std::string text_content;  // direct text, whitespace collapsed
  std::vector<StructureNode> children;
  std::size_t byte_offset = 0;  // offset of the opening '<'
};

// Throws Error(kXmlSyntax) with the byte offset of the problem.
StructureNode ParseSpec(std::string_view xml);

struct RuleAction {
  enum class Type { kHyponymy, kAssociatedTerm, kDefinitionField, kNamedRelation };
  Type type = Type::kHyponymy;
  std::string label;  // kNamedRelation only

  std::string ToString() const;
};

// When elements `source_tag` and `target_tag` sit under the same `scope_tag`
// element, the concepts they name are related by `action`. A target of "-"
// means the rule only introduces the source concept.
struct ExtractionRule {
  std::string scope_tag;
  std::string source_tag;
  std::string target_tag;
  RuleAction action;

  bool has_target() const { return target_tag != "-"; }
};

// One rule per line: scope<TAB>source<TAB>target<TAB>action where action is
// hyponymy | term | definition | named:<label>. Blank lines and lines
// starting with '#' are ignored. Throws Error(kRuleSyntax) with line number.
std::vector<ExtractionRule> ParseRules(std::string_view text);
void ValidateRules(const std::vector<ExtractionRule> &rules);

struct IngestEvent {
  enum class Kind { kConcept, kRelation, kTerm, kDefinition, kWarning };
  Kind kind;
  std::string detail;
  std::string tag_path;
  std::size_t byte_offset = 0;
};

struct QueuedDefinition {
  std::string concept_id;
  std::string text;
  std::string tag_path;
  std::size_t byte_offset = 0;
};

struct IngestReport {
  std::vector<IngestEvent> events;
  std::vector<QueuedDefinition> definitions;

  std::size_t Count(IngestEvent::Kind kind) const;
};

// Walks the tree in document order and applies every rule whose scope tag
// matches. Concepts are created under the concept of the nearest enclosing
// scope element (or Top). A definition belongs to the most specific concept
// its scope produced: the single hyponymy target when there is exactly one,
// otherwise the source concept.
IngestReport ApplyRules(const StructureNode &tree, const std::vector<ExtractionRule> &rules,
                        Ontology &ontology);

// kind<TAB>tag_path<TAB>byte_offset<TAB>detail, one line per event.
std::string FormatIngestReport(const IngestReport &report);

}  // namespace geonto

#endif  // GEONTO_SPEC_INGEST_HPP_
