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

#include <string>
#include <vector>

#include "geonto/error.hpp"
#include "geonto/spec_ingest.hpp"
#include "geonto/text.hpp"

namespace geonto {

namespace {

class XmlReader {
 public:
  explicit XmlReader(std::string_view input) : in_(input) {}

  StructureNode Parse() {
    if (in_.starts_with("\xEF\xBB\xBF")) pos_ = 3;
    SkipMisc();
    if (AtEnd() || Peek() != '<') Fail("expected root element");
    StructureNode root = ParseElementTree();
    SkipMisc();
    if (!AtEnd()) Fail("content after root element");
    return root;
  }

 private:
  struct Open {
    StructureNode node;
    std::string raw_text;
  };

  [[noreturn]] void Fail(const std::string &what) const { Fail(what, pos_); }

  [[noreturn]] void Fail(const std::string &what, std::size_t at) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < at && i < in_.size(); ++i) {
      if (in_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::kXmlSyntax,
                what + " at line " + std::to_string(line) + ", column " + std::to_string(column) +
                    " (byte " + std::to_string(at) + ")",
                at);
  }

  bool AtEnd() const { return pos_ >= in_.size(); }
  char Peek() const { return in_[pos_]; }
  bool LookingAt(std::string_view s) const { return in_.substr(pos_).starts_with(s); }
  static bool Space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

  void SkipSpace() {
    while (!AtEnd() && Space(Peek())) ++pos_;
  }

  void SkipPast(std::string_view terminator, const char *what) {
    std::size_t at = in_.find(terminator, pos_);
    if (at == std::string_view::npos) Fail(std::string("unterminated ") + what);
    pos_ = at + terminator.size();
  }

  void SkipDoctype() {
    int bracket = 0;
    for (; !AtEnd(); ++pos_) {
      char c = Peek();
      if (c == '[') ++bracket;
      if (c == ']') --bracket;
      if (c == '>' && bracket == 0) {
        ++pos_;
        return;
      }
    }
    Fail("unterminated DOCTYPE");
  }

  // Prolog and epilog: declarations, comments, processing instructions.
  void SkipMisc() {
    while (true) {
      SkipSpace();
      if (LookingAt("<?")) {
        SkipPast("?>", "processing instruction");
      } else if (LookingAt("<!--")) {
        SkipPast("-->", "comment");
      } else if (LookingAt("<!DOCTYPE")) {
        SkipDoctype();
      } else {
        return;
      }
    }
  }

  std::string ReadName() {
    std::size_t start = pos_;
    while (!AtEnd()) {
      char c = Peek();
      if (Space(c) || c == '/' || c == '>' || c == '=' || c == '<' || c == '"' || c == '\'') break;
      ++pos_;
    }
    if (pos_ == start) Fail("expected a name");
    return std::string(in_.substr(start, pos_ - start));
  }

  void DecodeEntity(std::string &out) {
    std::size_t start = pos_;
    std::size_t semi = in_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 12) Fail("bad entity reference", start);
    std::string_view name = in_.substr(pos_ + 1, semi - pos_ - 1);
    pos_ = semi + 1;
    if (name == "lt") {
      out.push_back('<');
    } else if (name == "gt") {
      out.push_back('>');
    } else if (name == "amp") {
      out.push_back('&');
    } else if (name == "quot") {
      out.push_back('"');
    } else if (name == "apos") {
      out.push_back('\'');
    } else if (name.size() > 1 && name[0] == '#') {
      char32_t cp = 0;
      bool hex = name[1] == 'x' || name[1] == 'X';
      std::string_view digits = name.substr(hex ? 2 : 1);
      if (digits.empty()) Fail("bad character reference", start);
      for (char c : digits) {
        int v;
        if (c >= '0' && c <= '9') {
          v = c - '0';
        } else if (hex && c >= 'a' && c <= 'f') {
          v = c - 'a' + 10;
        } else if (hex && c >= 'A' && c <= 'F') {
          v = c - 'A' + 10;
        } else {
          Fail("bad character reference", start);
        }
        cp = cp * (hex ? 16 : 10) + v;
        if (cp > 0x10FFFF) Fail("character reference out of range", start);
      }
      text::AppendUtf8(out, cp);
    } else {
      Fail("unknown entity '" + std::string(name) + "'", start);
    }
  }

  void SkipAttributes() {
    while (true) {
      SkipSpace();
      if (AtEnd()) Fail("unterminated start tag");
      if (Peek() == '>' || Peek() == '/') return;
      ReadName();
      SkipSpace();
      if (AtEnd() || Peek() != '=') Fail("expected '=' after attribute name");
      ++pos_;
      SkipSpace();
      if (AtEnd() || (Peek() != '"' && Peek() != '\'')) Fail("expected quoted attribute value");
      char quote = Peek();
      std::size_t close = in_.find(quote, pos_ + 1);
      if (close == std::string_view::npos) Fail("unterminated attribute value");
      if (in_.substr(pos_ + 1, close - pos_ - 1).find('<') != std::string_view::npos) {
        Fail("'<' in attribute value");
      }
      pos_ = close + 1;
    }
  }

  // Reads "<name attrs" and the closing "/>" or ">". Returns true when the
  // element was self-closing.
  bool ReadStartTag(StructureNode &node) {
    node.byte_offset = pos_;
    ++pos_;
    node.tag = ReadName();
    SkipAttributes();
    if (Peek() == '/') {
      ++pos_;
      if (AtEnd() || Peek() != '>') Fail("expected '>' after '/'");
      ++pos_;
      return true;
    }
    ++pos_;
    return false;
  }

  static void Finish(Open &open) { open.node.text_content = text::CollapseWhitespace(open.raw_text); }

  StructureNode ParseElementTree() {
    std::vector<Open> stack;
    {
      Open root;
      if (ReadStartTag(root.node)) return root.node;
      stack.push_back(std::move(root));
    }
    while (true) {
      if (AtEnd()) Fail("unclosed element <" + stack.back().node.tag + ">");
      char c = Peek();
      if (c == '&') {
        DecodeEntity(stack.back().raw_text);
      } else if (c != '<') {
        if (c == '>' ) Fail("stray '>' in content");
        stack.back().raw_text.push_back(c);
        ++pos_;
      } else if (LookingAt("<!--")) {
        SkipPast("-->", "comment");
      } else if (LookingAt("<![CDATA[")) {
        std::size_t start = pos_ + 9;
        std::size_t end = in_.find("]]>", start);
        if (end == std::string_view::npos) Fail("unterminated CDATA section");
        stack.back().raw_text.append(in_.substr(start, end - start));
        pos_ = end + 3;
      } else if (LookingAt("<?")) {
        SkipPast("?>", "processing instruction");
      } else if (LookingAt("</")) {
        std::size_t at = pos_;
        pos_ += 2;
        std::string name = ReadName();
        SkipSpace();
        if (AtEnd() || Peek() != '>') Fail("expected '>' in end tag");
        ++pos_;
        if (name != stack.back().node.tag) {
          Fail("end tag </" + name + "> does not match <" + stack.back().node.tag + ">", at);
        }
        Open done = std::move(stack.back());
        stack.pop_back();
        Finish(done);
        if (stack.empty()) return std::move(done.node);
        stack.back().node.children.push_back(std::move(done.node));
      } else {
        Open child;
        if (ReadStartTag(child.node)) {
          stack.back().node.children.push_back(std::move(child.node));
        } else {
          stack.push_back(std::move(child));
        }
      }
    }
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

StructureNode ParseSpec(std::string_view xml) { return XmlReader(xml).Parse(); }

}  // namespace geonto
