// Copyright 2026 The codecity Authors
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

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "codecity/code_agent.hpp"
#include "line_classifier.hpp"

namespace codecity {
namespace {

enum class TokenKind { kWord, kSymbol, kLiteral, kEnd };

struct Token {
  TokenKind kind;
  std::string text;
  std::int64_t line;
};

// Comments and whitespace are dropped; every punctuation character is its
// own token except "...". Literals keep their raw spelling.
std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::int64_t line = 1;
  const std::size_t n = src.size();
  std::size_t i = 0;
  auto word_char = [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_' || c == '$' || c >= 0x80;
  };
  while (i < n) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      i += 2;
      while (i < n && !(src[i] == '*' && i + 1 < n && src[i + 1] == '/')) {
        if (src[i] == '\n') ++line;
        ++i;
      }
      i = std::min(n, i + 2);
      continue;
    }
    const std::int64_t start_line = line;
    if (src.substr(i, 3) == "\"\"\"") {
      std::size_t j = i + 3;
      while (j < n && src.substr(j, 3) != "\"\"\"") {
        if (src[j] == '\\') ++j;
        if (j < n && src[j] == '\n') ++line;
        ++j;
      }
      j = std::min(n, j + 3);
      out.push_back({TokenKind::kLiteral, std::string(src.substr(i, j - i)), start_line});
      i = j;
      continue;
    }
    if (c == '"' || c == '\'') {
      std::size_t j = i + 1;
      while (j < n && src[j] != c && src[j] != '\n') {
        if (src[j] == '\\') ++j;
        ++j;
      }
      j = std::min(n, j + 1);
      out.push_back({TokenKind::kLiteral, std::string(src.substr(i, j - i)), start_line});
      i = j;
      continue;
    }
    if (word_char(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < n && word_char(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({TokenKind::kWord, std::string(src.substr(i, j - i)), start_line});
      i = j;
      continue;
    }
    if (src.substr(i, 3) == "...") {
      out.push_back({TokenKind::kSymbol, "...", start_line});
      i += 3;
      continue;
    }
    out.push_back({TokenKind::kSymbol, std::string(1, c), start_line});
    ++i;
  }
  out.push_back({TokenKind::kEnd, "", line});
  return out;
}

bool is_modifier_word(std::string_view w) {
  static constexpr std::string_view kModifiers[] = {
      "public", "protected", "private", "static", "abstract", "final", "native",
      "synchronized", "transient", "volatile", "strictfp", "default", "sealed"};
  return std::find(std::begin(kModifiers), std::end(kModifiers), w) != std::end(kModifiers);
}

struct Unsupported {
  std::string reason;
  std::int64_t line;
};

struct Modifiers {
  std::vector<std::string> words;
  std::int64_t firstLine = 0;

  [[nodiscard]] bool has(std::string_view w) const {
    return std::find(words.begin(), words.end(), w) != words.end();
  }
};

class JavaParser {
 public:
  JavaParser(std::string_view text, std::string_view path)
      : tokens_(tokenize(text)), path_(path), tally_(detail::classify_lines(text)) {
    unit_.path = std::string(path);
    if (tally_.line_count() > 0) {
      unit_.loc = tally_.range(1, tally_.line_count());
    }
  }

  CompilationUnit run() {
    try {
      parse_header();
    } catch (const Unsupported& u) {
      warn(u);
      skip_to_top_level_type();
    }
    while (!at_end()) {
      if (is(";")) {
        advance();
        continue;
      }
      const std::size_t before = pos_;
      try {
        Modifiers mods = parse_modifiers();
        if (!starts_type_declaration()) {
          throw Unsupported{fmt::format("unexpected '{}' at top level", peek().text), peek().line};
        }
        parse_type_declaration(mods, {}, unit_.topLevelTypes);
      } catch (const Unsupported& u) {
        warn(u);
        if (pos_ == before) advance();
        skip_to_top_level_type();
      }
    }
    if (unit_.topLevelTypes.empty() && unit_.warnings.empty()) {
      unit_.warnings.push_back({unit_.path, "no type declarations found"});
    }
    return std::move(unit_);
  }

 private:
  // -- token helpers -------------------------------------------------------

  [[nodiscard]] const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  [[nodiscard]] bool at_end() const { return peek().kind == TokenKind::kEnd; }
  [[nodiscard]] bool is(std::string_view text, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind != TokenKind::kEnd && t.kind != TokenKind::kLiteral && t.text == text;
  }
  [[nodiscard]] bool is_word(std::size_t ahead = 0) const {
    return peek(ahead).kind == TokenKind::kWord;
  }
  const Token& advance() {
    const Token& t = peek();
    if (!at_end()) ++pos_;
    return t;
  }
  void expect(std::string_view text) {
    if (!is(text)) {
      throw Unsupported{fmt::format("expected '{}' but found '{}'", text,
                                    at_end() ? "end of file" : peek().text),
                        peek().line};
    }
    advance();
  }
  std::string expect_word() {
    if (!is_word()) {
      throw Unsupported{fmt::format("expected identifier but found '{}'",
                                    at_end() ? "end of file" : peek().text),
                        peek().line};
    }
    return advance().text;
  }

  void warn(const Unsupported& u) {
    unit_.warnings.push_back({unit_.path, fmt::format("line {}: {}", u.line, u.reason)});
  }

  // Skips a balanced group starting at the current opening symbol.
  void skip_balanced(std::string_view open, std::string_view close) {
    const std::int64_t line = peek().line;
    expect(open);
    int depth = 1;
    while (depth > 0) {
      if (at_end()) {
        throw Unsupported{fmt::format("unbalanced '{}' opened here", open), line};
      }
      if (is(open)) ++depth;
      else if (is(close)) --depth;
      advance();
    }
  }

  // Skips to the ';' ending the current statement, honoring nesting.
  // Stops before a '}' that would close the enclosing body.
  void skip_statement() {
    int depth = 0;
    while (!at_end()) {
      if (depth == 0 && is(";")) {
        advance();
        return;
      }
      if (depth == 0 && is("}")) return;
      if (is("{") || is("(") || is("[")) ++depth;
      if (is("}") || is(")") || is("]")) --depth;
      advance();
    }
  }

  void skip_to_top_level_type() {
    int depth = 0;
    while (!at_end()) {
      if (depth == 0 && (is("class") || is("interface") || is("enum") || is("record"))) {
        // Back up over modifiers so the next round sees them.
        while (pos_ > 0 && tokens_[pos_ - 1].kind == TokenKind::kWord &&
               is_modifier_word(tokens_[pos_ - 1].text)) {
          --pos_;
        }
        return;
      }
      if (is("{")) ++depth;
      if (is("}")) depth = std::max(0, depth - 1);
      advance();
    }
  }

  // -- grammar -------------------------------------------------------------

  std::string qualified_name() {
    std::string name = expect_word();
    while (is(".") && is_word(1)) {
      advance();
      name += '.';
      name += advance().text;
    }
    return name;
  }

  void parse_header() {
    skip_annotations();
    if (is("package")) {
      advance();
      unit_.packagePath = qualified_name();
      expect(";");
    }
    while (is("import")) {
      advance();
      std::string imp;
      if (is("static")) {
        advance();
        imp = "static ";
      }
      imp += qualified_name();
      if (is(".") && is("*", 1)) {
        advance();
        advance();
        imp += ".*";
      }
      expect(";");
      unit_.imports.push_back(std::move(imp));
    }
  }

  void skip_annotation() {
    expect("@");
    qualified_name();
    if (is("(")) skip_balanced("(", ")");
  }

  void skip_annotations() {
    while (is("@") && !is("interface", 1)) skip_annotation();
  }

  Modifiers parse_modifiers() {
    Modifiers mods;
    mods.firstLine = peek().line;
    while (true) {
      if (is("@") && !is("interface", 1)) {
        skip_annotation();
      } else if (is_word() && is_modifier_word(peek().text)) {
        mods.words.push_back(advance().text);
      } else if (is("non") && is("-", 1) && is("sealed", 2)) {
        advance();
        advance();
        advance();
        mods.words.emplace_back("non-sealed");
      } else {
        break;
      }
    }
    return mods;
  }

  [[nodiscard]] bool starts_type_declaration() const {
    return is("class") || is("interface") || is("enum") || (is("record") && is_word(1)) ||
           (is("@") && is("interface", 1));
  }

  // Type reference as written, whitespace-normalized: word tokens that meet
  // are separated by one space, everything else is concatenated.
  std::string parse_type_text() {
    std::string out;
    bool last_word = false;
    auto append = [&](const Token& t) {
      const bool word = t.kind == TokenKind::kWord;
      if (word && last_word) out += ' ';
      out += t.text;
      last_word = word;
    };
    skip_annotations();
    if (is("?")) {
      append(advance());
    } else {
      append(advance_word());
    }
    while (true) {
      if (is(".") && is_word(1)) {
        append(advance());
        append(advance());
      } else if (is("<")) {
        append(advance());
        int depth = 1;
        while (depth > 0) {
          if (at_end()) throw Unsupported{"unterminated type arguments", peek().line};
          if (is("@")) {
            skip_annotation();
            continue;
          }
          if (is("<")) ++depth;
          if (is(">")) --depth;
          append(advance());
        }
      } else if (is("[") && is("]", 1)) {
        append(advance());
        append(advance());
      } else if (is("@") && !is("interface", 1)) {
        skip_annotation();
      } else {
        break;
      }
    }
    if (is("...")) append(advance());
    return out;
  }

  const Token& advance_word() {
    if (!is_word()) {
      throw Unsupported{fmt::format("expected type but found '{}'",
                                    at_end() ? "end of file" : peek().text),
                        peek().line};
    }
    return advance();
  }

  // Supertype reference with type arguments dropped.
  std::string parse_supertype() {
    skip_annotations();
    std::string name = qualified_name();
    if (is("<")) skip_balanced("<", ">");
    return name;
  }

  std::vector<std::string> parse_supertype_list() {
    std::vector<std::string> out{parse_supertype()};
    while (is(",")) {
      advance();
      out.push_back(parse_supertype());
    }
    return out;
  }

  void parse_type_declaration(const Modifiers& mods, std::vector<std::string> enclosing,
                              std::vector<ClassUnit>& sink) {
    ClassUnit cls;
    cls.filePath = unit_.path;
    bool annotation_type = false;
    bool record = false;
    if (is("@")) {
      advance();
      annotation_type = true;
    }
    const std::string keyword = advance().text;
    cls.name = expect_word();
    if (!is_identifier(cls.name)) {
      throw Unsupported{fmt::format("invalid type name '{}'", cls.name), peek().line};
    }
    try {
      cls.fqn = make_fqn(unit_.packagePath, enclosing, cls.name);
    } catch (const Error& e) {
      throw Unsupported{e.what(), peek().line};
    }
    if (keyword == "interface") {
      cls.kind = ClassKind::kInterface;
    } else if (keyword == "enum") {
      cls.kind = ClassKind::kEnum;
    } else {
      cls.kind = mods.has("abstract") ? ClassKind::kAbstract : ClassKind::kClass;
    }
    record = keyword == "record";

    // Registered before the header and body are parsed so that a failure
    // further down still leaves the declared name in the output.
    sink.push_back(cls);
    const std::size_t slot = sink.size() - 1;

    std::optional<Unsupported> pending;
    if (annotation_type) {
      pending = Unsupported{"annotation type declarations are not analyzed", mods.firstLine};
    } else if (record) {
      pending = Unsupported{"record declarations are analyzed as plain classes", mods.firstLine};
    }

    if (is("<")) skip_balanced("<", ">");
    if (record && is("(")) skip_balanced("(", ")");
    while (is("extends") || is("implements") || is("permits")) {
      const std::string clause = advance().text;
      auto names = parse_supertype_list();
      if (clause == "permits") continue;
      if (clause == "implements") {
        cls.interfaces.insert(cls.interfaces.end(), names.begin(), names.end());
      } else if (cls.kind == ClassKind::kInterface) {
        // First extended interface is the supertype, the rest are interfaces.
        cls.superClass = names.front();
        cls.interfaces.insert(cls.interfaces.end(), names.begin() + 1, names.end());
      } else {
        cls.superClass = names.front();
        if (names.size() > 1) {
          throw Unsupported{"class extends more than one type", peek().line};
        }
      }
    }
    sink[slot] = cls;

    if (annotation_type) {
      warn(*pending);
      skip_balanced("{", "}");
      cls.loc = tally_.range(mods.firstLine, tokens_[pos_ - 1].line);
      sink[slot] = std::move(cls);
      return;
    }
    if (pending) warn(*pending);

    expect("{");
    enclosing.push_back(cls.name);
    if (cls.kind == ClassKind::kEnum) parse_enum_constants();
    parse_members(cls, enclosing);
    const std::int64_t end_line = peek().line;
    expect("}");
    cls.loc = tally_.range(mods.firstLine, end_line);
    sink[slot] = std::move(cls);
  }

  void parse_enum_constants() {
    while (!is(";") && !is("}")) {
      if (at_end()) throw Unsupported{"unterminated enum body", peek().line};
      skip_annotations();
      expect_word();
      if (is("(")) skip_balanced("(", ")");
      if (is("{")) skip_balanced("{", "}");
      if (is(",")) {
        advance();
      } else if (!is(";") && !is("}")) {
        throw Unsupported{fmt::format("unexpected '{}' in enum constants", peek().text),
                          peek().line};
      }
    }
    if (is(";")) advance();
  }

  // Parses members until the closing '}' of the body (not consumed).
  void parse_members(ClassUnit& cls, const std::vector<std::string>& enclosing) {
    while (!is("}")) {
      if (at_end()) {
        throw Unsupported{fmt::format("unexpected end of file in body of {}", cls.name),
                          peek().line};
      }
      if (is(";")) {
        advance();
        continue;
      }
      const std::size_t before = pos_;
      try {
        parse_member(cls, enclosing);
      } catch (const Unsupported& u) {
        warn(u);
        if (pos_ == before) advance();
        skip_statement();
      }
    }
  }

  void parse_member(ClassUnit& cls, const std::vector<std::string>& enclosing) {
    Modifiers mods = parse_modifiers();
    if (is("{")) {
      skip_balanced("{", "}");  // initializer block
      return;
    }
    if (starts_type_declaration()) {
      parse_type_declaration(mods, enclosing, cls.nestedClasses);
      return;
    }
    if (is("<")) skip_balanced("<", ">");

    MethodDecl method;
    method.modifiers = mods.words;
    std::sort(method.modifiers.begin(), method.modifiers.end());
    method.modifiers.erase(std::unique(method.modifiers.begin(), method.modifiers.end()),
                           method.modifiers.end());

    if (is(cls.name) && (is("(", 1) || is("{", 1))) {
      advance();
      method.name = std::string(kConstructorName);
      method.returnType = "void";
      if (is("(")) method.paramTypes = parse_parameters();
    } else {
      std::string type = parse_type_text();
      if (!is_word()) {
        throw Unsupported{fmt::format("unsupported member starting with '{}'", type),
                          mods.firstLine};
      }
      std::string name = advance().text;
      if (!is("(")) {
        skip_statement();  // field declaration
        return;
      }
      method.name = std::move(name);
      method.paramTypes = parse_parameters();
      while (is("[") && is("]", 1)) {
        advance();
        advance();
        type += "[]";
      }
      method.returnType = std::move(type);
    }
    if (is("throws")) {
      advance();
      parse_supertype_list();
    }
    if (is("default")) {  // annotation member default value
      skip_statement();
    } else if (is("{")) {
      skip_balanced("{", "}");
    } else {
      expect(";");
    }
    method.loc = tally_.range(mods.firstLine, tokens_[pos_ - 1].line);
    cls.methods.push_back(std::move(method));
  }

  std::vector<std::string> parse_parameters() {
    std::vector<std::string> params;
    expect("(");
    while (!is(")")) {
      if (at_end()) throw Unsupported{"unterminated parameter list", peek().line};
      parse_modifiers();  // final, annotations
      std::string type = parse_type_text();
      if (is("this")) {  // receiver parameter
        advance();
      } else {
        expect_word();
        while (is("[") && is("]", 1)) {
          advance();
          advance();
          type += "[]";
        }
        params.push_back(std::move(type));
      }
      if (is(",")) {
        advance();
      } else if (!is(")")) {
        throw Unsupported{fmt::format("unexpected '{}' in parameter list", peek().text),
                          peek().line};
      }
    }
    advance();
    return params;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string_view path_;
  detail::LineTally tally_;
  CompilationUnit unit_;
};

}  // namespace

CompilationUnit parse_compilation_unit(std::string_view fileText, std::string_view path) {
  return JavaParser(fileText, path).run();
}

}  // namespace codecity
