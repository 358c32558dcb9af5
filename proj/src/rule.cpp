#include "synreorder/rule.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "synreorder/tree.hpp"

namespace synreorder {

std::size_t PatternElement::min_count() const {
  if (is_wrapper()) return 1;
  return quantifier == Quantifier::Optional ? 0 : 1;
}

std::size_t PatternElement::max_count() const {
  if (is_wrapper()) return 1;
  if (quantifier == Quantifier::Star || quantifier == Quantifier::Plus || cls.sequence) return kUnbounded;
  return 1;
}

namespace {

void collect_leaves(const std::vector<PatternElement>& elements, std::vector<SlotKey>& out) {
  for (const auto& e : elements) {
    if (e.is_wrapper()) collect_leaves(e.nested, out);
    else out.push_back(e.key);
  }
}

const PatternElement* find_leaf(const std::vector<PatternElement>& elements, const SlotKey& key) {
  for (const auto& e : elements) {
    if (e.is_wrapper()) {
      if (const auto* found = find_leaf(e.nested, key)) return found;
    } else if (e.key == key) {
      return &e;
    }
  }
  return nullptr;
}

char quantifier_char(Quantifier q) {
  switch (q) {
    case Quantifier::One: return '\0';
    case Quantifier::Optional: return '?';
    case Quantifier::Star: return '*';
    case Quantifier::Plus: return '+';
  }
  return '\0';
}

bool is_name_char(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }

class RuleParser {
 public:
  RuleParser(std::string_view text, const TagRegistry& registry) : text_(text), registry_(registry) {}

  ReorderRule parse() {
    ReorderRule rule;
    skip_ws();
    std::size_t cat_start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && !is_space(text_[pos_])) ++pos_;
    if (pos_ == cat_start) fail("expected a category label");
    rule.category = std::string(text_.substr(cat_start, pos_ - cat_start));
    skip_ws();
    expect('(');
    rule.lhs = parse_elements(':');
    expect(':');
    skip_ws();
    while (peek() != ')') {
      if (at_end()) fail("missing ')'");
      rule.rhs.push_back(parse_ref());
      skip_ws();
    }
    if (rule.rhs.empty()) fail("empty right-hand side");
    expect(')');
    skip_ws();
    if (!at_end()) fail("unexpected text after ')'");
    rule.source_text = std::string(trimmed(text_));
    return rule;
  }

 private:
  static bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

  static std::string_view trimmed(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && is_space(text_[pos_])) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what, RuleError::Kind kind = RuleError::Kind::SyntaxError) const {
    throw RuleError(kind, what, 0, pos_ + 1);
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) {
      fail(std::string("expected '") + c + "'" + (at_end() ? " at end of rule" : std::string(" before '") + peek() + "'"));
    }
    ++pos_;
  }

  SlotKey parse_key() {
    std::size_t start = pos_;
    while (!at_end() && is_name_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail(at_end() ? "unexpected end of rule" : std::string("unexpected '") + peek() + "'");
    SlotKey key{std::string(text_.substr(start, pos_ - start)), std::nullopt};
    std::size_t digits = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ > digits) key.index = std::stoi(std::string(text_.substr(digits, pos_ - digits)));
    if (!at_end() && is_name_char(text_[pos_])) fail("letters after an index");
    return key;
  }

  Quantifier parse_quantifier() {
    switch (peek()) {
      case '?': ++pos_; return Quantifier::Optional;
      case '*': ++pos_; return Quantifier::Star;
      case '+': ++pos_; return Quantifier::Plus;
      default: return Quantifier::One;
    }
  }

  TagClass resolve(const SlotKey& key, std::size_t at) const {
    try {
      return registry_.resolve(key.name);
    } catch (const TagError& e) {
      throw RuleError(RuleError::Kind::UnknownClass, e.what(), 0, at + 1);
    }
  }

  std::vector<PatternElement> parse_elements(char terminator) {
    std::vector<PatternElement> elements;
    while (true) {
      skip_ws();
      if (at_end()) fail(std::string("missing '") + terminator + "'");
      if (peek() == terminator) break;
      std::size_t at = pos_;
      PatternElement element;
      element.key = parse_key();
      element.cls = resolve(element.key, at);
      std::size_t after_key = pos_;
      skip_ws();
      if (peek() == '[') {
        ++pos_;
        element.nested = parse_elements(']');
        expect(']');
        if (element.nested.empty()) fail("empty sub-pattern");
        if (peek() == '?' || peek() == '*' || peek() == '+') fail("quantifiers are not allowed on a sub-pattern");
      } else {
        pos_ = after_key;
        element.quantifier = parse_quantifier();
      }
      elements.push_back(std::move(element));
    }
    return elements;
  }

  RhsRef parse_ref() {
    RhsRef ref;
    ref.key = parse_key();
    ref.quantifier = parse_quantifier();
    if (!at_end() && !is_space(peek()) && peek() != ')') fail(std::string("unexpected '") + peek() + "'");
    return ref;
  }

  std::string_view text_;
  const TagRegistry& registry_;
  std::size_t pos_ = 0;
};

void validate(ReorderRule& rule) {
  std::vector<SlotKey> leaves = rule.leaf_keys();
  std::set<SlotKey> seen;
  for (const auto& key : leaves) {
    if (!seen.insert(key).second) {
      throw RuleError(RuleError::Kind::DuplicateLhsElement,
                      "'" + key.str() + "' occurs more than once on the left-hand side; add an index");
    }
  }
  std::set<SlotKey> used;
  for (auto& ref : rule.rhs) {
    const PatternElement* leaf = find_leaf(rule.lhs, ref.key);
    if (leaf == nullptr) {
      throw RuleError(RuleError::Kind::UnresolvedRhsReference,
                      "'" + ref.key.str() + "' on the right-hand side matches no left-hand element");
    }
    if (!used.insert(ref.key).second) {
      throw RuleError(RuleError::Kind::DuplicateRhsReference, "'" + ref.key.str() + "' is referenced twice");
    }
    if (ref.quantifier != Quantifier::One && ref.quantifier != leaf->quantifier) {
      throw RuleError(RuleError::Kind::SyntaxError,
                      "quantifier of '" + ref.key.str() + "' differs between the two sides");
    }
    ref.quantifier = leaf->quantifier;
  }
  for (const auto& key : leaves) {
    if (used.count(key) == 0) {
      throw RuleError(RuleError::Kind::DroppedLhsElement,
                      "'" + key.str() + "' is matched but never placed on the right-hand side");
    }
  }
}

void render_elements(const std::vector<PatternElement>& elements, std::string& out) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i > 0) out += ' ';
    const auto& e = elements[i];
    out += e.key.str();
    if (e.is_wrapper()) {
      out += '[';
      render_elements(e.nested, out);
      out += ']';
    } else if (char q = quantifier_char(e.quantifier)) {
      out += q;
    }
  }
}

bool same_elements(const std::vector<PatternElement>& a, const std::vector<PatternElement>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].key != b[i].key || a[i].quantifier != b[i].quantifier || a[i].cls != b[i].cls) return false;
    if (!same_elements(a[i].nested, b[i].nested)) return false;
  }
  return true;
}

}  // namespace

std::vector<SlotKey> ReorderRule::leaf_keys() const {
  std::vector<SlotKey> out;
  collect_leaves(lhs, out);
  return out;
}

const char* to_string(RuleError::Kind kind) {
  switch (kind) {
    case RuleError::Kind::SyntaxError: return "SyntaxError";
    case RuleError::Kind::UnknownClass: return "UnknownClass";
    case RuleError::Kind::UnresolvedRhsReference: return "UnresolvedRhsReference";
    case RuleError::Kind::DroppedLhsElement: return "DroppedLhsElement";
    case RuleError::Kind::DuplicateRhsReference: return "DuplicateRhsReference";
    case RuleError::Kind::DuplicateLhsElement: return "DuplicateLhsElement";
    case RuleError::Kind::DuplicateRuleId: return "DuplicateRuleId";
    case RuleError::Kind::UnknownRuleId: return "UnknownRuleId";
  }
  return "?";
}

namespace {

std::string format_rule_error(RuleError::Kind kind, const std::string& message, std::size_t line,
                              std::size_t column) {
  std::string out = to_string(kind);
  if (line > 0) out += " on line " + std::to_string(line);
  if (column > 0) out += (line > 0 ? ", column " : " at column ") + std::to_string(column);
  return out + ": " + message;
}

}  // namespace

RuleError::RuleError(Kind kind, std::string message, std::size_t line, std::size_t column)
    : Error(format_rule_error(kind, message, line, column)),
      kind_(kind),
      message_(std::move(message)),
      line_(line),
      column_(column) {}

ReorderRule parse_rule(std::string_view text, const TagRegistry& registry) {
  ReorderRule rule = RuleParser(text, registry).parse();
  validate(rule);
  return rule;
}

std::vector<ReorderRule> parse_ruleset(std::string_view text, const TagRegistry& registry) {
  std::vector<ReorderRule> rules;
  std::set<std::string> ids;
  std::optional<std::string> pending_id;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    Tokens words = split_tokens(line);
    if (words.empty() || words.front().front() == '#') continue;
    if (words.front().rfind("@id:", 0) == 0) {
      std::string id = words.front().substr(4);
      if (id.empty() && words.size() > 1) id = words[1];
      if (id.empty() || words.size() > (words.front().size() > 4 ? 1u : 2u)) {
        throw RuleError(RuleError::Kind::SyntaxError, "malformed @id annotation", line_no);
      }
      pending_id = id;
      continue;
    }

    ReorderRule rule;
    try {
      rule = parse_rule(line, registry);
    } catch (const RuleError& e) {
      throw RuleError(e.kind(), e.message(), line_no, e.column());
    }
    rule.priority = static_cast<int>(rules.size()) + 1;
    rule.id = pending_id ? *pending_id : "r" + std::to_string(rule.priority);
    pending_id.reset();
    if (!ids.insert(rule.id).second) {
      throw RuleError(RuleError::Kind::DuplicateRuleId, "rule id '" + rule.id + "' is used twice", line_no);
    }
    rules.push_back(std::move(rule));
  }
  if (pending_id) {
    throw RuleError(RuleError::Kind::SyntaxError, "@id annotation not followed by a rule", line_no);
  }
  return rules;
}

std::string render_rule(const ReorderRule& rule) {
  std::string out = rule.category + "(";
  render_elements(rule.lhs, out);
  out += " :";
  for (const auto& ref : rule.rhs) {
    out += ' ';
    out += ref.key.str();
    if (char q = quantifier_char(ref.quantifier)) out += q;
  }
  out += ')';
  return out;
}

bool same_rule_structure(const ReorderRule& a, const ReorderRule& b) {
  return a.category == b.category && same_elements(a.lhs, b.lhs) && a.rhs == b.rhs;
}

std::vector<ReorderRule> select_rules(const std::vector<ReorderRule>& rules, const std::set<std::string>& ids) {
  std::vector<ReorderRule> out;
  std::set<std::string> found;
  for (const auto& rule : rules) {
    if (ids.count(rule.id) > 0) {
      out.push_back(rule);
      found.insert(rule.id);
    }
  }
  for (const auto& id : ids) {
    if (found.count(id) == 0) throw RuleError(RuleError::Kind::UnknownRuleId, "no rule with id '" + id + "'");
  }
  return out;
}

}  // namespace synreorder
