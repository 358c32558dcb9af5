#include "synreorder/tags.hpp"

#include <algorithm>
#include <cctype>

#include "synreorder/tree.hpp"

namespace synreorder {

const TagRegistry& TagRegistry::builtin() {
  static const TagRegistry registry = [] {
    TagRegistry r;
    r.register_class("dcP", {}, true);
    r.register_class("pp", {"PP"});
    r.register_class("whP", {"WHNP", "WHADVP", "WHADJP", "WHPP"});
    r.register_class("vp", {"VP"});
    r.register_class("sbar", {"SBAR"});
    r.register_class("np", {"NP"});
    r.register_class("vpw", {"VBN", "VBP", "VB", "VBG", "MD", "VBZ", "VBD"});
    r.register_class("prep", {"IN", "TO", "VBN", "VBG"});
    r.register_class("adv", {"RB", "RBR", "RBS"});
    r.register_class("adj", {"JJ", "JJR", "JJS"});
    r.register_class("advP", {"ADVP"});
    r.register_class("punct", {","});
    r.register_class("adjP", {"ADJP"});
    r.register_class("OP", {"ADVP", "NP", "PP"}, true);
    return r;
  }();
  return registry;
}

bool TagRegistry::contains(std::string_view name) const { return classes_.find(name) != classes_.end(); }

const TagClass& TagRegistry::get(std::string_view name) const {
  auto it = classes_.find(name);
  if (it == classes_.end()) {
    throw TagError(TagError::Kind::UnknownClass, "unknown tag class '" + std::string(name) + "'");
  }
  return it->second;
}

bool is_literal_label_name(std::string_view name) {
  if (name.empty() || !std::isupper(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(),
                     [](unsigned char c) { return std::isupper(c) || c == '$'; });
}

TagClass TagRegistry::resolve(std::string_view name) const {
  if (auto it = classes_.find(name); it != classes_.end()) return it->second;
  if (is_literal_label_name(name)) return TagClass{std::string(name), {std::string(name)}, false};
  throw TagError(TagError::Kind::UnknownClass, "unknown tag class '" + std::string(name) + "'");
}

void TagRegistry::register_class(std::string name, std::set<std::string> members, bool sequence,
                                 bool override_existing) {
  if (!override_existing && contains(name)) {
    throw TagError(TagError::Kind::DuplicateClass, "tag class '" + name + "' is already registered");
  }
  if (members.empty()) sequence = true;
  TagClass cls{name, std::move(members), sequence};
  classes_.insert_or_assign(std::move(name), std::move(cls));
}

void TagRegistry::load_extension(std::string_view text, bool override_existing) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    std::string spaced;
    for (char c : line) {
      if (c == '=') spaced += " = ";
      else spaced += c;
    }
    Tokens words = split_tokens(spaced);
    if (words.empty() || words.front().front() == '#') continue;
    auto eq = std::find(words.begin(), words.end(), "=");
    if (eq != words.begin() + 1) {
      throw TagError(TagError::Kind::BadExtensionLine,
                     "tag extension line " + std::to_string(line_no) + ": expected 'name = LABEL ...'");
    }
    std::string name = words.front();
    bool sequence = false;
    if (name.size() > 1 && name.back() == '+') {
      sequence = true;
      name.pop_back();
    }
    std::set<std::string> members(eq + 1, words.end());
    register_class(std::move(name), std::move(members), sequence, override_existing);
    if (end == text.size()) break;
  }
}

}  // namespace synreorder
