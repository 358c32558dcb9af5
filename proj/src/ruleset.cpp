#include "synreorder/ruleset.hpp"

#include <algorithm>
#include <charconv>

namespace synreorder {

namespace detail {
extern const std::string_view kBuiltinRules;
extern const std::string_view kBuiltinFixtures;
}  // namespace detail

std::string_view builtin_rules_text() { return detail::kBuiltinRules; }

const std::vector<ReorderRule>& builtin_rules() {
  static const std::vector<ReorderRule> rules = parse_ruleset(detail::kBuiltinRules);
  return rules;
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t at = text.find(sep, start);
    if (at == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, at - start));
    start = at + 1;
  }
}

NodePath parse_path(std::string_view text, std::size_t line_no) {
  NodePath path;
  if (text.empty()) return path;
  for (std::string_view part : split(text, '.')) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw Error("fixture line " + std::to_string(line_no) + ": bad node path '" + std::string(text) + "'");
    }
    path.push_back(value);
  }
  return path;
}

}  // namespace

std::vector<FixtureCase> parse_fixtures(std::string_view text) {
  std::vector<FixtureCase> out;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() != 10) {
      throw Error("fixture line " + std::to_string(line_no) + ": expected 10 columns, got " +
                  std::to_string(cols.size()));
    }
    FixtureCase fc;
    fc.id = cols[0];
    fc.target = parse_path(cols[1], line_no);
    fc.tree = cols[2];
    fc.partial = split_tokens(cols[3]);
    fc.reordered = split_tokens(cols[4]);
    fc.achieved = split_tokens(cols[5]);
    if (!cols[6].empty()) {
      for (std::string_view span : split(cols[6], '|')) fc.governed_spans.push_back(split_tokens(span));
    }
    fc.lenient = cols[7];
    fc.english = cols[8];
    fc.hindi = cols[9];
    out.push_back(std::move(fc));
  }
  return out;
}

const std::vector<FixtureCase>& fixtures() {
  static const std::vector<FixtureCase> cases = parse_fixtures(detail::kBuiltinFixtures);
  return cases;
}

bool same_tokens(const Tokens& a, const Tokens& b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](const std::string& x, const std::string& y) {
           return lowercase(x) == lowercase(y);
         });
}

bool contains_span(const Tokens& tokens, const Tokens& span) {
  if (span.empty()) return true;
  if (span.size() > tokens.size()) return false;
  for (std::size_t i = 0; i + span.size() <= tokens.size(); ++i) {
    Tokens window(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                  tokens.begin() + static_cast<std::ptrdiff_t>(i + span.size()));
    if (same_tokens(window, span)) return true;
  }
  return false;
}

}  // namespace synreorder
