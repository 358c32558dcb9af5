// The builtin English -> Hindi rule set and its worked-example fixtures.

#ifndef SYNREORDER_RULESET_HPP
#define SYNREORDER_RULESET_HPP

#include <string>
#include <string_view>
#include <vector>

#include "synreorder/match.hpp"
#include "synreorder/rule.hpp"

namespace synreorder {

/// Text of data/en_hi.rules, compiled into the library.
std::string_view builtin_rules_text();

/// The 18 worked-example rules (eq1..eq18) followed by the base rule base1.
const std::vector<ReorderRule>& builtin_rules();

struct FixtureCase {
  std::string id;        // rule id the example illustrates
  NodePath target;       // node the rule was illustrated on
  std::string tree;      // bracketed parse
  Tokens partial;        // after this rule alone
  Tokens reordered;      // after the whole rule set, as published
  Tokens achieved;       // what the builtin set produces; == reordered unless lenient
  std::vector<Tokens> governed_spans;  // must appear contiguously in `achieved`
  std::string lenient;   // why achieved differs from reordered; empty if exact
  std::string english;
  std::string hindi;

  bool exact() const { return lenient.empty(); }
};

/// Parses the fixture table format (tab-separated, `#` comments).
std::vector<FixtureCase> parse_fixtures(std::string_view text);

/// The 18 builtin fixtures, in rule order.
const std::vector<FixtureCase>& fixtures();

/// Case-insensitive token sequence equality.
bool same_tokens(const Tokens& a, const Tokens& b);

/// True if `span` occurs contiguously in `tokens`, case-insensitively.
bool contains_span(const Tokens& tokens, const Tokens& span);

}  // namespace synreorder

#endif  // SYNREORDER_RULESET_HPP
