// Reordering rules written as `CATEGORY(lhs : rhs)`, e.g.
//
//   NP(np1 PP[prep NP[np2 sbar]] : np2 prep np1 sbar)
//
// The left-hand side is a pattern over the child sequence of a CATEGORY node.
// `name[...]` matches one child whose own children match the bracketed
// sub-pattern; that wrapper node is dissolved by the rewrite. The right-hand
// side lists every leaf element of the pattern exactly once in output order.

#ifndef SYNREORDER_RULE_HPP
#define SYNREORDER_RULE_HPP

#include <compare>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "synreorder/error.hpp"
#include "synreorder/tags.hpp"

namespace synreorder {

enum class Quantifier { One, Optional, Star, Plus };

struct SlotKey {
  std::string name;
  std::optional<int> index;

  std::string str() const { return index ? name + std::to_string(*index) : name; }

  friend auto operator<=>(const SlotKey&, const SlotKey&) = default;
  friend bool operator==(const SlotKey&, const SlotKey&) = default;
};

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

struct PatternElement {
  SlotKey key;
  Quantifier quantifier = Quantifier::One;
  TagClass cls;
  std::vector<PatternElement> nested;

  bool is_wrapper() const { return !nested.empty(); }

  // Number of children the element may bind. Sequence classes (dcP, OP) bind
  // runs; `*` and `+` both mean one or more.
  std::size_t min_count() const;
  std::size_t max_count() const;

  friend bool operator==(const PatternElement&, const PatternElement&) = default;
};

struct RhsRef {
  SlotKey key;
  Quantifier quantifier = Quantifier::One;

  friend bool operator==(const RhsRef&, const RhsRef&) = default;
};

struct ReorderRule {
  std::string id;
  std::string category;
  std::vector<PatternElement> lhs;
  std::vector<RhsRef> rhs;
  int priority = 0;
  std::string source_text;

  /// Keys of the non-wrapper elements, depth-first.
  std::vector<SlotKey> leaf_keys() const;
};

class RuleError : public Error {
 public:
  enum class Kind {
    SyntaxError,
    UnknownClass,
    UnresolvedRhsReference,
    DroppedLhsElement,
    DuplicateRhsReference,
    DuplicateLhsElement,
    DuplicateRuleId,
    UnknownRuleId,
  };

  RuleError(Kind kind, std::string message, std::size_t line = 0, std::size_t column = 0);

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }      // 1-based; 0 when parsing a single rule
  std::size_t column() const { return column_; }  // 1-based; 0 when not positional
  const std::string& message() const { return message_; }

 private:
  Kind kind_;
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

const char* to_string(RuleError::Kind kind);

ReorderRule parse_rule(std::string_view text, const TagRegistry& registry = TagRegistry::builtin());

/// Parses a rule document. Blank lines and `#` lines are skipped; an
/// `@id: name` line names the next rule, otherwise ids are `r1`, `r2`, ...
/// Priorities follow document order starting at 1.
std::vector<ReorderRule> parse_ruleset(std::string_view text,
                                       const TagRegistry& registry = TagRegistry::builtin());

std::string render_rule(const ReorderRule& rule);

bool same_rule_structure(const ReorderRule& a, const ReorderRule& b);

/// Subset of `rules` whose ids are listed, in original priority order.
std::vector<ReorderRule> select_rules(const std::vector<ReorderRule>& rules,
                                      const std::set<std::string>& ids);

}  // namespace synreorder

#endif  // SYNREORDER_RULE_HPP
