// Matching a rule's left-hand side against a node's children, and building
// the rewritten child sequence from the resulting binding.

#ifndef SYNREORDER_MATCH_HPP
#define SYNREORDER_MATCH_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "synreorder/error.hpp"
#include "synreorder/rule.hpp"
#include "synreorder/tree.hpp"

namespace synreorder {

using NodePath = std::vector<std::size_t>;

/// Children [begin, end) of the node reached by `wrapper_path` (relative to
/// the matched node; empty = the matched node itself).
struct SlotBinding {
  SlotKey key;
  NodePath wrapper_path;
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }

  friend bool operator==(const SlotBinding&, const SlotBinding&) = default;
};

struct Binding {
  // One entry per left-hand leaf, depth-first.
  std::vector<SlotBinding> slots;
  // Wrapper nodes dissolved by nested patterns, as paths from the matched node.
  std::vector<NodePath> consumed_wrappers;

  const SlotBinding& slot(const SlotKey& key) const;

  friend bool operator==(const Binding&, const Binding&) = default;
};

class MatchError : public Error {
 public:
  using Error::Error;
};

/// Anchored match of `rule.lhs` against all of `node`'s children. Elements
/// are greedy and the search backtracks, so the result is the leftmost-longest
/// tiling. Throws MatchError when node.label != rule.category.
std::optional<Binding> match_children(const ReorderRule& rule, const ParseNode& node);

/// Same, without the category check: matches a pattern against a child list.
std::optional<Binding> match_sequence(const std::vector<PatternElement>& pattern,
                                      const std::vector<ParseNode>& children);

/// Bound subsequences concatenated in right-hand order.
std::vector<ParseNode> rewrite(const ReorderRule& rule, const ParseNode& node, const Binding& binding);

}  // namespace synreorder

#endif  // SYNREORDER_MATCH_HPP
