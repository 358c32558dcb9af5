#include "synreorder/match.hpp"

#include <algorithm>

namespace synreorder {

const SlotBinding& Binding::slot(const SlotKey& key) const {
  auto it = std::find_if(slots.begin(), slots.end(), [&](const SlotBinding& s) { return s.key == key; });
  if (it == slots.end()) throw MatchError("binding has no slot '" + key.str() + "'");
  return *it;
}

namespace {

class Matcher {
 public:
  explicit Matcher(Binding& out) : out_(out) {}

  bool match(const std::vector<PatternElement>& pattern, std::size_t ei,
             const std::vector<ParseNode>& children, std::size_t ci, NodePath& path) {
    if (ei == pattern.size()) return ci == children.size();
    const PatternElement& e = pattern[ei];
    const std::size_t n = children.size();

    if (e.is_wrapper()) {
      if (ci >= n || children[ci].is_leaf() || !e.cls.matches(children[ci].label)) return false;
      const std::size_t slot_mark = out_.slots.size();
      const std::size_t wrapper_mark = out_.consumed_wrappers.size();
      path.push_back(ci);
      out_.consumed_wrappers.push_back(path);
      bool inner = match(e.nested, 0, children[ci].children, 0, path);
      path.pop_back();
      // The sub-match only constrains the wrapper's own children, so a failure
      // further right cannot be fixed by choosing a different inner tiling.
      if (inner && match(pattern, ei + 1, children, ci + 1, path)) return true;
      out_.slots.resize(slot_mark);
      out_.consumed_wrappers.resize(wrapper_mark);
      return false;
    }

    std::size_t run = 0;
    while (ci + run < n && e.cls.matches(children[ci + run].label)) ++run;
    std::size_t longest = std::min(run, e.max_count());
    for (std::size_t len = longest + 1; len-- > e.min_count();) {
      out_.slots.push_back(SlotBinding{e.key, path, ci, ci + len});
      if (match(pattern, ei + 1, children, ci + len, path)) return true;
      out_.slots.pop_back();
    }
    return false;
  }

 private:
  Binding& out_;
};

const ParseNode& descend(const ParseNode& node, const NodePath& path) {
  const ParseNode* cur = &node;
  for (std::size_t i : path) cur = &cur->children.at(i);
  return *cur;
}

}  // namespace

std::optional<Binding> match_sequence(const std::vector<PatternElement>& pattern,
                                      const std::vector<ParseNode>& children) {
  Binding binding;
  Matcher matcher(binding);
  NodePath path;
  if (!matcher.match(pattern, 0, children, 0, path)) return std::nullopt;
  return binding;
}

std::optional<Binding> match_children(const ReorderRule& rule, const ParseNode& node) {
  if (node.label != rule.category) {
    throw MatchError("rule " + rule.id + " applies to " + rule.category + ", not " + node.label);
  }
  if (node.is_leaf()) return std::nullopt;
  return match_sequence(rule.lhs, node.children);
}

std::vector<ParseNode> rewrite(const ReorderRule& rule, const ParseNode& node, const Binding& binding) {
  std::vector<ParseNode> out;
  for (const auto& ref : rule.rhs) {
    const SlotBinding& slot = binding.slot(ref.key);
    const ParseNode& parent = descend(node, slot.wrapper_path);
    for (std::size_t i = slot.begin; i < slot.end; ++i) out.push_back(parent.children[i]);
  }
  return out;
}

}  // namespace synreorder
