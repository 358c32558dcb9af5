// Penn-Treebank bracketed constituency trees.

#ifndef SYNREORDER_TREE_HPP
#define SYNREORDER_TREE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "synreorder/error.hpp"

namespace synreorder {

using Tokens = std::vector<std::string>;

/// An n-ary labeled tree. Leaves carry a POS label and a surface token;
/// internal nodes carry a constituent label and at least one child.
struct ParseNode {
  std::string label;
  std::vector<ParseNode> children;
  std::string token;

  static ParseNode leaf(std::string label, std::string token);
  static ParseNode internal(std::string label, std::vector<ParseNode> children);

  bool is_leaf() const { return children.empty(); }

  /// Child labels in order; empty for a leaf.
  std::vector<std::string> child_labels() const;

  friend bool operator==(const ParseNode&, const ParseNode&) = default;
};

class TreeError : public Error {
 public:
  enum class Kind { UnbalancedBrackets, EmptyTree, LabelMissing };

  TreeError(Kind kind, std::size_t position, const std::string& what);

  Kind kind() const { return kind_; }
  /// Byte offset into the input line where the problem was detected.
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

const char* to_string(TreeError::Kind kind);

/// Parses one bracketed tree. An outer `(ROOT x)` or `( x )` wrapper with a
/// single child is removed.
ParseNode parse_ptb(std::string_view line);

/// Canonical single-line form: one space between items, no outer wrapper.
std::string render_ptb(const ParseNode& tree);

/// Leaf tokens in sentence order.
Tokens flatten(const ParseNode& tree);

/// Best-effort token recovery for lines that failed to parse: the atoms that
/// sit in `(LABEL token)` position, or every atom when the line has no
/// brackets at all.
Tokens recover_tokens(std::string_view line);

/// `-LRB-` → `(`, `-RRB-` → `)`, anything else unchanged.
std::string unescape_token(std::string_view token);

std::string join_tokens(const Tokens& tokens);
Tokens split_tokens(std::string_view line);
std::string lowercase(std::string_view text);

}  // namespace synreorder

#endif  // SYNREORDER_TREE_HPP
