#include "synreorder/tree.hpp"

#include <algorithm>
#include <cctype>

namespace synreorder {

ParseNode ParseNode::leaf(std::string label, std::string token) {
  ParseNode node;
  node.label = std::move(label);
  node.token = std::move(token);
  return node;
}

ParseNode ParseNode::internal(std::string label, std::vector<ParseNode> children) {
  ParseNode node;
  node.label = std::move(label);
  node.children = std::move(children);
  return node;
}

std::vector<std::string> ParseNode::child_labels() const {
  std::vector<std::string> labels;
  labels.reserve(children.size());
  for (const auto& child : children) labels.push_back(child.label);
  return labels;
}

const char* to_string(TreeError::Kind kind) {
  switch (kind) {
    case TreeError::Kind::UnbalancedBrackets: return "UnbalancedBrackets";
    case TreeError::Kind::EmptyTree: return "EmptyTree";
    case TreeError::Kind::LabelMissing: return "LabelMissing";
  }
  return "?";
}

TreeError::TreeError(Kind kind, std::size_t position, const std::string& what)
    : Error(std::string(to_string(kind)) + " at " + std::to_string(position) + ": " + what),
      kind_(kind),
      position_(position) {}

namespace {

struct Item {
  enum Type { Open, Close, Atom } type;
  std::string_view text;
  std::size_t pos;
};

std::vector<Item> lex(std::string_view line) {
  std::vector<Item> items;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      items.push_back({Item::Open, line.substr(i, 1), i});
      ++i;
    } else if (c == ')') {
      items.push_back({Item::Close, line.substr(i, 1), i});
      ++i;
    } else {
      std::size_t start = i;
      while (i < line.size() && line[i] != '(' && line[i] != ')' &&
             !std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
      }
      items.push_back({Item::Atom, line.substr(start, i - start), start});
    }
  }
  return items;
}

class Reader {
 public:
  Reader(std::string_view line, std::vector<Item> items) : line_(line), items_(std::move(items)) {}

  ParseNode read_top() {
    if (items_.empty()) throw TreeError(TreeError::Kind::EmptyTree, 0, "no tree on line");
    ParseNode node = read_node(/*top=*/true);
    if (at_ < items_.size()) {
      throw TreeError(TreeError::Kind::UnbalancedBrackets, items_[at_].pos,
                      "unexpected content after the tree");
    }
    return node;
  }

 private:
  const Item* peek() const { return at_ < items_.size() ? &items_[at_] : nullptr; }

  std::size_t end_pos() const { return line_.size(); }

  ParseNode read_node(bool top) {
    const Item* open = peek();
    if (open == nullptr) throw TreeError(TreeError::Kind::UnbalancedBrackets, end_pos(), "expected '('");
    if (open->type != Item::Open) {
      throw TreeError(TreeError::Kind::UnbalancedBrackets, open->pos,
                      "expected '(' before '" + std::string(open->text) + "'");
    }
    std::size_t open_pos = open->pos;
    ++at_;

    std::string label;
    if (const Item* next = peek(); next != nullptr && next->type == Item::Atom) {
      label = std::string(next->text);
      ++at_;
    }

    const Item* next = peek();
    if (next == nullptr) throw TreeError(TreeError::Kind::UnbalancedBrackets, end_pos(), "missing ')'");
    if (next->type == Item::Close) {
      throw TreeError(TreeError::Kind::EmptyTree, open_pos, "node has neither children nor a token");
    }

    if (next->type == Item::Atom) {
      if (label.empty()) throw TreeError(TreeError::Kind::LabelMissing, next->pos, "token without a label");
      std::string token(next->text);
      std::size_t token_pos = next->pos;
      ++at_;
      const Item* close = peek();
      if (close == nullptr) throw TreeError(TreeError::Kind::UnbalancedBrackets, end_pos(), "missing ')'");
      if (close->type != Item::Close) {
        // A second bare token or a subtree after the token.
        throw TreeError(TreeError::Kind::LabelMissing, token_pos,
                        "token '" + token + "' is not wrapped in a (LABEL token) leaf");
      }
      ++at_;
      return ParseNode::leaf(std::move(label), std::move(token));
    }

    std::vector<ParseNode> children;
    while (true) {
      const Item* item = peek();
      if (item == nullptr) throw TreeError(TreeError::Kind::UnbalancedBrackets, end_pos(), "missing ')'");
      if (item->type == Item::Close) {
        ++at_;
        break;
      }
      if (item->type == Item::Atom) {
        throw TreeError(TreeError::Kind::LabelMissing, item->pos,
                        "token '" + std::string(item->text) + "' is not wrapped in a (LABEL token) leaf");
      }
      children.push_back(read_node(false));
    }
    if (label.empty() && !(top && children.size() == 1)) {
      throw TreeError(TreeError::Kind::LabelMissing, open_pos, "internal node without a label");
    }
    return ParseNode::internal(std::move(label), std::move(children));
  }

  std::string_view line_;
  std::vector<Item> items_;
  std::size_t at_ = 0;
};

void render_into(const ParseNode& node, std::string& out) {
  out += '(';
  out += node.label;
  if (node.is_leaf()) {
    out += ' ';
    out += node.token;
  } else {
    for (const auto& child : node.children) {
      out += ' ';
      render_into(child, out);
    }
  }
  out += ')';
}

void flatten_into(const ParseNode& node, Tokens& out) {
  if (node.is_leaf()) {
    out.push_back(node.token);
    return;
  }
  for (const auto& child : node.children) flatten_into(child, out);
}

}  // namespace

ParseNode parse_ptb(std::string_view line) {
  Reader reader(line, lex(line));
  ParseNode tree = reader.read_top();
  while (!tree.is_leaf() && tree.children.size() == 1 && (tree.label.empty() || tree.label == "ROOT")) {
    ParseNode inner = std::move(tree.children.front());
    tree = std::move(inner);
  }
  return tree;
}

std::string render_ptb(const ParseNode& tree) {
  std::string out;
  render_into(tree, out);
  return out;
}

Tokens flatten(const ParseNode& tree) {
  Tokens out;
  flatten_into(tree, out);
  return out;
}

Tokens recover_tokens(std::string_view line) {
  auto items = lex(line);
  bool has_brackets = std::any_of(items.begin(), items.end(), [](const Item& it) { return it.type != Item::Atom; });
  Tokens out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].type != Item::Atom) continue;
    if (!has_brackets) {
      out.emplace_back(items[i].text);
      continue;
    }
    bool after_label = i >= 2 && items[i - 1].type == Item::Atom && items[i - 2].type == Item::Open;
    bool before_close = i + 1 < items.size() && items[i + 1].type == Item::Close;
    if (after_label && before_close) out.emplace_back(items[i].text);
  }
  return out;
}

std::string unescape_token(std::string_view token) {
  if (token == "-LRB-") return "(";
  if (token == "-RRB-") return ")";
  return std::string(token);
}

std::string join_tokens(const Tokens& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

Tokens split_tokens(std::string_view line) {
  Tokens out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace synreorder
