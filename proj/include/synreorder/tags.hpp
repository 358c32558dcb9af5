// Tag classes: named groups of Penn labels used as pattern symbols in rules.

#ifndef SYNREORDER_TAGS_HPP
#define SYNREORDER_TAGS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "synreorder/error.hpp"

namespace synreorder {

struct TagClass {
  std::string name;
  // Empty means "any label".
  std::set<std::string> members;
  // Sequence classes bind a non-empty run of children instead of exactly one
  // (dcP and OP in the builtin registry).
  bool sequence = false;

  bool matches(std::string_view label) const {
    return members.empty() || members.count(std::string(label)) > 0;
  }

  friend bool operator==(const TagClass&, const TagClass&) = default;
};

class TagError : public Error {
 public:
  enum class Kind { UnknownClass, DuplicateClass, BadExtensionLine };

  TagError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class TagRegistry {
 public:
  /// Empty registry; see builtin() for the standard classes.
  TagRegistry() = default;

  /// The fourteen classes dcP, pp, whP, vp, sbar, np, vpw, prep, adv, adj,
  /// advP, punct, adjP, OP.
  static const TagRegistry& builtin();

  bool contains(std::string_view name) const;
  const TagClass& get(std::string_view name) const;  // throws UnknownClass

  /// Resolves a rule symbol: a registered class, or -- for an unregistered
  /// all-uppercase name such as `SBAR` or `S` -- a class holding exactly that
  /// label. Throws UnknownClass otherwise.
  TagClass resolve(std::string_view name) const;

  bool class_matches(std::string_view name, std::string_view label) const {
    return get(name).matches(label);
  }

  /// An empty member set registers an "any" class that binds runs, like dcP.
  void register_class(std::string name, std::set<std::string> members, bool sequence = false,
                      bool override_existing = false);

  /// Reads `name = LABEL1 LABEL2 ...` lines. `#` starts a comment line; a
  /// trailing `+` on the name (`name+ = ...`) makes it a sequence class.
  void load_extension(std::string_view text, bool override_existing = false);

  const std::map<std::string, TagClass, std::less<>>& classes() const { return classes_; }

 private:
  std::map<std::string, TagClass, std::less<>> classes_;
};

bool is_literal_label_name(std::string_view name);

}  // namespace synreorder

#endif  // SYNREORDER_TAGS_HPP
