// Shared generators and brute-force oracles for the property tests.

#ifndef SYNREORDER_TESTS_SUPPORT_HPP
#define SYNREORDER_TESTS_SUPPORT_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "synreorder/match.hpp"
#include "synreorder/metrics.hpp"
#include "synreorder/phrases.hpp"
#include "synreorder/rule.hpp"
#include "synreorder/tree.hpp"

namespace testing_support {

using namespace synreorder;

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[pick(rng, v.size())];
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// ---------------------------------------------------------------------------
// Random parse trees over a Penn-like inventory that exercises every builtin
// rule category.

struct TreeGen {
  Rng& rng;
  std::size_t max_depth = 5;
  std::size_t max_children = 4;
  std::size_t next_word = 0;

  const std::vector<std::string> phrase_labels{"S", "NP", "VP", "PP", "SBAR", "ADJP", "ADVP", "WHNP", "WHADVP", "QP"};
  const std::vector<std::string> word_labels{"NN", "NNS", "NNP", "DT", "JJ", "JJR", "RB", "RBS", "IN", "TO",
                                             "VB", "VBZ", "VBD", "VBN", "VBG", "VBP", "MD", ",", "WRB", "CD"};

  ParseNode leaf() {
    // Unique words so permutation checks see individual tokens move.
    return ParseNode::leaf(pick(rng, word_labels), "w" + std::to_string(next_word++));
  }

  ParseNode node(std::size_t depth) {
    if (depth >= max_depth || (depth > 0 && coin(rng, 0.3))) return leaf();
    std::size_t n = 1 + pick(rng, max_children);
    std::vector<ParseNode> kids;
    for (std::size_t i = 0; i < n; ++i) kids.push_back(node(depth + 1));
    return ParseNode::internal(pick(rng, phrase_labels), std::move(kids));
  }

  ParseNode tree() {
    next_word = 0;
    std::vector<ParseNode> kids;
    std::size_t n = 1 + pick(rng, max_children);
    for (std::size_t i = 0; i < n; ++i) kids.push_back(node(1));
    return ParseNode::internal("S", std::move(kids));
  }
};

// ---------------------------------------------------------------------------
// Brute-force tiling oracle. Enumerates every way to cut a child sequence
// into one contiguous piece per pattern element (no pruning, no greediness),
// keeps the valid ones, and returns them as depth-first leaf lengths plus the
// wrapper positions they imply.

struct Tiling {
  // (key, wrapper path, begin, end) for each leaf element, depth-first.
  std::vector<SlotBinding> slots;

  std::vector<std::size_t> lengths() const {
    std::vector<std::size_t> out;
    for (const auto& s : slots) out.push_back(s.end - s.begin);
    return out;
  }
};

inline bool element_accepts(const PatternElement& e, std::size_t count) {
  bool sequence = e.cls.sequence || e.quantifier == Quantifier::Star || e.quantifier == Quantifier::Plus;
  std::size_t lo = e.quantifier == Quantifier::Optional ? 0 : 1;
  std::size_t hi = sequence ? count : 1;
  return count >= lo && count <= hi;
}

// All compositions of n into k non-negative parts.
inline void compositions(std::size_t n, std::size_t k, std::vector<std::size_t>& cur,
                         std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() + 1 == k) {
    cur.push_back(n);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t i = 0; i <= n; ++i) {
    cur.push_back(i);
    compositions(n - i, k, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Tiling> all_tilings(const std::vector<PatternElement>& pattern, const std::vector<ParseNode>& children,
                                       const NodePath& at) {
  std::vector<Tiling> result;
  if (pattern.empty()) {
    if (children.empty()) result.emplace_back();
    return result;
  }
  std::vector<std::vector<std::size_t>> cuts;
  std::vector<std::size_t> cur;
  compositions(children.size(), pattern.size(), cur, cuts);
  for (const auto& cut : cuts) {
    // Cartesian product of the per-element alternatives.
    std::vector<Tiling> partial(1);
    std::size_t pos = 0;
    bool ok = true;
    for (std::size_t e = 0; e < pattern.size() && ok; ++e) {
      const PatternElement& el = pattern[e];
      std::size_t len = cut[e];
      std::vector<Tiling> next;
      if (el.is_wrapper()) {
        const ParseNode* w = len == 1 ? &children[pos] : nullptr;
        if (w == nullptr || w->is_leaf() || !el.cls.matches(w->label)) {
          ok = false;
          break;
        }
        NodePath inner_at = at;
        inner_at.push_back(pos);
        for (const auto& inner : all_tilings(el.nested, w->children, inner_at)) {
          for (const auto& p : partial) {
            Tiling t = p;
            t.slots.insert(t.slots.end(), inner.slots.begin(), inner.slots.end());
            next.push_back(std::move(t));
          }
        }
      } else {
        bool members = true;
        for (std::size_t i = pos; i < pos + len; ++i) members = members && el.cls.matches(children[i].label);
        if (members && element_accepts(el, len)) {
          for (const auto& p : partial) {
            Tiling t = p;
            t.slots.push_back(SlotBinding{el.key, at, pos, pos + len});
            next.push_back(std::move(t));
          }
        }
      }
      partial = std::move(next);
      ok = !partial.empty();
      pos += len;
    }
    if (ok) result.insert(result.end(), partial.begin(), partial.end());
  }
  return result;
}

/// The leftmost-longest valid tiling: lexicographically largest leaf lengths.
inline std::optional<Tiling> oracle_match(const std::vector<PatternElement>& pattern,
                                          const std::vector<ParseNode>& children) {
  auto all = all_tilings(pattern, children, {});
  if (all.empty()) return std::nullopt;
  return *std::max_element(all.begin(), all.end(),
                           [](const Tiling& a, const Tiling& b) { return a.lengths() < b.lengths(); });
}

// Random (rule, child sequence) pairs for the matcher oracle: at most four
// elements per pattern level, one optional level of nesting, up to six
// children of which NP/PP are often internal so wrappers can match.
struct MatchInstance {
  ReorderRule rule;
  std::vector<ParseNode> children;
};

inline MatchInstance random_match_instance(Rng& rng) {
  static const std::vector<std::string> leaf_names{"np", "pp", "vpw", "dcP", "OP", "adv", "prep", "punct", "NN", "ADVP"};
  static const std::vector<std::string> quants{"", "", "?", "*"};
  static const std::vector<std::string> child_labels{"NP", "PP", "VBZ", "VBN", "IN", "RB", "ADVP", "NN", ",", "SBAR"};

  int counter = 0;
  std::vector<std::string> keys;
  std::function<std::string(int, std::size_t)> gen = [&](int d, std::size_t max_elems) {
    std::string out;
    std::size_t n = 1 + pick(rng, max_elems);
    for (std::size_t i = 0; i < n; ++i) {
      if (!out.empty()) out += ' ';
      if (d == 0 && coin(rng, 0.2)) {
        out += std::string(coin(rng) ? "NP" : "PP") + "[" + gen(1, 2) + "]";
      } else {
        std::string key = pick(rng, leaf_names) + std::to_string(++counter);
        out += key + pick(rng, quants);
        keys.push_back(key);
      }
    }
    return out;
  };
  std::string lhs = gen(0, 4);
  std::string rhs;
  for (const auto& k : keys) rhs += " " + k;

  std::vector<ParseNode> kids;
  std::size_t n = pick(rng, 7);
  for (std::size_t i = 0; i < n; ++i) {
    std::string label = pick(rng, child_labels);
    if ((label == "NP" || label == "PP") && coin(rng, 0.7)) {
      std::vector<ParseNode> inner;
      std::size_t m = 1 + pick(rng, 3);
      for (std::size_t j = 0; j < m; ++j) {
        inner.push_back(ParseNode::leaf(pick(rng, child_labels), "t" + std::to_string(i) + "_" + std::to_string(j)));
      }
      kids.push_back(ParseNode::internal(label, std::move(inner)));
    } else {
      kids.push_back(ParseNode::leaf(label, "t" + std::to_string(i)));
    }
  }
  return {parse_rule("X(" + lhs + " :" + rhs + ")"), std::move(kids)};
}

// ---------------------------------------------------------------------------
// Brute-force phrase extraction: every (source span, target span) block is
// checked directly against the definition.

inline std::set<PhrasePair> oracle_phrases(const SentenceAlignment& sa, std::size_t max_len, ExtractionMode mode) {
  std::set<PhrasePair> out;
  const std::size_t ns = sa.source.size(), nt = sa.target.size();
  auto src_aligned = [&](std::size_t i) {
    return std::any_of(sa.links.begin(), sa.links.end(), [&](const Link& l) { return l.first == i; });
  };
  auto tgt_aligned = [&](std::size_t j) {
    return std::any_of(sa.links.begin(), sa.links.end(), [&](const Link& l) { return l.second == j; });
  };
  for (std::size_t i1 = 0; i1 < ns; ++i1) {
    for (std::size_t i2 = i1; i2 < ns; ++i2) {
      if (i2 - i1 + 1 > max_len) continue;
      for (std::size_t j1 = 0; j1 < nt; ++j1) {
        for (std::size_t j2 = j1; j2 < nt; ++j2) {
          bool crossing = false, inside = false;
          for (const auto& [s, t] : sa.links) {
            bool in_s = s >= i1 && s <= i2, in_t = t >= j1 && t <= j2;
            if (in_s != in_t) crossing = true;
            if (in_s && in_t) inside = true;
          }
          if (crossing || !inside) continue;
          if (mode == ExtractionMode::Strict &&
              !(src_aligned(i1) && src_aligned(i2) && tgt_aligned(j1) && tgt_aligned(j2))) {
            continue;
          }
          out.emplace(Span{i1, i2}, Span{j1, j2});
        }
      }
    }
  }
  return out;
}

inline SentenceAlignment random_alignment(Rng& rng, std::size_t max_len = 8) {
  SentenceAlignment sa;
  std::size_t ns = 1 + pick(rng, max_len), nt = 1 + pick(rng, max_len);
  const std::vector<std::string> words{"a", "b", "c", "d"};
  for (std::size_t i = 0; i < ns; ++i) sa.source.push_back(pick(rng, words));
  for (std::size_t j = 0; j < nt; ++j) sa.target.push_back(pick(rng, words));
  double density = std::uniform_real_distribution<double>(0.0, 0.35)(rng);
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      if (coin(rng, density)) sa.links.emplace(i, j);
    }
  }
  return sa;
}

// ---------------------------------------------------------------------------
// Metric oracles.

/// The recursive definition of edit distance, exponential on purpose.
inline std::size_t naive_levenshtein(const Tokens& a, std::size_t i, const Tokens& b, std::size_t j) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  std::size_t sub = naive_levenshtein(a, i + 1, b, j + 1) + (a[i] == b[j] ? 0 : 1);
  std::size_t del = naive_levenshtein(a, i + 1, b, j) + 1;
  std::size_t ins = naive_levenshtein(a, i, b, j + 1) + 1;
  return std::min({sub, del, ins});
}

inline Tokens random_tokens(Rng& rng, std::size_t min_len, std::size_t max_len,
                            const std::vector<std::string>& vocab = {"a", "b", "c", "d"}) {
  std::size_t n = min_len + pick(rng, max_len - min_len + 1);
  Tokens out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(pick(rng, vocab));
  return out;
}

inline EvalCorpus random_corpus(Rng& rng, std::size_t max_segments = 4, std::size_t max_refs = 3) {
  EvalCorpus c;
  std::size_t n = 1 + pick(rng, max_segments);
  for (std::size_t s = 0; s < n; ++s) {
    EvalSegment seg{random_tokens(rng, 0, 6), {}};
    std::size_t r = 1 + pick(rng, max_refs);
    for (std::size_t k = 0; k < r; ++k) seg.references.push_back(random_tokens(rng, 1, 6));
    c.segments.push_back(std::move(seg));
  }
  return c;
}

inline std::map<std::string, std::size_t> bag(const Tokens& t) {
  std::map<std::string, std::size_t> m;
  for (const auto& w : t) ++m[w];
  return m;
}

}  // namespace testing_support

#endif  // SYNREORDER_TESTS_SUPPORT_HPP
