// Applying an ordered rule list over whole trees and corpora.

#ifndef SYNREORDER_ENGINE_HPP
#define SYNREORDER_ENGINE_HPP

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "synreorder/error.hpp"
#include "synreorder/match.hpp"
#include "synreorder/rule.hpp"
#include "synreorder/tree.hpp"

namespace synreorder {

struct EngineConfig {
  // Keep rewriting a node until no rule matches, instead of once per visit.
  bool fixpoint = false;
  // Firings allowed at one node in fixpoint mode.
  std::size_t max_iterations = 10;
  // When set, only rules with these ids are tried.
  std::optional<std::set<std::string>> enabled_rule_ids;
  // Record steps in the returned trace; tokens are always recorded.
  bool trace = true;
};

struct TraceStep {
  NodePath path;
  std::string rule_id;
  std::vector<std::string> labels_before;
  std::vector<std::string> labels_after;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct RuleTrace {
  std::vector<TraceStep> steps;
  Tokens input_tokens;
  Tokens output_tokens;
};

struct ReorderResult {
  ParseNode tree;
  RuleTrace trace;
};

class EngineError : public Error {
 public:
  enum class Kind { IterationLimitExceeded, ReplayMismatch };

  EngineError(Kind kind, NodePath path, const std::string& what)
      : Error(what), kind_(kind), path_(std::move(path)) {}

  Kind kind() const { return kind_; }
  const NodePath& path() const { return path_; }

 private:
  Kind kind_;
  NodePath path_;
};

std::string format_path(const NodePath& path);

/// Pre-order traversal. At each internal node the rules whose category equals
/// the node label are tried in list order and the first match is applied;
/// traversal then descends into the rewritten children.
ReorderResult apply_rules(const ParseNode& tree, const std::vector<ReorderRule>& rules,
                          const EngineConfig& config = {});

/// Re-executes the recorded steps on `input` and returns the resulting tree.
/// Throws EngineError(ReplayMismatch) if a step no longer applies as recorded.
ParseNode replay_trace(const ParseNode& input, const RuleTrace& trace, const std::vector<ReorderRule>& rules);

/// Applies `rule` once at the node reached by `path`, nowhere else. Returns
/// nullopt if the rule does not match there.
std::optional<ParseNode> apply_rule_at(const ParseNode& tree, const ReorderRule& rule, const NodePath& path);

std::string reorder_sentence(std::string_view line, const std::vector<ReorderRule>& rules,
                             const EngineConfig& config = {});

struct CorpusSummary {
  std::size_t lines = 0;
  std::size_t parse_failures = 0;
  std::size_t engine_failures = 0;
  std::size_t blank_lines = 0;
  std::map<std::string, std::size_t> firings;
  // "line N: message" for every failed line.
  std::vector<std::string> diagnostics;

  void merge(const CorpusSummary& other);
};

struct CorpusOptions {
  EngineConfig engine;
  std::size_t workers = 1;
};

/// One output line per input line, in input order. A line that fails to parse
/// or to reorder is emitted as its original tokens and counted. Blank input
/// lines produce blank output lines.
CorpusSummary run_corpus(std::istream& in, std::ostream& out, const std::vector<ReorderRule>& rules,
                         const CorpusOptions& options = {});

}  // namespace synreorder

#endif  // SYNREORDER_ENGINE_HPP
