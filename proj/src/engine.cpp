#include "synreorder/engine.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <thread>

namespace synreorder {

std::string format_path(const NodePath& path) {
  std::string out = "root";
  for (std::size_t i : path) out += "/" + std::to_string(i);
  return out;
}

namespace {

class Walker {
 public:
  Walker(const std::vector<ReorderRule>& rules, const EngineConfig& config, RuleTrace& trace)
      : config_(config), trace_(trace) {
    for (const auto& rule : rules) {
      if (!config.enabled_rule_ids || config.enabled_rule_ids->count(rule.id) > 0) active_.push_back(&rule);
    }
  }

  void visit(ParseNode& node, NodePath& path) {
    if (node.is_leaf()) return;
    std::size_t fired = 0;
    while (fire_once(node, path)) {
      ++fired;
      if (!config_.fixpoint) break;
      if (fired >= config_.max_iterations) {
        if (first_match(node).first != nullptr) {
          throw EngineError(EngineError::Kind::IterationLimitExceeded, path,
                            "IterationLimitExceeded at " + format_path(path) + " after " +
                                std::to_string(fired) + " rewrites");
        }
        break;
      }
    }
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      path.push_back(i);
      visit(node.children[i], path);
      path.pop_back();
    }
  }

 private:
  std::pair<const ReorderRule*, std::optional<Binding>> first_match(const ParseNode& node) const {
    for (const ReorderRule* rule : active_) {
      if (rule->category != node.label) continue;
      if (auto binding = match_sequence(rule->lhs, node.children)) return {rule, std::move(binding)};
    }
    return {nullptr, std::nullopt};
  }

  bool fire_once(ParseNode& node, const NodePath& path) {
    auto [rule, binding] = first_match(node);
    if (rule == nullptr) return false;
    std::vector<ParseNode> rewritten = rewrite(*rule, node, *binding);
    if (config_.trace) {
      TraceStep step{path, rule->id, node.child_labels(), {}};
      node.children = std::move(rewritten);
      step.labels_after = node.child_labels();
      trace_.steps.push_back(std::move(step));
    } else {
      node.children = std::move(rewritten);
    }
    return true;
  }

  const EngineConfig& config_;
  RuleTrace& trace_;
  std::vector<const ReorderRule*> active_;
};

ParseNode& descend(ParseNode& node, const NodePath& path) {
  ParseNode* cur = &node;
  for (std::size_t i : path) {
    if (i >= cur->children.size()) {
      throw EngineError(EngineError::Kind::ReplayMismatch, path, "path " + format_path(path) + " does not exist");
    }
    cur = &cur->children[i];
  }
  return *cur;
}

}  // namespace

ReorderResult apply_rules(const ParseNode& tree, const std::vector<ReorderRule>& rules, const EngineConfig& config) {
  ReorderResult result{tree, {}};
  result.trace.input_tokens = flatten(tree);
  Walker walker(rules, config, result.trace);
  NodePath path;
  walker.visit(result.tree, path);
  result.trace.output_tokens = flatten(result.tree);
  return result;
}

ParseNode replay_trace(const ParseNode& input, const RuleTrace& trace, const std::vector<ReorderRule>& rules) {
  ParseNode tree = input;
  for (const auto& step : trace.steps) {
    auto rule = std::find_if(rules.begin(), rules.end(), [&](const ReorderRule& r) { return r.id == step.rule_id; });
    if (rule == rules.end()) {
      throw EngineError(EngineError::Kind::ReplayMismatch, step.path, "unknown rule id '" + step.rule_id + "'");
    }
    ParseNode& node = descend(tree, step.path);
    if (node.child_labels() != step.labels_before) {
      throw EngineError(EngineError::Kind::ReplayMismatch, step.path,
                        "children at " + format_path(step.path) + " differ from the trace");
    }
    auto binding = match_children(*rule, node);
    if (!binding) {
      throw EngineError(EngineError::Kind::ReplayMismatch, step.path,
                        "rule " + step.rule_id + " no longer matches at " + format_path(step.path));
    }
    node.children = rewrite(*rule, node, *binding);
    if (node.child_labels() != step.labels_after) {
      throw EngineError(EngineError::Kind::ReplayMismatch, step.path,
                        "rewrite at " + format_path(step.path) + " differs from the trace");
    }
  }
  return tree;
}

std::optional<ParseNode> apply_rule_at(const ParseNode& tree, const ReorderRule& rule, const NodePath& path) {
  ParseNode out = tree;
  ParseNode* node = &out;
  for (std::size_t i : path) {
    if (i >= node->children.size()) return std::nullopt;
    node = &node->children[i];
  }
  if (node->label != rule.category) return std::nullopt;
  auto binding = match_children(rule, *node);
  if (!binding) return std::nullopt;
  node->children = rewrite(rule, *node, *binding);
  return out;
}

std::string reorder_sentence(std::string_view line, const std::vector<ReorderRule>& rules, const EngineConfig& config) {
  EngineConfig quiet = config;
  quiet.trace = false;
  return join_tokens(apply_rules(parse_ptb(line), rules, quiet).trace.output_tokens);
}

void CorpusSummary::merge(const CorpusSummary& other) {
  lines += other.lines;
  parse_failures += other.parse_failures;
  engine_failures += other.engine_failures;
  blank_lines += other.blank_lines;
  for (const auto& [id, count] : other.firings) firings[id] += count;
  diagnostics.insert(diagnostics.end(), other.diagnostics.begin(), other.diagnostics.end());
}

namespace {

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

void process_range(const std::vector<std::string>& lines, std::size_t begin, std::size_t end,
                   const std::vector<ReorderRule>& rules, const EngineConfig& config,
                   std::vector<std::string>& outputs, CorpusSummary& summary) {
  EngineConfig traced = config;
  traced.trace = true;
  for (std::size_t i = begin; i < end; ++i) {
    const std::string& line = lines[i];
    ++summary.lines;
    if (is_blank(line)) {
      ++summary.blank_lines;
      continue;
    }
    try {
      ReorderResult result = apply_rules(parse_ptb(line), rules, traced);
      for (const auto& step : result.trace.steps) ++summary.firings[step.rule_id];
      outputs[i] = join_tokens(result.trace.output_tokens);
    } catch (const TreeError& e) {
      ++summary.parse_failures;
      summary.diagnostics.push_back("line " + std::to_string(i + 1) + ": " + e.what());
      outputs[i] = join_tokens(recover_tokens(line));
    } catch (const EngineError& e) {
      ++summary.engine_failures;
      summary.diagnostics.push_back("line " + std::to_string(i + 1) + ": " + e.what());
      outputs[i] = join_tokens(recover_tokens(line));
    }
  }
}

}  // namespace

CorpusSummary run_corpus(std::istream& in, std::ostream& out, const std::vector<ReorderRule>& rules,
                         const CorpusOptions& options) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  if (in.bad()) throw Error("read error after input line " + std::to_string(lines.size()));

  std::vector<std::string> outputs(lines.size());
  CorpusSummary summary;
  std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, lines.size()));
  if (workers <= 1) {
    process_range(lines, 0, lines.size(), rules, options.engine, outputs, summary);
  } else {
    std::vector<CorpusSummary> partial(workers);
    {
      std::vector<std::jthread> pool;
      std::size_t chunk = (lines.size() + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        std::size_t begin = std::min(lines.size(), w * chunk);
        std::size_t end = std::min(lines.size(), begin + chunk);
        pool.emplace_back([&, w, begin, end] {
          process_range(lines, begin, end, rules, options.engine, outputs, partial[w]);
        });
      }
    }
    for (const auto& p : partial) summary.merge(p);
  }

  for (const auto& line : outputs) out << line << '\n';
  if (!out) throw Error("write error after " + std::to_string(outputs.size()) + " output lines");
  return summary;
}

}  // namespace synreorder
