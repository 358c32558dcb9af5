#include "synreorder/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "synreorder/engine.hpp"
#include "synreorder/metrics.hpp"
#include "synreorder/phrases.hpp"
#include "synreorder/rule.hpp"
#include "synreorder/ruleset.hpp"
#include "synreorder/tags.hpp"

namespace synreorder {

namespace {

using json = nlohmann::json;

// Input/output problems; mapped to exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

// Bad data or a failed check; mapped to exit code 1.
class DataError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

std::vector<std::string> read_lines(std::istream& in, const std::string& name) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  if (in.bad()) throw IoError("error reading " + name);
  return lines;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path + "'");
  return read_lines(f, "'" + path + "'");
}

// "-" or empty means the caller's stream.
class Streams {
 public:
  Streams(std::istream& in, std::ostream& out) : in_(&in), out_(&out) {}

  void open_input(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_in_ = std::make_unique<std::ifstream>(path);
    if (!*file_in_) throw IoError("cannot open input '" + path + "'");
    in_ = file_in_.get();
  }

  void open_output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_out_ = std::make_unique<std::ofstream>(path);
    if (!*file_out_) throw IoError("cannot open output '" + path + "'");
    out_ = file_out_.get();
  }

  std::istream& in() { return *in_; }
  std::ostream& out() { return *out_; }

  void finish() {
    out_->flush();
    if (!*out_) throw IoError("error writing output");
  }

 private:
  std::istream* in_;
  std::ostream* out_;
  std::unique_ptr<std::ifstream> file_in_;
  std::unique_ptr<std::ofstream> file_out_;
};

std::set<std::string> split_ids(std::string_view text) {
  std::set<std::string> ids;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string id(text.substr(start, comma - start));
    id.erase(0, id.find_first_not_of(' '));
    id.erase(id.find_last_not_of(' ') + 1);
    if (!id.empty()) ids.insert(id);
    start = comma + 1;
  }
  return ids;
}

struct RuleOptions {
  std::string rules;        // "", "builtin", "only:ids" or a path
  std::string tag_classes;  // extension file
  std::string only;         // comma-separated ids
};

void add_rule_options(CLI::App* cmd, RuleOptions& opt) {
  cmd->add_option("--rules", opt.rules,
                  "Rule file, 'builtin' (default) or 'only:ID,ID' for a subset of the builtin rules");
  cmd->add_option("--tag-classes", opt.tag_classes, "Extra tag-class definitions (name = LABEL ...)");
  cmd->add_option("--only", opt.only, "Comma-separated rule ids to enable");
}

std::vector<ReorderRule> load_rules(const RuleOptions& opt) {
  TagRegistry registry = TagRegistry::builtin();
  bool custom_tags = !opt.tag_classes.empty();
  if (custom_tags) registry.load_extension(read_file(opt.tag_classes));

  std::vector<ReorderRule> rules;
  std::optional<std::set<std::string>> subset;
  if (opt.rules.empty() || opt.rules == "builtin" || opt.rules.rfind("only:", 0) == 0) {
    rules = custom_tags ? parse_ruleset(builtin_rules_text(), registry) : builtin_rules();
    if (opt.rules.rfind("only:", 0) == 0) subset = split_ids(std::string_view(opt.rules).substr(5));
  } else {
    rules = parse_ruleset(read_file(opt.rules), registry);
  }
  if (!opt.only.empty()) {
    auto ids = split_ids(opt.only);
    if (subset) {
      std::set<std::string> both;
      for (const auto& id : ids) {
        if (subset->count(id) > 0) both.insert(id);
      }
      subset = std::move(both);
    } else {
      subset = std::move(ids);
    }
  }
  if (subset) rules = select_rules(rules, *subset);
  return rules;
}

struct EngineOptions {
  bool fixpoint = false;
  std::size_t max_iterations = 10;
  bool strict = false;
};

void add_engine_options(CLI::App* cmd, EngineOptions& opt) {
  cmd->add_flag("--fixpoint", opt.fixpoint, "Rewrite each node until no rule matches");
  cmd->add_option("--max-iterations", opt.max_iterations, "Firing limit per node in fixpoint mode")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--strict", opt.strict, "Exit 1 if any line fails to parse or reorder");
}

EngineConfig engine_config(const EngineOptions& opt) {
  EngineConfig config;
  config.fixpoint = opt.fixpoint;
  config.max_iterations = opt.max_iterations;
  return config;
}

void print_summary(const CorpusSummary& summary, std::ostream& err) {
  err << "lines " << summary.lines << ", blank " << summary.blank_lines << ", parse failures "
      << summary.parse_failures << ", engine failures " << summary.engine_failures << '\n';
  if (!summary.firings.empty()) {
    err << "firings:";
    for (const auto& [id, n] : summary.firings) err << ' ' << id << '=' << n;
    err << '\n';
  }
  for (const auto& d : summary.diagnostics) err << d << '\n';
}

std::string labels(const std::vector<std::string>& ls) {
  std::string out;
  for (const auto& l : ls) {
    if (!out.empty()) out += ' ';
    out += l;
  }
  return out;
}

int cmd_trace(Streams& io, const std::vector<ReorderRule>& rules, const EngineOptions& opt, bool replay,
              std::ostream& err) {
  EngineConfig config = engine_config(opt);
  config.trace = true;
  std::size_t failures = 0, replay_failures = 0, n = 0;
  for (const auto& line : read_lines(io.in(), "input")) {
    ++n;
    std::ostream& out = io.out();
    out << "# line " << n << '\n';
    if (line.find_first_not_of(" \t") == std::string::npos) {
      out << "input:\noutput:\n\n";
      continue;
    }
    try {
      ParseNode tree = parse_ptb(line);
      ReorderResult result = apply_rules(tree, rules, config);
      out << "input: " << join_tokens(result.trace.input_tokens) << '\n';
      std::size_t k = 0;
      for (const auto& step : result.trace.steps) {
        out << "step " << ++k << ": " << step.rule_id << " at " << format_path(step.path) << ": "
            << labels(step.labels_before) << " -> " << labels(step.labels_after) << '\n';
      }
      out << "output: " << join_tokens(result.trace.output_tokens) << '\n';
      if (replay) {
        try {
          ParseNode again = replay_trace(tree, result.trace, rules);
          bool same = again == result.tree;
          out << "replay: " << (same ? "OK" : "MISMATCH") << '\n';
          if (!same) ++replay_failures;
        } catch (const EngineError& e) {
          out << "replay: MISMATCH (" << e.what() << ")\n";
          ++replay_failures;
        }
      }
    } catch (const Error& e) {
      ++failures;
      err << "line " << n << ": " << e.what() << '\n';
      out << "input: " << join_tokens(recover_tokens(line)) << '\n';
      out << "error: " << e.what() << '\n';
      out << "output: " << join_tokens(recover_tokens(line)) << '\n';
    }
    out << '\n';
  }
  io.finish();
  if (replay_failures > 0) {
    err << replay_failures << " trace replays did not reproduce the output\n";
    return kExitFailure;
  }
  return (opt.strict && failures > 0) ? kExitFailure : kExitOk;
}

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

struct EvalArgs {
  std::string hyp;
  std::vector<std::string> refs;
  std::size_t max_n = 4;
  std::size_t nist_max_n = 5;
  bool smooth = false;
  bool json = false;
};

int cmd_eval(const EvalArgs& args, Streams& io) {
  std::vector<std::string> hyp = read_lines(args.hyp);
  std::vector<std::vector<std::string>> refs;
  for (const auto& path : args.refs) refs.push_back(read_lines(path));
  for (std::size_t r = 0; r < refs.size(); ++r) {
    if (refs[r].size() != hyp.size()) {
      throw DataError("LineCountMismatch: hypothesis '" + args.hyp + "' has " + std::to_string(hyp.size()) +
                      " lines, reference '" + args.refs[r] + "' has " + std::to_string(refs[r].size()));
    }
  }
  EvalCorpus corpus;
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    EvalSegment seg{tokenize(hyp[i]), {}};
    for (const auto& ref : refs) seg.references.push_back(tokenize(ref[i]));
    corpus.segments.push_back(std::move(seg));
  }
  EvalOptions options;
  options.bleu.max_n = args.max_n;
  options.bleu.smooth = args.smooth;
  options.nist_max_n = args.nist_max_n;
  EvalReport r;
  try {
    r = evaluate(corpus, options);
  } catch (const MetricError& e) {
    throw DataError(e.what());
  }
  if (args.json) {
    json j = {{"bleu", r.bleu.score},
              {"bleu_precisions", r.bleu.precisions},
              {"brevity_penalty", r.bleu.brevity_penalty},
              {"hypothesis_length", r.bleu.hypothesis_length},
              {"reference_length", r.bleu.reference_length},
              {"nist", r.nist},
              {"mwer", r.mwer},
              {"mper", r.mper},
              {"segments", corpus.segments.size()},
              {"references", refs.size()},
              {"max_n", args.max_n},
              {"smooth", args.smooth}};
    io.out() << j.dump() << '\n';
  } else {
    io.out() << "BLEU " << fixed(r.bleu.score, 4) << " NIST " << fixed(r.nist, 4) << " mWER " << fixed(r.mwer, 2)
             << " mPER " << fixed(r.mper, 2) << '\n';
  }
  io.finish();
  return kExitOk;
}

struct PhraseArgs {
  std::vector<std::string> triple;   // source target alignment
  std::vector<std::string> compare;  // second triple
  std::vector<std::string> compare_reports;
  std::size_t min_len = 2;
  std::size_t max_len = 7;
  std::string mode = "extended";
  bool json = false;
};

PhraseReport report_from_files(const std::vector<std::string>& paths, const PhraseArgs& args, ExtractionMode mode) {
  std::ifstream s(paths[0]), t(paths[1]), a(paths[2]);
  for (std::size_t i = 0; i < 3; ++i) {
    std::ifstream* f = i == 0 ? &s : i == 1 ? &t : &a;
    if (!*f) throw IoError("cannot open '" + paths[i] + "'");
  }
  try {
    return phrase_report(s, t, a, args.min_len, args.max_len, mode);
  } catch (const AlignmentError& e) {
    throw DataError(paths[2] + ": " + e.what());
  }
}

json report_json(const PhraseReport& r) {
  json buckets = json::array();
  for (const auto& b : r.buckets) buckets.push_back({{"length", b.length}, {"phrases", b.total}, {"distinct", b.distinct}});
  return {{"min_len", r.min_len}, {"max_len", r.max_len}, {"sentences", r.sentences}, {"buckets", buckets}};
}

PhraseReport report_from_json(const std::string& path) {
  try {
    json j = json::parse(read_file(path));
    PhraseReport r;
    r.min_len = j.at("min_len").get<std::size_t>();
    r.max_len = j.at("max_len").get<std::size_t>();
    r.sentences = j.value("sentences", std::size_t{0});
    for (const auto& b : j.at("buckets")) {
      r.buckets.push_back({b.at("length").get<std::size_t>(), b.at("phrases").get<std::size_t>(),
                           b.at("distinct").get<std::size_t>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw DataError("'" + path + "' is not a phrase report: " + e.what());
  }
}

json delta_json(const DeltaTable& table) {
  auto cell = [](const DeltaCell& c) {
    json j = {{"baseline", c.baseline}, {"variant", c.variant}, {"iobl", c.iobl}};
    j["percent"] = c.percent ? json(*c.percent) : json(nullptr);
    return j;
  };
  json rows = json::array();
  for (const auto& r : table.rows) rows.push_back({{"length", r.length}, {"phrases", cell(r.total)}, {"distinct", cell(r.distinct)}});
  return {{"rows", rows}};
}

int cmd_phrase_stats(const PhraseArgs& args, Streams& io) {
  auto mode = parse_extraction_mode(args.mode);
  if (!mode) throw DataError("unknown extraction mode '" + args.mode + "'");
  if (args.min_len < 1 || args.max_len < args.min_len) {
    throw DataError("need 1 <= --min-len <= --max-len");
  }

  std::optional<DeltaTable> delta;
  std::optional<PhraseReport> report;
  try {
    if (!args.compare_reports.empty()) {
      delta = compare_reports(report_from_json(args.compare_reports[0]), report_from_json(args.compare_reports[1]));
    } else {
      if (args.triple.empty()) throw DataError("phrase-stats needs SOURCE TARGET ALIGNMENT or --compare-reports");
      report = report_from_files(args.triple, args, *mode);
      if (!args.compare.empty()) delta = compare_reports(*report, report_from_files(args.compare, args, *mode));
    }
  } catch (const ReportError& e) {
    throw DataError(e.what());
  }

  if (args.json) {
    json j;
    if (report) j["report"] = report_json(*report);
    if (delta) j["delta"] = delta_json(*delta);
    io.out() << j.dump() << '\n';
  } else {
    if (report && !delta) io.out() << format_report(*report);
    if (delta) io.out() << format_delta_table(*delta);
  }
  io.finish();
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Syntactic source reordering for English -> Hindi SMT preprocessing", "synreorder"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string input, output;
  RuleOptions rule_opt;
  EngineOptions engine_opt;
  std::size_t workers = 1;
  bool replay = false;

  auto* reorder = app.add_subcommand("reorder", "Reorder one bracketed parse per line into token lines");
  auto* trace = app.add_subcommand("trace", "Print the rule firings for each parse");
  for (auto* cmd : {reorder, trace}) {
    cmd->add_option("-i,--input", input, "Input file (default: standard input)");
    cmd->add_option("-o,--output", output, "Output file (default: standard output)");
    add_rule_options(cmd, rule_opt);
    add_engine_options(cmd, engine_opt);
  }
  reorder->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  trace->add_flag("--replay", replay, "Replay each trace and check it reproduces the output");

  auto* validate = app.add_subcommand("rules-validate", "Parse a rule file and print it in canonical form");
  add_rule_options(validate, rule_opt);
  validate->add_option("-o,--output", output, "Output file (default: standard output)");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Score hypotheses with BLEU, NIST, mWER and mPER");
  eval->add_option("--hyp", eval_args.hyp, "Hypothesis file")->required();
  eval->add_option("--ref", eval_args.refs, "Reference file (repeatable)")->required()->take_all();
  eval->add_option("--max-n", eval_args.max_n, "Largest BLEU n-gram order")->check(CLI::PositiveNumber);
  eval->add_option("--nist-max-n", eval_args.nist_max_n, "Largest NIST n-gram order")->check(CLI::PositiveNumber);
  eval->add_flag("--smooth", eval_args.smooth, "Add-one smoothing for BLEU orders >= 2");
  eval->add_flag("--json", eval_args.json, "Print a JSON record instead of the summary line");
  eval->add_option("-o,--output", output, "Output file (default: standard output)");

  PhraseArgs phrase_args;
  auto* phrases = app.add_subcommand("phrase-stats", "Count alignment-consistent phrase pairs per source length");
  phrases->add_option("files", phrase_args.triple, "SOURCE TARGET ALIGNMENT")->expected(3);
  phrases->add_option("--compare", phrase_args.compare, "Variant SOURCE TARGET ALIGNMENT; prints the delta table")
      ->expected(3);
  phrases->add_option("--compare-reports", phrase_args.compare_reports,
                      "BASELINE VARIANT reports saved with --json; prints the delta table")
      ->expected(2);
  phrases->add_option("--min-len", phrase_args.min_len, "Shortest source phrase length reported");
  phrases->add_option("--max-len", phrase_args.max_len, "Longest source phrase length extracted");
  phrases->add_option("--mode", phrase_args.mode, "extended (default) or strict")
      ->check(CLI::IsMember({"extended", "strict"}));
  phrases->add_flag("--json", phrase_args.json, "Print a JSON record");
  phrases->add_option("-o,--output", output, "Output file (default: standard output)");

  std::vector<std::string> argv_store{"synreorder"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Streams io(in, out);
    io.open_output(output);
    if (reorder->parsed() || trace->parsed()) {
      io.open_input(input);
      std::vector<ReorderRule> rules = load_rules(rule_opt);
      if (trace->parsed()) return cmd_trace(io, rules, engine_opt, replay, err);
      CorpusOptions options{engine_config(engine_opt), workers};
      options.engine.trace = false;
      CorpusSummary summary = run_corpus(io.in(), io.out(), rules, options);
      io.finish();
      print_summary(summary, err);
      bool failed = summary.parse_failures + summary.engine_failures > 0;
      return (engine_opt.strict && failed) ? kExitFailure : kExitOk;
    }
    if (validate->parsed()) {
      std::vector<ReorderRule> rules = load_rules(rule_opt);
      for (const auto& rule : rules) io.out() << rule.id << '\t' << render_rule(rule) << '\n';
      io.finish();
      err << rules.size() << " rules OK\n";
      return kExitOk;
    }
    if (eval->parsed()) return cmd_eval(eval_args, io);
    if (phrases->parsed()) return cmd_phrase_stats(phrase_args, io);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    // Rule, tag-class and data errors.
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace synreorder
