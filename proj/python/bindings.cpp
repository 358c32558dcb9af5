#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "synreorder/engine.hpp"
#include "synreorder/metrics.hpp"
#include "synreorder/phrases.hpp"
#include "synreorder/rule.hpp"
#include "synreorder/ruleset.hpp"
#include "synreorder/tree.hpp"

namespace py = pybind11;
using namespace synreorder;

namespace {

std::vector<ReorderRule> resolve_rules(const std::optional<std::string>& rules_text,
                                       const std::optional<std::vector<std::string>>& only) {
  std::vector<ReorderRule> rules = rules_text ? parse_ruleset(*rules_text) : builtin_rules();
  if (only) rules = select_rules(rules, std::set<std::string>(only->begin(), only->end()));
  return rules;
}

EngineConfig make_config(bool fixpoint, std::size_t max_iterations) {
  EngineConfig c;
  c.fixpoint = fixpoint;
  c.max_iterations = max_iterations;
  return c;
}

py::list path_list(const NodePath& p) {
  py::list out;
  for (std::size_t i : p) out.append(i);
  return out;
}

EvalCorpus make_corpus(const std::vector<std::string>& hyps, const std::vector<std::vector<std::string>>& refs) {
  EvalCorpus c;
  if (refs.size() != hyps.size()) throw Error("need one reference list per hypothesis");
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    EvalSegment s{tokenize(hyps[i]), {}};
    for (const auto& r : refs[i]) s.references.push_back(tokenize(r));
    c.segments.push_back(std::move(s));
  }
  return c;
}

ExtractionMode mode_of(const std::string& name) {
  auto m = parse_extraction_mode(name);
  if (!m) throw Error("unknown extraction mode '" + name + "'");
  return *m;
}

py::dict report_dict(const PhraseReport& r) {
  py::list buckets;
  for (const auto& b : r.buckets) {
    py::dict d;
    d["length"] = b.length;
    d["phrases"] = b.total;
    d["distinct"] = b.distinct;
    buckets.append(d);
  }
  py::dict out;
  out["min_len"] = r.min_len;
  out["max_len"] = r.max_len;
  out["sentences"] = r.sentences;
  out["buckets"] = buckets;
  return out;
}

PhraseReport report_from(const py::dict& d) {
  PhraseReport r;
  r.min_len = d["min_len"].cast<std::size_t>();
  r.max_len = d["max_len"].cast<std::size_t>();
  if (d.contains("sentences")) r.sentences = d["sentences"].cast<std::size_t>();
  for (auto b : d["buckets"]) {
    auto bd = b.cast<py::dict>();
    r.buckets.push_back({bd["length"].cast<std::size_t>(), bd["phrases"].cast<std::size_t>(),
                         bd["distinct"].cast<std::size_t>()});
  }
  return r;
}

py::dict cell_dict(const DeltaCell& c) {
  py::dict d;
  d["baseline"] = c.baseline;
  d["variant"] = c.variant;
  d["iobl"] = c.iobl;
  d["percent"] = c.percent ? py::cast(*c.percent) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Syntactic source reordering, MT metrics and phrase statistics";

  static py::exception<Error> error(m, "SynreorderError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<ParseNode>(m, "Tree")
      .def_readonly("label", &ParseNode::label)
      .def_readonly("token", &ParseNode::token)
      .def_readonly("children", &ParseNode::children)
      .def("is_leaf", &ParseNode::is_leaf)
      .def("tokens", [](const ParseNode& t) { return flatten(t); })
      .def("__str__", [](const ParseNode& t) { return render_ptb(t); })
      .def("__repr__", [](const ParseNode& t) { return "Tree(" + render_ptb(t) + ")"; })
      .def("__eq__", [](const ParseNode& a, const ParseNode& b) { return a == b; });

  m.def("parse_ptb", [](const std::string& line) { return parse_ptb(line); }, py::arg("line"));
  m.def("render_ptb", &render_ptb, py::arg("tree"));

  m.def(
      "builtin_rules",
      [] {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& r : builtin_rules()) out.emplace_back(r.id, render_rule(r));
        return out;
      },
      "(id, canonical rule) pairs in priority order");
  m.def(
      "validate_rules",
      [](const std::string& text) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& r : parse_ruleset(text)) out.emplace_back(r.id, render_rule(r));
        return out;
      },
      py::arg("text"));

  m.def(
      "reorder",
      [](const std::string& line, std::optional<std::string> rules, std::optional<std::vector<std::string>> only,
         bool fixpoint, std::size_t max_iterations) {
        return reorder_sentence(line, resolve_rules(rules, only), make_config(fixpoint, max_iterations));
      },
      py::arg("line"), py::arg("rules") = py::none(), py::arg("only") = py::none(), py::arg("fixpoint") = false,
      py::arg("max_iterations") = 10,
      "Reorders one bracketed parse; returns the space-joined tokens. `rules` is rule-file text (builtin if None).");

  m.def(
      "trace",
      [](const std::string& line, std::optional<std::string> rules, std::optional<std::vector<std::string>> only,
         bool fixpoint, std::size_t max_iterations) {
        auto rs = resolve_rules(rules, only);
        ParseNode tree = parse_ptb(line);
        ReorderResult r = apply_rules(tree, rs, make_config(fixpoint, max_iterations));
        py::list steps;
        for (const auto& s : r.trace.steps) {
          py::dict d;
          d["rule"] = s.rule_id;
          d["path"] = path_list(s.path);
          d["before"] = s.labels_before;
          d["after"] = s.labels_after;
          steps.append(d);
        }
        py::dict out;
        out["input"] = join_tokens(r.trace.input_tokens);
        out["output"] = join_tokens(r.trace.output_tokens);
        out["steps"] = steps;
        out["replay_ok"] = replay_trace(tree, r.trace, rs) == r.tree;
        return out;
      },
      py::arg("line"), py::arg("rules") = py::none(), py::arg("only") = py::none(), py::arg("fixpoint") = false,
      py::arg("max_iterations") = 10);

  m.def(
      "reorder_corpus",
      [](const std::vector<std::string>& lines, bool fixpoint, std::size_t workers) {
        std::stringstream in, out;
        for (const auto& l : lines) in << l << '\n';
        CorpusOptions options{make_config(fixpoint, 10), workers};
        CorpusSummary s = run_corpus(in, out, builtin_rules(), options);
        std::vector<std::string> result;
        for (std::string l; std::getline(out, l);) result.push_back(l);
        py::dict summary;
        summary["lines"] = s.lines;
        summary["parse_failures"] = s.parse_failures;
        summary["engine_failures"] = s.engine_failures;
        summary["firings"] = s.firings;
        summary["diagnostics"] = s.diagnostics;
        return py::make_tuple(result, summary);
      },
      py::arg("lines"), py::arg("fixpoint") = false, py::arg("workers") = 1);

  m.def("fixtures", [] {
    py::list out;
    for (const auto& f : fixtures()) {
      py::dict d;
      d["id"] = f.id;
      d["target"] = path_list(f.target);
      d["tree"] = f.tree;
      d["partial"] = join_tokens(f.partial);
      d["reordered"] = join_tokens(f.reordered);
      d["achieved"] = join_tokens(f.achieved);
      d["exact"] = f.exact();
      out.append(d);
    }
    return out;
  });

  m.def(
      "evaluate",
      [](const std::vector<std::string>& hyps, const std::vector<std::vector<std::string>>& refs, std::size_t max_n,
         std::size_t nist_max_n, bool smooth) {
        EvalOptions o;
        o.bleu.max_n = max_n;
        o.bleu.smooth = smooth;
        o.nist_max_n = nist_max_n;
        EvalReport r = evaluate(make_corpus(hyps, refs), o);
        py::dict d;
        d["bleu"] = r.bleu.score;
        d["bleu_precisions"] = r.bleu.precisions;
        d["brevity_penalty"] = r.bleu.brevity_penalty;
        d["nist"] = r.nist;
        d["mwer"] = r.mwer;
        d["mper"] = r.mper;
        return d;
      },
      py::arg("hypotheses"), py::arg("references"), py::arg("max_n") = 4, py::arg("nist_max_n") = 5,
      py::arg("smooth") = false, "references[i] lists the reference strings for hypotheses[i]");
  m.def("levenshtein", &levenshtein, py::arg("a"), py::arg("b"));

  m.def(
      "extract_phrase_pairs",
      [](const std::string& source, const std::string& target, const std::string& alignment, std::size_t max_len,
         const std::string& mode) {
        SentenceAlignment sa{split_tokens(source), split_tokens(target), parse_alignment_line(alignment)};
        sa.validate();
        std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>> out;
        for (const auto& [s, t] : extract_phrase_pairs(sa, max_len, mode_of(mode))) {
          out.push_back({{s.begin, s.end}, {t.begin, t.end}});
        }
        return out;
      },
      py::arg("source"), py::arg("target"), py::arg("alignment"), py::arg("max_len") = 7,
      py::arg("mode") = "extended", "Inclusive ((src_begin, src_end), (tgt_begin, tgt_end)) spans");

  m.def(
      "phrase_report",
      [](const std::vector<std::string>& sources, const std::vector<std::string>& targets,
         const std::vector<std::string>& alignments, std::size_t min_len, std::size_t max_len,
         const std::string& mode) {
        auto join = [](const std::vector<std::string>& v) {
          std::string s;
          for (const auto& l : v) s += l + "\n";
          return s;
        };
        std::istringstream s(join(sources)), t(join(targets)), a(join(alignments));
        return report_dict(phrase_report(s, t, a, min_len, max_len, mode_of(mode)));
      },
      py::arg("sources"), py::arg("targets"), py::arg("alignments"), py::arg("min_len") = 2, py::arg("max_len") = 7,
      py::arg("mode") = "extended");

  m.def(
      "compare_reports",
      [](const py::dict& baseline, const py::dict& variant) {
        py::list rows;
        for (const auto& r : compare_reports(report_from(baseline), report_from(variant)).rows) {
          py::dict d;
          d["length"] = r.length;
          d["phrases"] = cell_dict(r.total);
          d["distinct"] = cell_dict(r.distinct);
          rows.append(d);
        }
        return rows;
      },
      py::arg("baseline"), py::arg("variant"));
}
