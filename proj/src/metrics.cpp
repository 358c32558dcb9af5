#include "synreorder/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace synreorder {

const char* to_string(MetricError::Kind kind) {
  switch (kind) {
    case MetricError::Kind::EmptyCorpus: return "EmptyCorpus";
    case MetricError::Kind::MissingReference: return "MissingReference";
    case MetricError::Kind::EmptyToken: return "EmptyToken";
    case MetricError::Kind::ZeroReferenceLength: return "ZeroReferenceLength";
  }
  return "?";
}

MetricError::MetricError(Kind kind, const std::string& what)
    : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void EvalCorpus::validate() const {
  if (segments.empty()) throw MetricError(MetricError::Kind::EmptyCorpus, "corpus has no segments");
  auto has_empty = [](const Tokens& t) { return std::any_of(t.begin(), t.end(), [](const auto& s) { return s.empty(); }); };
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    if (seg.references.empty()) {
      throw MetricError(MetricError::Kind::MissingReference, "segment " + std::to_string(i + 1) + " has no reference");
    }
    bool bad = has_empty(seg.hypothesis) || std::any_of(seg.references.begin(), seg.references.end(), has_empty);
    if (bad) throw MetricError(MetricError::Kind::EmptyToken, "segment " + std::to_string(i + 1) + " has an empty token");
  }
}

namespace {

using Ngram = std::vector<std::string>;
using NgramCounts = std::map<Ngram, std::size_t>;

NgramCounts count_ngrams(const Tokens& tokens, std::size_t n) {
  NgramCounts counts;
  if (n == 0 || tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Ngram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                   tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

// Per n-gram, the largest count in any single reference.
NgramCounts max_reference_counts(const std::vector<Tokens>& refs, std::size_t n) {
  NgramCounts out;
  for (const auto& ref : refs) {
    for (const auto& [g, c] : count_ngrams(ref, n)) out[g] = std::max(out[g], c);
  }
  return out;
}

std::size_t ngram_total(std::size_t length, std::size_t n) { return length >= n ? length - n + 1 : 0; }

std::size_t closest_ref_length(std::size_t hyp_len, const std::vector<Tokens>& refs) {
  std::size_t best = refs.front().size();
  for (const auto& r : refs) {
    std::size_t d = r.size() > hyp_len ? r.size() - hyp_len : hyp_len - r.size();
    std::size_t bd = best > hyp_len ? best - hyp_len : hyp_len - best;
    if (d < bd || (d == bd && r.size() < best)) best = r.size();
  }
  return best;
}

}  // namespace

BleuResult bleu(const EvalCorpus& corpus, const BleuOptions& options) {
  corpus.validate();
  if (options.max_n == 0) throw Error("bleu: max_n must be >= 1");
  std::vector<std::size_t> matched(options.max_n, 0), total(options.max_n, 0);
  BleuResult result;
  for (const auto& seg : corpus.segments) {
    result.hypothesis_length += seg.hypothesis.size();
    result.reference_length += closest_ref_length(seg.hypothesis.size(), seg.references);
    for (std::size_t n = 1; n <= options.max_n; ++n) {
      NgramCounts limit = max_reference_counts(seg.references, n);
      for (const auto& [g, c] : count_ngrams(seg.hypothesis, n)) {
        auto it = limit.find(g);
        if (it != limit.end()) matched[n - 1] += std::min(c, it->second);
      }
      total[n - 1] += ngram_total(seg.hypothesis.size(), n);
    }
  }

  double log_sum = 0.0;
  bool zero = false;
  for (std::size_t n = 1; n <= options.max_n; ++n) {
    double num = static_cast<double>(matched[n - 1]);
    double den = static_cast<double>(total[n - 1]);
    if (options.smooth && n >= 2) {
      num += 1.0;
      den += 1.0;
    }
    double p = den > 0.0 ? num / den : 0.0;
    result.precisions.push_back(p);
    if (p <= 0.0) {
      zero = true;
    } else {
      log_sum += std::log(p);
    }
  }

  const double c = static_cast<double>(result.hypothesis_length);
  const double r = static_cast<double>(result.reference_length);
  if (c == 0.0) {
    // exp(1 - r/c) -> 0 as c -> 0; keep the diagnostic inside (0, 1].
    result.brevity_penalty = r > 0.0 ? std::numeric_limits<double>::min() : 1.0;
    result.score = 0.0;
    return result;
  }
  result.brevity_penalty = c > r ? 1.0 : std::exp(1.0 - r / c);
  result.score = zero ? 0.0 : result.brevity_penalty * std::exp(log_sum / static_cast<double>(options.max_n));
  return result;
}

double nist(const EvalCorpus& corpus, std::size_t max_n) {
  corpus.validate();
  if (max_n == 0) throw Error("nist: max_n must be >= 1");

  // Information weights from n-gram counts over every reference.
  std::vector<NgramCounts> ref_counts(max_n + 1);
  std::size_t ref_words = 0;
  for (const auto& seg : corpus.segments) {
    for (const auto& ref : seg.references) {
      ref_words += ref.size();
      for (std::size_t n = 1; n <= max_n; ++n) {
        for (const auto& [g, c] : count_ngrams(ref, n)) ref_counts[n][g] += c;
      }
    }
  }
  auto info = [&](const Ngram& g) {
    std::size_t n = g.size();
    double count = static_cast<double>(ref_counts[n].at(g));
    double context = n == 1 ? static_cast<double>(ref_words)
                            : static_cast<double>(ref_counts[n - 1].at(Ngram(g.begin(), g.end() - 1)));
    return std::log2(context / count);
  };

  std::vector<double> weighted(max_n + 1, 0.0);
  std::vector<std::size_t> hyp_total(max_n + 1, 0);
  double hyp_len = 0.0, ref_len = 0.0;
  for (const auto& seg : corpus.segments) {
    hyp_len += static_cast<double>(seg.hypothesis.size());
    double sum = 0.0;
    for (const auto& r : seg.references) sum += static_cast<double>(r.size());
    ref_len += sum / static_cast<double>(seg.references.size());
    for (std::size_t n = 1; n <= max_n; ++n) {
      NgramCounts limit = max_reference_counts(seg.references, n);
      for (const auto& [g, c] : count_ngrams(seg.hypothesis, n)) {
        auto it = limit.find(g);
        if (it != limit.end()) weighted[n] += static_cast<double>(std::min(c, it->second)) * info(g);
      }
      hyp_total[n] += ngram_total(seg.hypothesis.size(), n);
    }
  }
  if (hyp_len == 0.0) return 0.0;

  double score = 0.0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    if (hyp_total[n] > 0) score += weighted[n] / static_cast<double>(hyp_total[n]);
  }
  // exp(beta * ln^2(min(c/r, 1))) with the factor 0.5 at c/r = 2/3.
  static const double beta = std::log(0.5) / std::pow(std::log(2.0 / 3.0), 2);
  double ratio = ref_len > 0.0 ? std::min(hyp_len / ref_len, 1.0) : 1.0;
  return score * std::exp(beta * std::pow(std::log(ratio), 2));
}

std::size_t levenshtein(const Tokens& a, const Tokens& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::size_t bag_distance(const Tokens& a, const Tokens& b) {
  std::map<std::string_view, std::size_t> counts;
  for (const auto& t : a) ++counts[t];
  std::size_t common = 0;
  for (const auto& t : b) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  return std::max(a.size(), b.size()) - common;
}

ErrorCounts error_counts(const EvalCorpus& corpus) {
  corpus.validate();
  ErrorCounts out;
  for (const auto& seg : corpus.segments) {
    std::size_t best = 0;
    std::size_t best_edit = std::numeric_limits<std::size_t>::max();
    std::size_t best_bag = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 0; r < seg.references.size(); ++r) {
      std::size_t d = levenshtein(seg.hypothesis, seg.references[r]);
      if (d < best_edit) {
        best_edit = d;
        best = r;
      }
      best_bag = std::min(best_bag, bag_distance(seg.hypothesis, seg.references[r]));
    }
    out.edit_errors += best_edit;
    out.bag_errors += best_bag;
    out.reference_words += seg.references[best].size();
  }
  if (out.reference_words == 0) {
    throw MetricError(MetricError::Kind::ZeroReferenceLength, "selected references have no words");
  }
  return out;
}

double mwer(const EvalCorpus& corpus) {
  ErrorCounts c = error_counts(corpus);
  return 100.0 * static_cast<double>(c.edit_errors) / static_cast<double>(c.reference_words);
}

double mper(const EvalCorpus& corpus) {
  ErrorCounts c = error_counts(corpus);
  return 100.0 * static_cast<double>(c.bag_errors) / static_cast<double>(c.reference_words);
}

EvalReport evaluate(const EvalCorpus& corpus, const EvalOptions& options) {
  EvalReport report;
  report.bleu = bleu(corpus, options.bleu);
  report.nist = nist(corpus, options.nist_max_n);
  ErrorCounts c = error_counts(corpus);
  report.mwer = 100.0 * static_cast<double>(c.edit_errors) / static_cast<double>(c.reference_words);
  report.mper = 100.0 * static_cast<double>(c.bag_errors) / static_cast<double>(c.reference_words);
  return report;
}

Tokens tokenize(std::string_view line) { return split_tokens(lowercase(line)); }

}  // namespace synreorder
