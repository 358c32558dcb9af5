// Corpus-level BLEU, NIST, multi-reference WER and PER.

#ifndef SYNREORDER_METRICS_HPP
#define SYNREORDER_METRICS_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "synreorder/error.hpp"
#include "synreorder/tree.hpp"

namespace synreorder {

class MetricError : public Error {
 public:
  enum class Kind { EmptyCorpus, MissingReference, EmptyToken, ZeroReferenceLength };

  MetricError(Kind kind, const std::string& what);
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(MetricError::Kind kind);

struct EvalSegment {
  Tokens hypothesis;
  std::vector<Tokens> references;
};

struct EvalCorpus {
  std::vector<EvalSegment> segments;

  /// Throws MetricError unless there is at least one segment, every segment
  /// has a reference, and no token is empty.
  void validate() const;
};

struct BleuOptions {
  std::size_t max_n = 4;
  // Add-one smoothing of the precisions for orders >= 2.
  bool smooth = false;
};

struct BleuResult {
  double score = 0.0;
  std::vector<double> precisions;  // modified precision per order
  double brevity_penalty = 1.0;
  std::size_t hypothesis_length = 0;
  std::size_t reference_length = 0;  // sum of closest reference lengths
};

BleuResult bleu(const EvalCorpus& corpus, const BleuOptions& options = {});

double nist(const EvalCorpus& corpus, std::size_t max_n = 5);

/// Word error rate against the closest reference, in percent. Per segment the
/// reference with the smallest edit distance is selected (ties -> earlier);
/// the rate is the summed distances over the summed selected lengths.
double mwer(const EvalCorpus& corpus);

/// Position-independent error rate, in percent. The numerator is the
/// min-over-references bag distance max(|h|,|r|) - |h ∩ r|; the denominator
/// is the same selected-reference length mwer uses, so mper <= mwer always.
double mper(const EvalCorpus& corpus);

std::size_t levenshtein(const Tokens& a, const Tokens& b);

/// max(|a|,|b|) minus the size of the multiset intersection.
std::size_t bag_distance(const Tokens& a, const Tokens& b);

struct ErrorCounts {
  std::size_t edit_errors = 0;
  std::size_t bag_errors = 0;
  std::size_t reference_words = 0;
};

/// Summed numerators and the shared denominator behind mwer / mper.
ErrorCounts error_counts(const EvalCorpus& corpus);

struct EvalReport {
  BleuResult bleu;
  double nist = 0.0;
  double mwer = 0.0;
  double mper = 0.0;
};

struct EvalOptions {
  BleuOptions bleu;
  std::size_t nist_max_n = 5;
};

EvalReport evaluate(const EvalCorpus& corpus, const EvalOptions& options = {});

/// Lowercases and splits on whitespace.
Tokens tokenize(std::string_view line);

}  // namespace synreorder

#endif  // SYNREORDER_METRICS_HPP
