// Alignment-consistent phrase-pair extraction and phrase count reports.

#ifndef SYNREORDER_PHRASES_HPP
#define SYNREORDER_PHRASES_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "synreorder/error.hpp"
#include "synreorder/tree.hpp"

namespace synreorder {

class AlignmentError : public Error {
 public:
  enum class Kind { MalformedPair, NegativeIndex, IndexOutOfRange, LineCountMismatch };

  AlignmentError(Kind kind, std::size_t line, const std::string& what);
  Kind kind() const { return kind_; }
  // 1-based input line, 0 when not reading a file.
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

const char* to_string(AlignmentError::Kind kind);

using Link = std::pair<std::size_t, std::size_t>;  // (source index, target index)
using LinkSet = std::set<Link>;

/// "0-0 1-2 ..." -> links. Duplicates collapse.
LinkSet parse_alignment_line(std::string_view text);

struct SentenceAlignment {
  Tokens source;
  Tokens target;
  LinkSet links;

  /// Throws AlignmentError(IndexOutOfRange) if a link leaves either sentence.
  void validate() const;
};

/// Inclusive spans.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin + 1; }
  friend auto operator<=>(const Span&, const Span&) = default;
};

using PhrasePair = std::pair<Span, Span>;  // (source, target)

enum class ExtractionMode {
  // Every consistent block containing a link, i.e. tight phrases extended
  // over unaligned words at the edges on both sides.
  Extended,
  // Only blocks whose four edge words are all aligned.
  Strict,
};

std::optional<ExtractionMode> parse_extraction_mode(std::string_view name);
const char* to_string(ExtractionMode mode);

std::set<PhrasePair> extract_phrase_pairs(const SentenceAlignment& sa, std::size_t max_len = 7,
                                          ExtractionMode mode = ExtractionMode::Extended);

/// True if no link crosses the block boundary and at least one link is inside.
bool is_consistent(const LinkSet& links, const Span& source, const Span& target);

struct PhraseBucket {
  std::size_t length = 0;
  std::size_t total = 0;
  std::size_t distinct = 0;

  friend bool operator==(const PhraseBucket&, const PhraseBucket&) = default;
};

struct PhraseReport {
  std::size_t min_len = 2;
  std::size_t max_len = 7;
  std::size_t sentences = 0;
  std::vector<PhraseBucket> buckets;  // one per length, ascending
};

/// Accumulates extraction results; distinctness is by lowercased source text.
class PhraseCounter {
 public:
  PhraseCounter(std::size_t min_len = 2, std::size_t max_len = 7, ExtractionMode mode = ExtractionMode::Extended);

  void add(const SentenceAlignment& sa);
  void merge(const PhraseCounter& other);
  PhraseReport report() const;

 private:
  std::size_t min_len_;
  std::size_t max_len_;
  ExtractionMode mode_;
  std::size_t sentences_ = 0;
  std::vector<std::size_t> totals_;
  std::vector<std::unordered_set<std::string>> keys_;
};

/// Reads line-aligned source / target / alignment streams. Errors carry the
/// 1-based line number.
PhraseReport phrase_report(std::istream& source, std::istream& target, std::istream& alignment,
                           std::size_t min_len = 2, std::size_t max_len = 7,
                           ExtractionMode mode = ExtractionMode::Extended);

class ReportError : public Error {
 public:
  using Error::Error;
};

struct DeltaCell {
  std::size_t baseline = 0;
  std::size_t variant = 0;
  long long iobl = 0;
  std::optional<double> percent;  // nullopt when baseline == 0
};

struct DeltaRow {
  std::size_t length = 0;
  DeltaCell total;
  DeltaCell distinct;
};

struct DeltaTable {
  std::vector<DeltaRow> rows;
};

DeltaCell make_delta(std::size_t baseline, std::size_t variant);

/// Throws ReportError (BucketMismatch) unless both reports cover the same lengths.
DeltaTable compare_reports(const PhraseReport& baseline, const PhraseReport& variant);

std::string format_report(const PhraseReport& report);
std::string format_delta_table(const DeltaTable& table);
/// "7.98", or "n/a" when undefined.
std::string format_percent(const std::optional<double>& percent);

}  // namespace synreorder

#endif  // SYNREORDER_PHRASES_HPP
