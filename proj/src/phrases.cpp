#include "synreorder/phrases.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <sstream>

namespace synreorder {

const char* to_string(AlignmentError::Kind kind) {
  switch (kind) {
    case AlignmentError::Kind::MalformedPair: return "MalformedPair";
    case AlignmentError::Kind::NegativeIndex: return "NegativeIndex";
    case AlignmentError::Kind::IndexOutOfRange: return "IndexOutOfRange";
    case AlignmentError::Kind::LineCountMismatch: return "LineCountMismatch";
  }
  return "?";
}

AlignmentError::AlignmentError(Kind kind, std::size_t line, const std::string& what)
    : Error(std::string(to_string(kind)) + (line > 0 ? " at line " + std::to_string(line) : std::string()) + ": " +
            what),
      kind_(kind),
      line_(line) {}

namespace {

std::optional<long long> parse_int(std::string_view text) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

LinkSet parse_links(std::string_view text, std::size_t line) {
  LinkSet links;
  for (const auto& pair : split_tokens(text)) {
    // The first '-' after position 0 splits the pair, so "-1-2" reads as (-1, 2).
    std::size_t dash = pair.find('-', 1);
    if (dash == std::string::npos) {
      throw AlignmentError(AlignmentError::Kind::MalformedPair, line, "'" + pair + "' is not of the form i-j");
    }
    auto src = parse_int(std::string_view(pair).substr(0, dash));
    auto tgt = parse_int(std::string_view(pair).substr(dash + 1));
    if (!src || !tgt) {
      throw AlignmentError(AlignmentError::Kind::MalformedPair, line, "'" + pair + "' is not of the form i-j");
    }
    if (*src < 0 || *tgt < 0) {
      throw AlignmentError(AlignmentError::Kind::NegativeIndex, line, "'" + pair + "' has a negative index");
    }
    links.emplace(static_cast<std::size_t>(*src), static_cast<std::size_t>(*tgt));
  }
  return links;
}

void validate_at(const SentenceAlignment& sa, std::size_t line) {
  for (const auto& [s, t] : sa.links) {
    if (s >= sa.source.size() || t >= sa.target.size()) {
      throw AlignmentError(AlignmentError::Kind::IndexOutOfRange, line,
                           "link " + std::to_string(s) + "-" + std::to_string(t) + " outside a " +
                               std::to_string(sa.source.size()) + "x" + std::to_string(sa.target.size()) +
                               " sentence pair");
    }
  }
}

}  // namespace

LinkSet parse_alignment_line(std::string_view text) { return parse_links(text, 0); }

void SentenceAlignment::validate() const { validate_at(*this, 0); }

std::optional<ExtractionMode> parse_extraction_mode(std::string_view name) {
  if (name == "extended") return ExtractionMode::Extended;
  if (name == "strict") return ExtractionMode::Strict;
  return std::nullopt;
}

const char* to_string(ExtractionMode mode) {
  return mode == ExtractionMode::Strict ? "strict" : "extended";
}

bool is_consistent(const LinkSet& links, const Span& source, const Span& target) {
  bool inside = false;
  for (const auto& [s, t] : links) {
    bool in_s = s >= source.begin && s <= source.end;
    bool in_t = t >= target.begin && t <= target.end;
    if (in_s != in_t) return false;
    inside = inside || in_s;
  }
  return inside;
}

std::set<PhrasePair> extract_phrase_pairs(const SentenceAlignment& sa, std::size_t max_len, ExtractionMode mode) {
  sa.validate();
  const std::size_t ns = sa.source.size(), nt = sa.target.size();
  std::vector<bool> src_aligned(ns, false), tgt_aligned(nt, false);
  std::vector<std::vector<std::size_t>> src_to_tgt(ns);
  for (const auto& [s, t] : sa.links) {
    src_aligned[s] = tgt_aligned[t] = true;
    src_to_tgt[s].push_back(t);
  }

  std::set<PhrasePair> out;
  for (std::size_t i1 = 0; i1 < ns; ++i1) {
    for (std::size_t i2 = i1; i2 < ns && i2 - i1 + 1 <= max_len; ++i2) {
      if (mode == ExtractionMode::Strict && (!src_aligned[i1] || !src_aligned[i2])) continue;
      std::size_t j1 = nt, j2 = 0;
      for (std::size_t i = i1; i <= i2; ++i) {
        for (std::size_t t : src_to_tgt[i]) {
          j1 = std::min(j1, t);
          j2 = std::max(j2, t);
        }
      }
      if (j1 == nt) continue;  // no link inside the source span
      bool ok = std::all_of(sa.links.begin(), sa.links.end(), [&](const Link& l) {
        return l.second < j1 || l.second > j2 || (l.first >= i1 && l.first <= i2);
      });
      if (!ok) continue;
      if (mode == ExtractionMode::Strict) {
        out.emplace(Span{i1, i2}, Span{j1, j2});
        continue;
      }
      std::size_t lo = j1;
      while (lo > 0 && !tgt_aligned[lo - 1]) --lo;
      std::size_t hi = j2;
      while (hi + 1 < nt && !tgt_aligned[hi + 1]) ++hi;
      for (std::size_t a = lo; a <= j1; ++a) {
        for (std::size_t b = j2; b <= hi; ++b) out.emplace(Span{i1, i2}, Span{a, b});
      }
    }
  }
  return out;
}

PhraseCounter::PhraseCounter(std::size_t min_len, std::size_t max_len, ExtractionMode mode)
    : min_len_(min_len), max_len_(max_len), mode_(mode) {
  if (min_len_ < 1 || max_len_ < min_len_) {
    throw Error("phrase lengths must satisfy 1 <= min_len <= max_len (got " + std::to_string(min_len_) + ".." +
                std::to_string(max_len_) + ")");
  }
  totals_.assign(max_len_ - min_len_ + 1, 0);
  keys_.resize(totals_.size());
}

void PhraseCounter::add(const SentenceAlignment& sa) {
  ++sentences_;
  for (const auto& [src, tgt] : extract_phrase_pairs(sa, max_len_, mode_)) {
    std::size_t len = src.size();
    if (len < min_len_) continue;
    std::size_t b = len - min_len_;
    ++totals_[b];
    Tokens words(sa.source.begin() + static_cast<std::ptrdiff_t>(src.begin),
                 sa.source.begin() + static_cast<std::ptrdiff_t>(src.end + 1));
    keys_[b].insert(lowercase(join_tokens(words)));
  }
}

void PhraseCounter::merge(const PhraseCounter& other) {
  if (other.min_len_ != min_len_ || other.max_len_ != max_len_) throw Error("cannot merge counters with different lengths");
  sentences_ += other.sentences_;
  for (std::size_t b = 0; b < totals_.size(); ++b) {
    totals_[b] += other.totals_[b];
    keys_[b].insert(other.keys_[b].begin(), other.keys_[b].end());
  }
}

PhraseReport PhraseCounter::report() const {
  PhraseReport r;
  r.min_len = min_len_;
  r.max_len = max_len_;
  r.sentences = sentences_;
  for (std::size_t b = 0; b < totals_.size(); ++b) r.buckets.push_back({min_len_ + b, totals_[b], keys_[b].size()});
  return r;
}

PhraseReport phrase_report(std::istream& source, std::istream& target, std::istream& alignment,
                           std::size_t min_len, std::size_t max_len, ExtractionMode mode) {
  PhraseCounter counter(min_len, max_len, mode);
  std::size_t line = 0;
  auto chomp = [](std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
  };
  while (true) {
    std::string s, t, a;
    bool hs = static_cast<bool>(std::getline(source, s));
    bool ht = static_cast<bool>(std::getline(target, t));
    bool ha = static_cast<bool>(std::getline(alignment, a));
    if (!hs && !ht && !ha) break;
    ++line;
    if (!(hs && ht && ha)) {
      auto rest = [](bool has, std::istream& in) {
        std::size_t n = has ? 1 : 0;
        for (std::string tmp; std::getline(in, tmp);) ++n;
        return n;
      };
      std::size_t ns = line - 1 + rest(hs, source), nt = line - 1 + rest(ht, target), na = line - 1 + rest(ha, alignment);
      throw AlignmentError(AlignmentError::Kind::LineCountMismatch, line,
                           "source has " + std::to_string(ns) + " lines, target " + std::to_string(nt) +
                               ", alignment " + std::to_string(na));
    }
    chomp(s);
    chomp(t);
    chomp(a);
    SentenceAlignment sa{split_tokens(s), split_tokens(t), parse_links(a, line)};
    validate_at(sa, line);
    counter.add(sa);
  }
  return counter.report();
}

DeltaCell make_delta(std::size_t baseline, std::size_t variant) {
  DeltaCell c;
  c.baseline = baseline;
  c.variant = variant;
  c.iobl = static_cast<long long>(variant) - static_cast<long long>(baseline);
  if (baseline > 0) c.percent = 100.0 * static_cast<double>(c.iobl) / static_cast<double>(baseline);
  return c;
}

DeltaTable compare_reports(const PhraseReport& baseline, const PhraseReport& variant) {
  auto lengths = [](const PhraseReport& r) {
    std::vector<std::size_t> out;
    for (const auto& b : r.buckets) out.push_back(b.length);
    return out;
  };
  if (lengths(baseline) != lengths(variant)) {
    throw ReportError("BucketMismatch: baseline covers lengths " + std::to_string(baseline.min_len) + ".." +
                      std::to_string(baseline.max_len) + ", variant " + std::to_string(variant.min_len) + ".." +
                      std::to_string(variant.max_len));
  }
  DeltaTable table;
  for (std::size_t i = 0; i < baseline.buckets.size(); ++i) {
    const auto& b = baseline.buckets[i];
    const auto& v = variant.buckets[i];
    table.rows.push_back({b.length, make_delta(b.total, v.total), make_delta(b.distinct, v.distinct)});
  }
  return table;
}

std::string format_percent(const std::optional<double>& percent) {
  if (!percent) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *percent);
  return buf;
}

std::string format_report(const PhraseReport& report) {
  std::ostringstream out;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%-6s %12s %12s\n", "length", "phrases", "distinct");
  out << buf;
  for (const auto& b : report.buckets) {
    std::snprintf(buf, sizeof buf, "%-6zu %12zu %12zu\n", b.length, b.total, b.distinct);
    out << buf;
  }
  return out.str();
}

std::string format_delta_table(const DeltaTable& table) {
  std::ostringstream out;
  char buf[200];
  auto cell = [](const DeltaCell& c) {
    return std::to_string(c.variant) + "/ " + format_percent(c.percent) + "/ " + std::to_string(c.iobl);
  };
  std::snprintf(buf, sizeof buf, "%-6s %10s %-26s %10s %-26s\n", "length", "baseline", "variant/%IOBL/IOBL",
                "baseline", "distinct/%IOBL/IOBL");
  out << buf;
  for (const auto& r : table.rows) {
    std::snprintf(buf, sizeof buf, "%-6zu %10zu %-26s %10zu %-26s\n", r.length, r.total.baseline,
                  cell(r.total).c_str(), r.distinct.baseline, cell(r.distinct).c_str());
    out << buf;
  }
  return out.str();
}

}  // namespace synreorder
