#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"
#include "synreorder/phrases.hpp"

using namespace synreorder;
using namespace testing_support;

namespace {

AlignmentError::Kind alignment_error(std::string_view text) {
  try {
    parse_alignment_line(text);
  } catch (const AlignmentError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for '" << text << "'";
  return AlignmentError::Kind::MalformedPair;
}

SentenceAlignment sentence(const std::string& src, const std::string& tgt, const std::string& links) {
  return SentenceAlignment{split_tokens(src), split_tokens(tgt), parse_alignment_line(links)};
}

PhraseReport report_with(std::size_t min_len, std::size_t max_len, std::vector<std::pair<std::size_t, std::size_t>> td) {
  PhraseReport r;
  r.min_len = min_len;
  r.max_len = max_len;
  for (std::size_t len = min_len; len <= max_len; ++len) {
    r.buckets.push_back({len, td[len - min_len].first, td[len - min_len].second});
  }
  return r;
}

}  // namespace

TEST(Alignment, Parse) {
  EXPECT_EQ(parse_alignment_line("0-0 1-2"), (LinkSet{{0, 0}, {1, 2}}));
  EXPECT_TRUE(parse_alignment_line("").empty());
  EXPECT_EQ(parse_alignment_line("  2-1\t2-1 0-3 "), (LinkSet{{0, 3}, {2, 1}}));
}

TEST(Alignment, Errors) {
  EXPECT_EQ(alignment_error("3-x"), AlignmentError::Kind::MalformedPair);
  EXPECT_EQ(alignment_error("3"), AlignmentError::Kind::MalformedPair);
  EXPECT_EQ(alignment_error("1-2-3"), AlignmentError::Kind::MalformedPair);
  EXPECT_EQ(alignment_error("-1-2"), AlignmentError::Kind::NegativeIndex);
  EXPECT_EQ(alignment_error("1--2"), AlignmentError::Kind::NegativeIndex);
  SentenceAlignment sa = sentence("a b", "x", "1-1");
  try {
    sa.validate();
    FAIL();
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.kind(), AlignmentError::Kind::IndexOutOfRange);
  }
}

TEST(Extraction, DiagonalPair) {
  auto pairs = extract_phrase_pairs(sentence("a b", "x y", "0-0 1-1"));
  std::set<PhrasePair> expected{{{0, 0}, {0, 0}}, {{1, 1}, {1, 1}}, {{0, 1}, {0, 1}}};
  EXPECT_EQ(pairs, expected);
}

TEST(Extraction, NoLinks) { EXPECT_TRUE(extract_phrase_pairs(sentence("a b", "x y", "")).empty()); }

TEST(Extraction, UnalignedTargetWord) {
  SentenceAlignment sa = sentence("a b", "x y z", "0-0 1-2");
  auto extended = extract_phrase_pairs(sa);
  EXPECT_TRUE(extended.count({{0, 1}, {0, 2}}));
  // y attaches to either neighbour in extended mode.
  EXPECT_TRUE(extended.count({{0, 0}, {0, 1}}));
  EXPECT_TRUE(extended.count({{1, 1}, {1, 2}}));
  EXPECT_EQ(extended.size(), 5u);
  auto strict = extract_phrase_pairs(sa, 7, ExtractionMode::Strict);
  std::set<PhrasePair> tight{{{0, 0}, {0, 0}}, {{1, 1}, {2, 2}}, {{0, 1}, {0, 2}}};
  EXPECT_EQ(strict, tight);
}

TEST(Extraction, SourceLengthCap) {
  SentenceAlignment sa = sentence("a b c", "x y z", "0-0 1-1 2-2");
  for (const auto& [s, t] : extract_phrase_pairs(sa, 2)) EXPECT_LE(s.size(), 2u);
  EXPECT_FALSE(extract_phrase_pairs(sa, 2).count({{0, 2}, {0, 2}}));
  EXPECT_TRUE(extract_phrase_pairs(sa, 3).count({{0, 2}, {0, 2}}));
}

TEST(Extraction, MatchesBruteForceOracle) {
  Rng rng(5);
  std::size_t nonempty = 0;
  for (int i = 0; i < 12000; ++i) {
    SentenceAlignment sa = random_alignment(rng, 8);
    std::size_t cap = 1 + pick(rng, 8);
    for (ExtractionMode mode : {ExtractionMode::Extended, ExtractionMode::Strict}) {
      auto got = extract_phrase_pairs(sa, cap, mode);
      ASSERT_EQ(got, oracle_phrases(sa, cap, mode)) << "instance " << i << " mode " << to_string(mode);
      for (const auto& [s, t] : got) ASSERT_TRUE(is_consistent(sa.links, s, t));
      nonempty += !got.empty();
    }
  }
  EXPECT_GT(nonempty, 10000u);
}

TEST(Extraction, StrictIsSubsetOfExtended) {
  Rng rng(6);
  for (int i = 0; i < 3000; ++i) {
    SentenceAlignment sa = random_alignment(rng, 8);
    auto ext = extract_phrase_pairs(sa, 8);
    for (const auto& p : extract_phrase_pairs(sa, 8, ExtractionMode::Strict)) ASSERT_TRUE(ext.count(p));
  }
}

TEST(Report, SingleSentence) {
  PhraseCounter c(1, 2);
  c.add(sentence("a b", "x y", "0-0 1-1"));
  PhraseReport r = c.report();
  ASSERT_EQ(r.buckets.size(), 2u);
  EXPECT_EQ(r.buckets[0], (PhraseBucket{1, 2, 2}));
  EXPECT_EQ(r.buckets[1], (PhraseBucket{2, 1, 1}));
  EXPECT_EQ(r.sentences, 1u);
}

TEST(Report, DuplicateSentenceDoublesTotals) {
  PhraseCounter c(1, 2);
  c.add(sentence("a b", "x y", "0-0 1-1"));
  c.add(sentence("A b", "x y", "0-0 1-1"));
  PhraseReport r = c.report();
  EXPECT_EQ(r.buckets[0], (PhraseBucket{1, 4, 2}));
  EXPECT_EQ(r.buckets[1], (PhraseBucket{2, 2, 1}));
}

TEST(Report, EmptyCorpus) {
  std::istringstream s, t, a;
  PhraseReport r = phrase_report(s, t, a);
  EXPECT_EQ(r.sentences, 0u);
  ASSERT_EQ(r.buckets.size(), 6u);
  for (const auto& b : r.buckets) {
    EXPECT_EQ(b.total, 0u);
    EXPECT_EQ(b.distinct, 0u);
  }
}

TEST(Report, MergeEqualsSequential) {
  Rng rng(8);
  PhraseCounter all(1, 7), left(1, 7), right(1, 7);
  for (int i = 0; i < 200; ++i) {
    SentenceAlignment sa = random_alignment(rng);
    all.add(sa);
    (i % 2 ? left : right).add(sa);
  }
  left.merge(right);
  PhraseReport a = all.report(), b = left.report();
  EXPECT_EQ(a.buckets, b.buckets);
  EXPECT_EQ(a.sentences, b.sentences);
}

TEST(Report, StreamErrorsCarryLineNumbers) {
  std::istringstream s("a b\nc d\n"), t("x y\nz w\n"), a("0-0\n0-x\n");
  try {
    phrase_report(s, t, a);
    FAIL();
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.kind(), AlignmentError::Kind::MalformedPair);
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream s2("a b\n"), t2("x y\n"), a2("0-0\n5-0\n");
  try {
    phrase_report(s2, t2, a2);
    FAIL();
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.kind(), AlignmentError::Kind::LineCountMismatch);
  }
  std::istringstream s3("a b\n"), t3("x y\n"), a3("0-9\n");
  try {
    phrase_report(s3, t3, a3);
    FAIL();
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.kind(), AlignmentError::Kind::IndexOutOfRange);
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(Compare, PublishedCells) {
  DeltaCell total2 = make_delta(537017, 579878);
  EXPECT_EQ(total2.iobl, 42861);
  ASSERT_TRUE(total2.percent);
  EXPECT_NEAR(*total2.percent, 7.98, 0.01);
  EXPECT_EQ(format_percent(total2.percent), "7.98");
  DeltaCell distinct4 = make_delta(268431, 409966);
  EXPECT_EQ(distinct4.iobl, 141535);
  EXPECT_NEAR(*distinct4.percent, 52.72, 0.01);
}

TEST(Compare, Tables) {
  PhraseReport base = report_with(2, 4, {{537017, 208988}, {504810, 292183}, {406069, 268431}});
  PhraseReport ours = report_with(2, 4, {{579878, 249847}, {616381, 408240}, {531904, 409966}});
  DeltaTable d = compare_reports(base, ours);
  ASSERT_EQ(d.rows.size(), 3u);
  EXPECT_EQ(d.rows[0].total.iobl, 42861);
  EXPECT_EQ(d.rows[2].distinct.iobl, 141535);
  EXPECT_EQ(format_percent(d.rows[2].distinct.percent), "52.73");  // 52.727 at two decimals
  std::string text = format_delta_table(d);
  EXPECT_NE(text.find("579878/ 7.98/ 42861"), std::string::npos) << text;

  DeltaTable same = compare_reports(ours, ours);
  for (const auto& row : same.rows) {
    EXPECT_EQ(row.total.iobl, 0);
    EXPECT_DOUBLE_EQ(*row.total.percent, 0.0);
    EXPECT_EQ(row.distinct.iobl, 0);
  }
}

TEST(Compare, NegativeAndUndefined) {
  DeltaCell down = make_delta(10, 4);
  EXPECT_EQ(down.iobl, -6);
  EXPECT_DOUBLE_EQ(*down.percent, -60.0);
  DeltaCell zero = make_delta(0, 5);
  EXPECT_FALSE(zero.percent);
  EXPECT_EQ(format_percent(zero.percent), "n/a");
}

TEST(Compare, BucketMismatch) {
  PhraseReport a = report_with(2, 3, {{1, 1}, {1, 1}});
  PhraseReport b = report_with(2, 4, {{1, 1}, {1, 1}, {1, 1}});
  EXPECT_THROW(compare_reports(a, b), ReportError);
}

TEST(Modes, Names) {
  EXPECT_EQ(parse_extraction_mode("strict"), ExtractionMode::Strict);
  EXPECT_EQ(parse_extraction_mode("extended"), ExtractionMode::Extended);
  EXPECT_FALSE(parse_extraction_mode("loose"));
}
