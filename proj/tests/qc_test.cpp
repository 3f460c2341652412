// Copyright 2026 The mrceval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mrceval/qc.hpp"

#include <gtest/gtest.h>

#include <numeric>

#include "mrceval/error.hpp"
#include "mrceval/unicode.hpp"
#include "testutil.hpp"

namespace mrceval {
namespace {

const NormalizationProfile kHebrew = NormalizationProfile::hebrew_default();

std::string hebrew_chars(std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += "א";
  return out;
}

std::string latin_chars(std::size_t n) { return std::string(n, 'x'); }

PoolParagraph pool_entry(std::string article, std::string para, std::string text) {
  return PoolParagraph{std::move(article), std::move(para), std::move(text)};
}

TEST(WikipediaFilterTest, LengthBoundaries) {
  const std::vector<PoolParagraph> pool = {
      pool_entry("a", "p499", hebrew_chars(499)),
      pool_entry("b", "p500", hebrew_chars(500)),
      pool_entry("c", "p1600", hebrew_chars(1600)),
      pool_entry("d", "p1601", hebrew_chars(1601)),
  };
  const PoolFilterResult result = filter_wikipedia_pool(pool);
  ASSERT_EQ(result.accepted.size(), 2u);
  EXPECT_EQ(result.accepted[0].paragraph_id, "p500");
  EXPECT_EQ(result.accepted[1].paragraph_id, "p1600");
  ASSERT_EQ(result.rejected.size(), 2u);
  EXPECT_EQ(result.rejected[0].reason, "too_short");
  EXPECT_EQ(result.rejected[1].reason, "too_long");
}

TEST(WikipediaFilterTest, LengthCountsCharactersNotBytes) {
  // 500 Hebrew letters are 1000 UTF-8 bytes; they must pass
  EXPECT_EQ(filter_wikipedia_pool(
                std::vector<PoolParagraph>{pool_entry("a", "p", hebrew_chars(500))})
                .accepted.size(),
            1u);
}

TEST(WikipediaFilterTest, ArticleCapKeepsFirstThree) {
  std::vector<PoolParagraph> pool;
  for (int i = 0; i < 5; ++i) {
    pool.push_back(pool_entry("art", "p" + std::to_string(i), hebrew_chars(600)));
  }
  pool.push_back(pool_entry("other", "q0", hebrew_chars(600)));
  const PoolFilterResult result = filter_wikipedia_pool(pool);
  ASSERT_EQ(result.accepted.size(), 4u);
  EXPECT_EQ(result.accepted[0].paragraph_id, "p0");
  EXPECT_EQ(result.accepted[2].paragraph_id, "p2");
  EXPECT_EQ(result.accepted[3].paragraph_id, "q0");
  ASSERT_EQ(result.rejected.size(), 2u);
  EXPECT_EQ(result.rejected[0].reason, "article_cap");
  EXPECT_EQ(result.rejected[0].paragraph_id, "p3");
}

TEST(WikipediaFilterTest, RejectedParagraphDoesNotConsumeCap) {
  std::vector<PoolParagraph> pool;
  pool.push_back(pool_entry("art", "short", hebrew_chars(10)));
  for (int i = 0; i < 3; ++i) {
    pool.push_back(pool_entry("art", "p" + std::to_string(i), hebrew_chars(600)));
  }
  const PoolFilterResult result = filter_wikipedia_pool(pool);
  EXPECT_EQ(result.accepted.size(), 3u);
}

TEST(GeektimeFilterTest, Boundaries) {
  const std::vector<PoolParagraph> pool = {
      pool_entry("a", "p549", hebrew_chars(549)),
      pool_entry("b", "p550", hebrew_chars(550)),
      pool_entry("c", "mixed", hebrew_chars(299) + latin_chars(301)),
      pool_entry("d", "hebrew300", hebrew_chars(300) + latin_chars(250)),
  };
  const PoolFilterResult result = filter_geektime_pool(pool);
  ASSERT_EQ(result.accepted.size(), 2u);
  EXPECT_EQ(result.accepted[0].paragraph_id, "p550");
  EXPECT_EQ(result.accepted[1].paragraph_id, "hebrew300");
  ASSERT_EQ(result.rejected.size(), 2u);
  EXPECT_EQ(result.rejected[0].reason, "too_short");
  EXPECT_EQ(result.rejected[1].reason, "insufficient_hebrew");
}

TEST(PoolFilterTest, FiltersAreIdempotent) {
  std::vector<PoolParagraph> pool;
  auto rng = testutil::make_rng(41);
  for (int i = 0; i < 50; ++i) {
    const std::size_t hebrew = testutil::pick_index(rng, 800);
    const std::size_t latin = testutil::pick_index(rng, 1200);
    pool.push_back(pool_entry("a" + std::to_string(i % 7), "p" + std::to_string(i),
                              hebrew_chars(hebrew) + latin_chars(latin)));
  }
  for (auto* filter : {&filter_wikipedia_pool, &filter_geektime_pool}) {
    const PoolFilterResult once = (*filter)(pool);
    const PoolFilterResult twice = (*filter)(once.accepted);
    EXPECT_EQ(twice.accepted, once.accepted);
    EXPECT_TRUE(twice.rejected.empty());
  }
}

Dataset grouped_dataset(std::size_t articles, std::size_t questions_each) {
  std::vector<Article> list;
  for (std::size_t a = 0; a < articles; ++a) {
    std::vector<std::vector<std::string>> refs;
    for (std::size_t q = 0; q < questions_each; ++q) refs.push_back({"תשובה"});
    list.push_back(testutil::article_with_references(
        "article" + std::to_string(a), "a" + std::to_string(a) + "q", refs));
  }
  return Dataset::from_articles(std::move(list));
}

TEST(SplitTest, ArticleGroupingHolds) {
  const Dataset ds = grouped_dataset(30, 5);
  const SplitAssignment assignment = split_dataset(ds, {0.6, 0.2, 0.2}, 7);
  for (std::size_t a = 0; a < 30; ++a) {
    const std::string prefix = "a" + std::to_string(a) + "q";
    const Split split = assignment.by_sample.at(prefix + "0");
    for (std::size_t q = 1; q < 5; ++q) {
      EXPECT_EQ(assignment.by_sample.at(prefix + std::to_string(q)), split);
    }
  }
}

TEST(SplitTest, PartitionCoversEveryIdOnce) {
  const Dataset ds = grouped_dataset(20, 3);
  const SplitAssignment assignment = split_dataset(ds, {0.9, 0.05, 0.05}, 3);
  EXPECT_EQ(assignment.by_sample.size(), ds.sample_count());
  std::size_t total = 0;
  for (std::size_t count : assignment.question_counts) total += count;
  EXPECT_EQ(total, ds.sample_count());
}

TEST(SplitTest, SameSeedReproducesIdenticalAssignment) {
  const Dataset ds = grouped_dataset(40, 2);
  const SplitAssignment a = split_dataset(ds, {0.9, 0.05, 0.05}, 17);
  const SplitAssignment b = split_dataset(ds, {0.9, 0.05, 0.05}, 17);
  EXPECT_EQ(a.by_sample, b.by_sample);
  const SplitAssignment c = split_dataset(ds, {0.9, 0.05, 0.05}, 18);
  EXPECT_NE(a.by_sample, c.by_sample);  // overwhelmingly likely to differ
}

TEST(SplitTest, RealizedRatiosApproachTargets) {
  const Dataset ds = grouped_dataset(1000, 1);
  const SplitAssignment assignment = split_dataset(ds, {0.9, 0.05, 0.05}, 11);
  EXPECT_NEAR(assignment.realized_ratios[0], 0.90, 0.02);
  EXPECT_NEAR(assignment.realized_ratios[1], 0.05, 0.02);
  EXPECT_NEAR(assignment.realized_ratios[2], 0.05, 0.02);
}

TEST(SplitTest, InputOrderDoesNotChangeAssignment) {
  std::vector<Article> forward;
  for (std::size_t a = 0; a < 12; ++a) {
    forward.push_back(testutil::article_with_references(
        "t" + std::to_string(a), "t" + std::to_string(a) + "q", {{"אב"}, {"גד"}}));
  }
  std::vector<Article> reversed(forward.rbegin(), forward.rend());
  const SplitAssignment a =
      split_dataset(Dataset::from_articles(std::move(forward)), {0.5, 0.25, 0.25}, 5);
  const SplitAssignment b =
      split_dataset(Dataset::from_articles(std::move(reversed)), {0.5, 0.25, 0.25}, 5);
  EXPECT_EQ(a.by_sample, b.by_sample);
}

TEST(SplitTest, ErrorCases) {
  const Dataset two_articles = grouped_dataset(2, 2);
  EXPECT_THROW(split_dataset(two_articles, {0.9, 0.05, 0.05}, 1), ValidationError);
  const Dataset ok = grouped_dataset(5, 1);
  EXPECT_THROW(split_dataset(ok, {0.9, 0.05, 0.1}, 1), ValidationError);
  EXPECT_THROW(split_dataset(ok, {1.2, -0.1, -0.1}, 1), ValidationError);
}

TEST(SplitTest, SubsetsPreserveEverySample) {
  const Dataset ds = grouped_dataset(15, 4);
  const SplitAssignment assignment = split_dataset(ds, {0.6, 0.2, 0.2}, 9);
  std::size_t count = 0;
  for (Split split : {Split::kTrain, Split::kDev, Split::kTest}) {
    const Dataset subset = subset_for_split(ds, assignment, split);
    for (const SampleRef& ref : subset.samples()) {
      EXPECT_EQ(assignment.by_sample.at(ref.qa->id), split);
    }
    count += subset.sample_count();
  }
  EXPECT_EQ(count, ds.sample_count());
}

Dataset overlap_dataset() {
  // context: "אחד שתיים שלוש ארבע", question tokens vary per sample
  std::vector<Article> articles;
  Article article;
  article.title = "t";
  ParagraphEntry paragraph;
  paragraph.context = "אחד שתיים שלוש ארבע";
  QASample full;
  full.id = "full";
  full.question = "שלוש אחד";  // both tokens in context
  full.answers = {GoldAnswer{"אחד", 0}};
  QASample partial;
  partial.id = "partial";
  partial.question = "אחד היכן נמצא";  // 1 of 3 in context and answer
  partial.answers = {GoldAnswer{"אחד", 0}};
  QASample disjoint;
  disjoint.id = "disjoint";
  disjoint.question = "מדוע כך";  // nothing matches
  disjoint.answers = {GoldAnswer{"שתיים", 4}};
  paragraph.qas = {full, partial, disjoint};
  article.paragraphs.push_back(paragraph);
  articles.push_back(article);
  return Dataset::from_articles(std::move(articles));
}

TEST(OverlapTest, ContainmentRatios) {
  const Dataset ds = overlap_dataset();
  const Histogram h = overlap_stats(ds, OverlapTarget::kContext, kHebrew);
  EXPECT_EQ(h.n, 3u);
  // values: 1.0, 1/3, 0.0 -> mean 4/9
  EXPECT_NEAR(h.mean, 4.0 / 9.0, 1e-12);
}

TEST(OverlapTest, AnswerTargetUsesFirstReference) {
  const Dataset ds = overlap_dataset();
  const Histogram h = overlap_stats(ds, OverlapTarget::kAnswer, kHebrew);
  EXPECT_EQ(h.n, 3u);
  // full: "שלוש אחד" vs answer "אחד" -> 1/2
  // partial: 1/3; disjoint: 0
  EXPECT_NEAR(h.mean, (0.5 + 1.0 / 3.0) / 3.0, 1e-12);
}

TEST(OverlapTest, MassesSumToOne) {
  const Dataset ds = overlap_dataset();
  for (OverlapTarget target : {OverlapTarget::kContext, OverlapTarget::kAnswer}) {
    const Histogram h = overlap_stats(ds, target, kHebrew);
    const double sum = std::accumulate(h.masses.begin(), h.masses.end(), 0.0);
    EXPECT_NEAR(sum, 1.0, 1e-9);
    for (double m : h.masses) EXPECT_GE(m, 0.0);
  }
}

TEST(OverlapTest, InvariantUnderWhitespaceEdits) {
  Dataset base = overlap_dataset();
  std::vector<Article> edited = base.articles();
  edited[0].paragraphs[0].qas[1].question = "  אחד   היכן \t נמצא ";
  const Dataset ds2 = Dataset::from_articles(std::move(edited));
  const Histogram a = overlap_stats(base, OverlapTarget::kContext, kHebrew);
  const Histogram b = overlap_stats(ds2, OverlapTarget::kContext, kHebrew);
  EXPECT_DOUBLE_EQ(a.mean, b.mean);
  EXPECT_EQ(a.masses, b.masses);
}

TEST(OverlapTest, UnanswerableExcludedFromAnswerTarget) {
  std::vector<Article> articles = overlap_dataset().articles();
  QASample impossible;
  impossible.id = "imp";
  impossible.question = "שאלה בלתי אפשרית";
  impossible.is_impossible = true;
  articles[0].paragraphs[0].qas.push_back(impossible);
  const Dataset ds = Dataset::from_articles(std::move(articles));
  EXPECT_EQ(overlap_stats(ds, OverlapTarget::kAnswer, kHebrew).n, 3u);
  EXPECT_EQ(overlap_stats(ds, OverlapTarget::kContext, kHebrew).n, 4u);
}

TEST(OverlapTest, NoEligibleSamplesIsError) {
  std::vector<Article> articles;
  Article article;
  article.title = "t";
  ParagraphEntry paragraph;
  paragraph.context = "טקסט";
  QASample impossible;
  impossible.id = "imp";
  impossible.question = "שאלה";
  impossible.is_impossible = true;
  paragraph.qas = {impossible};
  article.paragraphs.push_back(paragraph);
  articles.push_back(article);
  const Dataset ds = Dataset::from_articles(std::move(articles));
  EXPECT_THROW(overlap_stats(ds, OverlapTarget::kAnswer, kHebrew), ValidationError);
}

TEST(PositionTest, FirstAndLastBins) {
  std::vector<Article> articles;
  Article article;
  article.title = "t";
  ParagraphEntry paragraph;
  paragraph.context = "אבגדהוזחטי";  // 10 characters
  QASample at_start;
  at_start.id = "start";
  at_start.question = "?";
  at_start.answers = {GoldAnswer{"א", 0}};
  QASample at_end;
  at_end.id = "end";
  at_end.question = "?";
  at_end.answers = {GoldAnswer{"י", 9}};  // final character
  paragraph.qas = {at_start, at_end};
  article.paragraphs.push_back(paragraph);
  articles.push_back(article);
  const Dataset ds = Dataset::from_articles(std::move(articles));

  const Histogram h = position_histogram(ds, 10);
  EXPECT_EQ(h.n, 2u);
  EXPECT_DOUBLE_EQ(h.masses.front(), 0.5);  // offset 0 -> bin 0
  EXPECT_DOUBLE_EQ(h.masses.back(), 0.5);   // final char -> bin 9
}

TEST(PositionTest, NoAnswerableSamplesIsError) {
  std::vector<Article> articles;
  Article article;
  article.title = "t";
  ParagraphEntry paragraph;
  paragraph.context = "טקסט";
  QASample impossible;
  impossible.id = "imp";
  impossible.question = "?";
  impossible.is_impossible = true;
  paragraph.qas = {impossible};
  article.paragraphs.push_back(paragraph);
  articles.push_back(article);
  const Dataset ds = Dataset::from_articles(std::move(articles));
  EXPECT_THROW(position_histogram(ds, 10), ValidationError);
}

TEST(QualityTest, CountsPerLabel) {
  std::vector<Article> articles;
  Article article;
  article.title = "t";
  ParagraphEntry paragraph;
  paragraph.context = "אבגד";
  for (int i = 0; i < 4; ++i) {
    QASample qa;
    qa.id = "q" + std::to_string(i);
    qa.question = "?";
    qa.answers = {GoldAnswer{"א", 0}};
    paragraph.qas.push_back(qa);
  }
  paragraph.qas[0].quality_label = QualityLabel::kGold;
  paragraph.qas[1].quality_label = QualityLabel::kGold;
  paragraph.qas[2].quality_label = QualityLabel::kVerified;
  article.paragraphs.push_back(paragraph);
  articles.push_back(article);
  const Dataset ds = Dataset::from_articles(std::move(articles));

  const QualityBreakdown breakdown = quality_breakdown(ds);
  EXPECT_EQ(breakdown.counts[static_cast<std::size_t>(QualityLabel::kGold)], 2u);
  EXPECT_EQ(breakdown.counts[static_cast<std::size_t>(QualityLabel::kVerified)], 1u);
  EXPECT_EQ(breakdown.counts[static_cast<std::size_t>(QualityLabel::kGood)], 0u);
  EXPECT_EQ(breakdown.unlabeled, 1u);
  EXPECT_EQ(breakdown.labeled(), 3u);
}

TEST(QualityTest, AllUnlabeled) {
  const Dataset ds = testutil::dataset_with_references({{"אב"}, {"גד"}});
  const QualityBreakdown breakdown = quality_breakdown(ds);
  EXPECT_EQ(breakdown.unlabeled, 2u);
  for (std::size_t count : breakdown.counts) EXPECT_EQ(count, 0u);
  // serialization of the all-unlabeled case must not divide by zero
  const std::string json = quality_breakdown_to_json(breakdown);
  EXPECT_NE(json.find("\"n_labeled\":0"), std::string::npos);
}

TEST(QualityTest, FractionsSumToOneOverLabeled) {
  std::vector<Article> articles;
  Article article;
  article.title = "t";
  ParagraphEntry paragraph;
  paragraph.context = "אב";
  for (int i = 0; i < 3; ++i) {
    QASample qa;
    qa.id = "q" + std::to_string(i);
    qa.question = "?";
    qa.answers = {GoldAnswer{"א", 0}};
    qa.quality_label = static_cast<QualityLabel>(i);
    paragraph.qas.push_back(qa);
  }
  article.paragraphs.push_back(paragraph);
  articles.push_back(article);
  const QualityBreakdown breakdown =
      quality_breakdown(Dataset::from_articles(std::move(articles)));
  double total = 0.0;
  for (std::size_t count : breakdown.counts) {
    total += static_cast<double>(count) / static_cast<double>(breakdown.labeled());
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(HistogramSerializationTest, JsonAndCsvDeterministic) {
  const Dataset ds = overlap_dataset();
  const Histogram h = overlap_stats(ds, OverlapTarget::kContext, kHebrew);
  EXPECT_EQ(histogram_to_json(h, "context"), histogram_to_json(h, "context"));
  const std::string csv = histogram_to_csv(h);
  EXPECT_EQ(csv, histogram_to_csv(h));
  EXPECT_NE(csv.find("bin_start,bin_end,mass"), std::string::npos);
}

TEST(SplitSerializationTest, SummaryJsonDeterministic) {
  const Dataset ds = grouped_dataset(10, 2);
  const SplitAssignment assignment = split_dataset(ds, {0.8, 0.1, 0.1}, 3);
  const std::string json = split_summary_to_json(assignment);
  EXPECT_EQ(json, split_summary_to_json(assignment));
  EXPECT_NE(json.find("\"seed\":3"), std::string::npos);
}

}  // namespace
}  // namespace mrceval
