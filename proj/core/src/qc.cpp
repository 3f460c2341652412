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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_set>

#include "json_out.hpp"
#include "mrceval/error.hpp"
#include "mrceval/unicode.hpp"

namespace mrceval {

namespace {

constexpr std::size_t kWikipediaMinChars = 500;
constexpr std::size_t kWikipediaMaxChars = 1600;
constexpr std::size_t kWikipediaArticleCap = 3;
constexpr std::size_t kGeektimeMinChars = 550;
constexpr std::size_t kGeektimeMinHebrewChars = 300;

// Unbiased bounded draw; mt19937_64 output is pinned by the standard,
// so assignments reproduce across platforms.
std::size_t bounded(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t threshold =
      (std::numeric_limits<std::uint64_t>::max() - n + 1) % n;  // 2^64 mod n
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return static_cast<std::size_t>(x % n);
  }
}

void shuffle_in_place(std::vector<std::string>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[bounded(rng, i)]);
  }
}

Histogram build_histogram(const std::vector<double>& values, std::size_t bins) {
  Histogram h;
  h.bin_count = bins;
  h.masses.assign(bins, 0.0);
  h.n = values.size();
  double sum = 0.0;
  for (double v : values) {
    sum += v;
    auto idx = static_cast<std::size_t>(v * static_cast<double>(bins));
    if (idx >= bins) idx = bins - 1;  // v == 1.0 lands in the last bin
    h.masses[idx] += 1.0;
  }
  for (double& m : h.masses) m /= static_cast<double>(values.size());
  h.mean = sum / static_cast<double>(values.size());
  return h;
}

}  // namespace

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "train";
}

std::string_view to_string(OverlapTarget target) {
  return target == OverlapTarget::kContext ? "context" : "answer";
}

std::optional<OverlapTarget> overlap_target_from_string(std::string_view s) {
  if (s == "context") return OverlapTarget::kContext;
  if (s == "answer") return OverlapTarget::kAnswer;
  return std::nullopt;
}

PoolFilterResult filter_wikipedia_pool(std::span<const PoolParagraph> paragraphs) {
  PoolFilterResult result;
  std::map<std::string, std::size_t> accepted_per_article;
  for (const PoolParagraph& p : paragraphs) {
    const std::size_t chars = unicode::scalar_count(p.text);
    if (chars < kWikipediaMinChars) {
      result.rejected.push_back({p.article_id, p.paragraph_id, "too_short"});
    } else if (chars > kWikipediaMaxChars) {
      result.rejected.push_back({p.article_id, p.paragraph_id, "too_long"});
    } else if (accepted_per_article[p.article_id] >= kWikipediaArticleCap) {
      result.rejected.push_back({p.article_id, p.paragraph_id, "article_cap"});
    } else {
      ++accepted_per_article[p.article_id];
      result.accepted.push_back(p);
    }
  }
  return result;
}

PoolFilterResult filter_geektime_pool(std::span<const PoolParagraph> paragraphs) {
  PoolFilterResult result;
  for (const PoolParagraph& p : paragraphs) {
    if (unicode::scalar_count(p.text) < kGeektimeMinChars) {
      result.rejected.push_back({p.article_id, p.paragraph_id, "too_short"});
    } else if (hebrew_char_count(p.text) < kGeektimeMinHebrewChars) {
      result.rejected.push_back(
          {p.article_id, p.paragraph_id, "insufficient_hebrew"});
    } else {
      result.accepted.push_back(p);
    }
  }
  return result;
}

SplitAssignment split_dataset(const Dataset& dataset,
                              std::array<double, 3> ratios, std::uint64_t seed) {
  double ratio_sum = 0.0;
  for (double r : ratios) {
    if (r < 0.0) throw ValidationError("split ratios must be non-negative");
    ratio_sum += r;
  }
  if (std::abs(ratio_sum - 1.0) > 1e-9) {
    throw ValidationError("split ratios must sum to 1");
  }
  if (dataset.sample_count() == 0) {
    throw ValidationError("cannot split an empty dataset");
  }

  std::map<std::string, std::size_t> questions_per_article;
  for (const SampleRef& ref : dataset.samples()) {
    ++questions_per_article[*ref.article_title];
  }
  if (questions_per_article.size() < 3) {
    throw ValidationError("need at least 3 articles to honor article grouping");
  }

  // Articles start lexicographically sorted so the shuffle depends only
  // on the article set and the seed, not on input file order.
  std::vector<std::string> articles;
  articles.reserve(questions_per_article.size());
  for (const auto& [title, count] : questions_per_article) {
    articles.push_back(title);
  }
  std::mt19937_64 rng(seed);
  shuffle_in_place(articles, rng);

  const double total = static_cast<double>(dataset.sample_count());
  std::array<std::size_t, 3> counts{};
  std::map<std::string, Split> article_split;
  for (const std::string& title : articles) {
    std::size_t best = 0;
    double best_deficit = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < 3; ++s) {
      const double deficit =
          ratios[s] - static_cast<double>(counts[s]) / total;
      if (deficit > best_deficit) {
        best_deficit = deficit;
        best = s;
      }
    }
    article_split.emplace(title, static_cast<Split>(best));
    counts[best] += questions_per_article[title];
  }

  SplitAssignment assignment;
  assignment.seed = seed;
  assignment.target_ratios = ratios;
  assignment.question_counts = counts;
  assignment.article_count = articles.size();
  for (std::size_t s = 0; s < 3; ++s) {
    assignment.realized_ratios[s] = static_cast<double>(counts[s]) / total;
  }
  for (const SampleRef& ref : dataset.samples()) {
    assignment.by_sample.emplace(ref.qa->id, article_split.at(*ref.article_title));
  }
  return assignment;
}

Dataset subset_for_split(const Dataset& dataset, const SplitAssignment& assignment,
                         Split split) {
  std::vector<Article> articles;
  for (const Article& article : dataset.articles()) {
    bool in_split = false;
    for (const ParagraphEntry& paragraph : article.paragraphs) {
      for (const QASample& qa : paragraph.qas) {
        auto it = assignment.by_sample.find(qa.id);
        if (it != assignment.by_sample.end() && it->second == split) {
          in_split = true;
        }
      }
    }
    if (in_split) articles.push_back(article);
  }
  return Dataset::from_articles(std::move(articles));
}

Histogram overlap_stats(const Dataset& dataset, OverlapTarget target,
                        const NormalizationProfile& profile, std::size_t bins) {
  if (bins == 0) throw ValidationError("histogram needs at least one bin");
  std::vector<double> values;
  for (const SampleRef& ref : dataset.samples()) {
    const QASample& qa = *ref.qa;
    if (target == OverlapTarget::kAnswer && qa.is_impossible) continue;
    const std::vector<std::string> question_tokens =
        tokenize(qa.question, profile).tokens;
    if (question_tokens.empty()) continue;
    const std::string& target_text = target == OverlapTarget::kContext
                                         ? *ref.context
                                         : qa.answers.front().text;
    const std::vector<std::string> target_tokens =
        tokenize(target_text, profile).tokens;
    const std::unordered_set<std::string_view> target_set(target_tokens.begin(),
                                                          target_tokens.end());
    std::size_t hits = 0;
    for (const std::string& token : question_tokens) {
      if (target_set.contains(token)) ++hits;
    }
    values.push_back(static_cast<double>(hits) /
                     static_cast<double>(question_tokens.size()));
  }
  if (values.empty()) {
    throw ValidationError("no eligible samples for overlap analysis");
  }
  return build_histogram(values, bins);
}

Histogram position_histogram(const Dataset& dataset, std::size_t bins) {
  if (bins == 0) throw ValidationError("histogram needs at least one bin");
  std::vector<double> values;
  for (const SampleRef& ref : dataset.samples()) {
    const QASample& qa = *ref.qa;
    if (qa.is_impossible) continue;
    const double denom = static_cast<double>(
        std::max<std::size_t>(1, unicode::scalar_count(*ref.context) - 1));
    const double rel =
        static_cast<double>(qa.answers.front().answer_start) / denom;
    values.push_back(std::min(rel, 1.0));
  }
  if (values.empty()) {
    throw ValidationError("no answerable samples for position analysis");
  }
  return build_histogram(values, bins);
}

QualityBreakdown quality_breakdown(const Dataset& dataset) {
  QualityBreakdown breakdown;
  breakdown.n_samples = dataset.sample_count();
  for (const SampleRef& ref : dataset.samples()) {
    if (ref.qa->quality_label) {
      ++breakdown.counts[static_cast<std::size_t>(*ref.qa->quality_label)];
    } else {
      ++breakdown.unlabeled;
    }
  }
  return breakdown;
}

std::string histogram_to_json(const Histogram& histogram, std::string_view kind) {
  std::string out = "{\"bin_edges\":[";
  for (std::size_t i = 0; i <= histogram.bin_count; ++i) {
    if (i > 0) out.push_back(',');
    out += jsonout::fixed(static_cast<double>(i) /
                              static_cast<double>(histogram.bin_count),
                          6);
  }
  out += "],\"bins\":";
  out += std::to_string(histogram.bin_count);
  out += ",\"kind\":";
  out += jsonout::quote(kind);
  out += ",\"masses\":[";
  for (std::size_t i = 0; i < histogram.masses.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += jsonout::fixed(histogram.masses[i], 6);
  }
  out += "],\"mean\":";
  out += jsonout::fixed(histogram.mean, 6);
  out += ",\"n\":";
  out += std::to_string(histogram.n);
  out += "}\n";
  return out;
}

std::string histogram_to_csv(const Histogram& histogram) {
  std::string out = "bin_start,bin_end,mass\n";
  for (std::size_t i = 0; i < histogram.bin_count; ++i) {
    out += jsonout::fixed(static_cast<double>(i) /
                              static_cast<double>(histogram.bin_count),
                          6);
    out.push_back(',');
    out += jsonout::fixed(static_cast<double>(i + 1) /
                              static_cast<double>(histogram.bin_count),
                          6);
    out.push_back(',');
    out += jsonout::fixed(histogram.masses[i], 6);
    out.push_back('\n');
  }
  return out;
}

std::string split_summary_to_json(const SplitAssignment& assignment) {
  std::string out = "{\"article_count\":";
  out += std::to_string(assignment.article_count);
  out += ",\"assignments\":{";
  bool first = true;
  for (const auto& [id, split] : assignment.by_sample) {
    if (!first) out.push_back(',');
    first = false;
    out += jsonout::quote(id);
    out.push_back(':');
    out += jsonout::quote(to_string(split));
  }
  const auto idx = [](Split s) { return static_cast<std::size_t>(s); };
  // dev < test < train in key order.
  out += "},\"question_counts\":{\"dev\":" +
         std::to_string(assignment.question_counts[idx(Split::kDev)]) +
         ",\"test\":" + std::to_string(assignment.question_counts[idx(Split::kTest)]) +
         ",\"train\":" + std::to_string(assignment.question_counts[idx(Split::kTrain)]);
  out += "},\"realized_ratios\":{\"dev\":" +
         jsonout::fixed(assignment.realized_ratios[idx(Split::kDev)], 6) +
         ",\"test\":" + jsonout::fixed(assignment.realized_ratios[idx(Split::kTest)], 6) +
         ",\"train\":" + jsonout::fixed(assignment.realized_ratios[idx(Split::kTrain)], 6);
  out += "},\"seed\":";
  out += std::to_string(assignment.seed);
  out += ",\"target_ratios\":{\"dev\":" +
         jsonout::fixed(assignment.target_ratios[idx(Split::kDev)], 6) +
         ",\"test\":" + jsonout::fixed(assignment.target_ratios[idx(Split::kTest)], 6) +
         ",\"train\":" + jsonout::fixed(assignment.target_ratios[idx(Split::kTrain)], 6);
  out += "}}\n";
  return out;
}

std::string quality_breakdown_to_json(const QualityBreakdown& breakdown) {
  const auto count_of = [&](QualityLabel label) {
    return breakdown.counts[static_cast<std::size_t>(label)];
  };
  const std::size_t labeled = breakdown.labeled();
  const auto fraction_of = [&](QualityLabel label) {
    if (labeled == 0) return std::string("0.000000");
    return jsonout::fixed(static_cast<double>(count_of(label)) /
                              static_cast<double>(labeled),
                          6);
  };
  std::string out = "{\"counts\":{";
  out += "\"gold\":" + std::to_string(count_of(QualityLabel::kGold));
  out += ",\"good\":" + std::to_string(count_of(QualityLabel::kGood));
  out += ",\"rejected\":" + std::to_string(count_of(QualityLabel::kRejected));
  out += ",\"unlabeled\":" + std::to_string(breakdown.unlabeled);
  out += ",\"verified\":" + std::to_string(count_of(QualityLabel::kVerified));
  out += "},\"fractions\":{";
  out += "\"gold\":" + fraction_of(QualityLabel::kGold);
  out += ",\"good\":" + fraction_of(QualityLabel::kGood);
  out += ",\"rejected\":" + fraction_of(QualityLabel::kRejected);
  out += ",\"verified\":" + fraction_of(QualityLabel::kVerified);
  out += "},\"n_labeled\":";
  out += std::to_string(labeled);
  out += ",\"n_samples\":";
  out += std::to_string(breakdown.n_samples);
  out += "}\n";
  return out;
}

std::string pool_filter_rejections_to_jsonl(const PoolFilterResult& result) {
  std::string out;
  for (const PoolFilterResult::Rejection& r : result.rejected) {
    out += "{\"article_id\":";
    out += jsonout::quote(r.article_id);
    out += ",\"paragraph_id\":";
    out += jsonout::quote(r.paragraph_id);
    out += ",\"reason\":";
    out += jsonout::quote(r.reason);
    out += "}\n";
  }
  return out;
}

}  // namespace mrceval
