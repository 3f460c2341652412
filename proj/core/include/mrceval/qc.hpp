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

#ifndef MRCEVAL_QC_HPP_
#define MRCEVAL_QC_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mrceval/corpus.hpp"
#include "mrceval/textnorm.hpp"

namespace mrceval {

enum class Split { kTrain = 0, kDev = 1, kTest = 2 };

std::string_view to_string(Split split);

/// Partition of sample ids into train/dev/test. Samples sharing an
/// article always share a split.
struct SplitAssignment {
  std::map<std::string, Split> by_sample;
  std::uint64_t seed = 0;
  std::array<double, 3> target_ratios{};
  std::array<double, 3> realized_ratios{};  // question-count fractions
  std::array<std::size_t, 3> question_counts{};
  std::size_t article_count = 0;
};

/// Uniform histogram over [0, 1]; masses sum to 1 over n observations.
struct Histogram {
  std::size_t bin_count = 0;
  std::vector<double> masses;
  double mean = 0.0;
  std::size_t n = 0;
};

enum class OverlapTarget { kContext, kAnswer };

std::string_view to_string(OverlapTarget target);
std::optional<OverlapTarget> overlap_target_from_string(std::string_view s);

/// Accepted paragraphs plus one reason per rejection. Filters never
/// raise; they report.
struct PoolFilterResult {
  struct Rejection {
    std::string article_id;
    std::string paragraph_id;
    std::string reason;
  };
  std::vector<PoolParagraph> accepted;
  std::vector<Rejection> rejected;
};

/// Per-label sample counts. Fractions are over labeled samples only.
struct QualityBreakdown {
  std::array<std::size_t, 4> counts{};  // indexed by QualityLabel
  std::size_t unlabeled = 0;
  std::size_t n_samples = 0;

  std::size_t labeled() const { return n_samples - unlabeled; }
};

/// Wikipedia pool rule: 500 to 1600 characters inclusive, at most three
/// accepted paragraphs per article (first three in input order win).
/// Characters are Unicode scalar values, whitespace included.
PoolFilterResult filter_wikipedia_pool(std::span<const PoolParagraph> paragraphs);

/// Tech-news pool rule: at least 550 characters, of which at least 300
/// in the Hebrew block.
PoolFilterResult filter_geektime_pool(std::span<const PoolParagraph> paragraphs);

/// Shuffles articles in seeded pseudo-random order and greedily assigns
/// each to the split whose realized question-count fraction sits
/// furthest below its target. Deterministic for a given (dataset,
/// ratios, seed), including across platforms. Ratios must be
/// non-negative and sum to 1; fewer than 3 articles raise
/// ValidationError.
SplitAssignment split_dataset(const Dataset& dataset,
                              std::array<double, 3> ratios, std::uint64_t seed);

/// Default 90/5/5 split.
inline SplitAssignment split_dataset(const Dataset& dataset, std::uint64_t seed) {
  return split_dataset(dataset, {0.90, 0.05, 0.05}, seed);
}

/// The articles of one split, in dataset order.
Dataset subset_for_split(const Dataset& dataset, const SplitAssignment& assignment,
                         Split split);

/// Per sample: the fraction of question tokens found in the target's
/// token set (the context, or the first gold reference for
/// target=answer, where only answerable samples count). Raises
/// ValidationError when no sample is eligible.
Histogram overlap_stats(const Dataset& dataset, OverlapTarget target,
                        const NormalizationProfile& profile,
                        std::size_t bins = 10);

/// Relative position answer_start / max(1, context_length - 1) of the
/// first gold reference of each answerable sample, binned uniformly.
Histogram position_histogram(const Dataset& dataset, std::size_t bins = 10);

QualityBreakdown quality_breakdown(const Dataset& dataset);

/// Deterministic serializations (sorted keys, fixed decimals).
std::string histogram_to_json(const Histogram& histogram, std::string_view kind);
std::string histogram_to_csv(const Histogram& histogram);
std::string split_summary_to_json(const SplitAssignment& assignment);
std::string quality_breakdown_to_json(const QualityBreakdown& breakdown);
std::string pool_filter_rejections_to_jsonl(const PoolFilterResult& result);

}  // namespace mrceval

#endif  // MRCEVAL_QC_HPP_
