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

#ifndef MRCEVAL_METAEVAL_HPP_
#define MRCEVAL_METAEVAL_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mrceval/corpus.hpp"
#include "mrceval/metrics.hpp"
#include "mrceval/textnorm.hpp"

namespace mrceval {

/// The three span-similarity metrics the meta-evaluation compares.
enum class MetricKind { kF1, kSpanLs, kTlnls };

std::string_view to_string(MetricKind kind);
std::optional<MetricKind> metric_kind_from_string(std::string_view s);

/// A model output confirmed to be a wrong answer for its sample.
/// Unverified entries are collector output awaiting manual review and
/// never enter the negative evaluation.
struct NegativePair {
  std::string id;
  std::vector<std::string> gold;  // at least one reference span
  std::string wrong;              // non-empty
  bool verified = false;

  bool operator==(const NegativePair&) const = default;
};

struct MetricMeans {
  double f1 = 0.0;
  double span_ls = 0.0;
  double tlnls = 0.0;

  double get(MetricKind kind) const;
};

/// Mean metric scores over the positive (alternative correct spans) and
/// negative (verified wrong spans) sets, with pair counts.
struct MetaEvalReport {
  std::optional<MetricMeans> positive;
  std::optional<MetricMeans> negative;
  std::size_t positive_pairs = 0;
  std::size_t positive_samples = 0;  // samples contributing pairs
  std::size_t negative_pairs = 0;
};

/// One multi-reference pair ranked by how far the token-level similarity
/// exceeds F1. Scores are orientation-averaged.
struct GapEntry {
  std::string id;
  std::string span_a;
  std::string span_b;
  double tlnls = 0.0;
  double f1 = 0.0;
  double gap = 0.0;  // tlnls - f1
};

/// Single-orientation metric between two raw spans (score_pair field).
double pair_metric(std::string_view a, std::string_view b, MetricKind kind,
                   const NormalizationProfile& profile);

/// Mean over all unordered reference pairs {a, b} of samples with two or
/// more gold spans, scoring each pair as (m(a,b) + m(b,a)) / 2. Raises
/// ValidationError when no sample has at least two spans.
double positive_eval(const Dataset& dataset, MetricKind kind,
                     const NormalizationProfile& profile);

/// positive_eval over all three metrics in one pass, filling the
/// positive half of the report.
MetaEvalReport positive_eval_report(const Dataset& dataset,
                                    const NormalizationProfile& profile);

/// Mean over pairs of the best (max over gold references) single
/// orientation metric(gold, wrong). Requires a non-empty, all-verified
/// list; ValidationError otherwise.
double negative_eval(std::span<const NegativePair> pairs, MetricKind kind,
                     const NormalizationProfile& profile);

MetaEvalReport negative_eval_report(std::span<const NegativePair> pairs,
                                    const NormalizationProfile& profile);

/// Answerable samples whose best-reference F1 falls below the threshold
/// and whose prediction is non-empty, exported unverified for manual
/// review. Predictions must cover the dataset. Output follows dataset
/// order.
std::vector<NegativePair> collect_negative_candidates(
    const Dataset& dataset, const PredictionSet& predictions, double threshold,
    const NormalizationProfile& profile);

/// All multi-reference pairs ordered by descending tlnls - f1 gap; ties
/// broken by sample id, then by pair position.
std::vector<GapEntry> score_gap_ranking(const Dataset& dataset,
                                        const NormalizationProfile& profile);

/// NegativePair file: JSON list of {id, gold: [str], wrong: str,
/// verified: bool}.
std::vector<NegativePair> load_negative_pairs(const std::string& path);
std::vector<NegativePair> parse_negative_pairs(std::string_view json_text,
                                               std::string_view origin);
std::string negative_pairs_to_json(std::span<const NegativePair> pairs);

std::string meta_eval_report_to_json(const MetaEvalReport& report);

std::string gap_ranking_to_json(std::span<const GapEntry> entries);

}  // namespace mrceval

#endif  // MRCEVAL_METAEVAL_HPP_
