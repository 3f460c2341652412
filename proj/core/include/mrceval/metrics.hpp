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

#ifndef MRCEVAL_METRICS_HPP_
#define MRCEVAL_METRICS_HPP_

#include <cstddef>
#include <string>
#include <string_view>

#include "mrceval/corpus.hpp"
#include "mrceval/report.hpp"
#include "mrceval/textnorm.hpp"

namespace mrceval {

/// Token-level F1 flavor.
///
/// kPaper counts a gold token as matched when any predicted token equals
/// it, divides precision by the gold count and recall by the predicted
/// count. kSquadCompat is the conventional bag-of-tokens F1 (multiset
/// intersection, precision over predicted, recall over gold). The two
/// agree on duplicate-free token spans.
enum class F1Mode { kPaper, kSquadCompat };

/// All metrics for one gold/predicted string pair. em implies f1 and
/// tlnls are 1. span_ls is the whole-span normalized edit similarity.
struct PairScore {
  double em = 0.0;       // {0, 1}
  double f1 = 0.0;       // [0, 1]
  double tlnls = 0.0;    // [0, 1]; token-F1 value when the digit fallback fired
  double span_ls = 0.0;  // [0, 1]
  bool used_digit_fallback = false;
};

/// Per-sample result: each metric is the maximum of that metric over all
/// gold references, taken independently.
struct SampleScore {
  std::string id;
  PairScore best;
  std::size_t reference_count = 0;
};

/// Minimal number of single-character removals, additions and
/// substitutions converting s1 into s2, over Unicode scalar values.
std::size_t levenshtein(std::u32string_view s1, std::u32string_view s2);
std::size_t levenshtein(std::string_view s1, std::string_view s2);

/// 1 - levenshtein(s1, s2) / max(|s1|, |s2|). Two empty strings score 1.
double norm_lev_similarity(std::u32string_view s1, std::u32string_view s2);
double norm_lev_similarity(std::string_view s1, std::string_view s2);

/// Token-level F1 between gold and predicted spans. Matching empty spans
/// score 1, an empty span against a non-empty one scores 0.
double token_f1(const TokenSpan& gold, const TokenSpan& predicted,
                F1Mode mode = F1Mode::kPaper);

/// 1 iff the two strings are equal after normalization.
int exact_match(std::string_view gold, std::string_view predicted,
                const NormalizationProfile& profile);

/// Token-level normalized Levenshtein similarity: the mean over gold
/// tokens of the best edit similarity against any predicted token,
/// normalized by the larger token count:
///
///   tlnls(G, P) = sum_{g in G} max_{p in P} ls(g, p) / max(|G|, |P|)
///
/// Matching empty spans score 1; an empty side against a non-empty one
/// scores 0. Not symmetric in general.
double tlnls(const TokenSpan& gold, const TokenSpan& predicted);

/// Scores one gold/predicted pair. When more than half of either span's
/// characters are digits, the tlnls field reverts to the token-F1 value
/// (near-miss numbers must not be rewarded) and the fallback flag is
/// set. The digit test runs on the unnormalized span strings; it ignores
/// whitespace, so trimming cannot change it.
PairScore score_pair(std::string_view gold, std::string_view predicted,
                     const NormalizationProfile& profile,
                     F1Mode mode = F1Mode::kPaper);

/// Scores a sample against its prediction. Unanswerable samples score 1
/// on every metric iff the normalized prediction is empty, else 0.
/// Answerable samples take the per-metric maximum over gold references;
/// the fallback flag is set when any reference pair fell back.
SampleScore score_sample(const QASample& sample, std::string_view prediction,
                         const NormalizationProfile& profile,
                         F1Mode mode = F1Mode::kPaper);

/// Scores every dataset sample and aggregates means x 100. Predictions
/// must cover every sample id (CoverageError lists any that are absent;
/// extra ids are ignored). `jobs` bounds worker threads, 0 means all
/// available cores; results do not depend on the job count.
MetricReport evaluate(const Dataset& dataset, const PredictionSet& predictions,
                      const NormalizationProfile& profile,
                      F1Mode mode = F1Mode::kPaper, unsigned jobs = 0);

}  // namespace mrceval

#endif  // MRCEVAL_METRICS_HPP_
