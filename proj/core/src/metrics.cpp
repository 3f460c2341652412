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

#include "mrceval/metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <thread>
#include <unordered_set>
#include <vector>

#include "mrceval/error.hpp"
#include "mrceval/unicode.hpp"

namespace mrceval {

std::size_t levenshtein(std::u32string_view s1, std::u32string_view s2) {
  if (s1.size() > s2.size()) std::swap(s1, s2);  // s1 is the shorter
  const std::size_t n = s1.size();
  const std::size_t m = s2.size();
  if (n == 0) return m;

  // Two-row DP keyed on the shorter string, O(n) space.
  std::vector<std::size_t> prev(n + 1);
  std::vector<std::size_t> cur(n + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= m; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t cost_sub = prev[j - 1] + (s2[i - 1] == s1[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, cost_sub});
    }
    std::swap(prev, cur);
  }
  return prev[n];
}

std::size_t levenshtein(std::string_view s1, std::string_view s2) {
  return levenshtein(unicode::decode_utf8(s1), unicode::decode_utf8(s2));
}

double norm_lev_similarity(std::u32string_view s1, std::u32string_view s2) {
  const std::size_t longest = std::max(s1.size(), s2.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(s1, s2)) /
                   static_cast<double>(longest);
}

double norm_lev_similarity(std::string_view s1, std::string_view s2) {
  return norm_lev_similarity(unicode::decode_utf8(s1), unicode::decode_utf8(s2));
}

namespace {

double harmonic_f1(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

// Intersect counts gold tokens that have an equal predicted token;
// precision divides by the gold count, recall by the predicted count.
// With repeated tokens the raw recall ratio can exceed 1 (more matched
// gold occurrences than predicted tokens), so both proportions are
// clamped to keep the score within [0, 1].
double token_f1_paper(const std::vector<std::string>& gold,
                      const std::vector<std::string>& predicted) {
  std::unordered_set<std::string_view> predicted_set(predicted.begin(),
                                                     predicted.end());
  std::size_t intersect = 0;
  for (const std::string& g : gold) {
    if (predicted_set.contains(g)) ++intersect;
  }
  if (intersect == 0) return 0.0;
  const double precision =
      std::min(1.0, static_cast<double>(intersect) / static_cast<double>(gold.size()));
  const double recall =
      std::min(1.0, static_cast<double>(intersect) / static_cast<double>(predicted.size()));
  return harmonic_f1(precision, recall);
}

double token_f1_squad(const std::vector<std::string>& gold,
                      const std::vector<std::string>& predicted) {
  std::map<std::string_view, std::size_t> gold_counts;
  for (const std::string& g : gold) ++gold_counts[g];
  std::size_t common = 0;
  for (const std::string& p : predicted) {
    auto it = gold_counts.find(p);
    if (it != gold_counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  const double precision =
      static_cast<double>(common) / static_cast<double>(predicted.size());
  const double recall =
      static_cast<double>(common) / static_cast<double>(gold.size());
  return harmonic_f1(precision, recall);
}

}  // namespace

double token_f1(const TokenSpan& gold, const TokenSpan& predicted, F1Mode mode) {
  if (gold.tokens.empty() && predicted.tokens.empty()) return 1.0;
  if (gold.tokens.empty() || predicted.tokens.empty()) return 0.0;
  return mode == F1Mode::kPaper ? token_f1_paper(gold.tokens, predicted.tokens)
                                : token_f1_squad(gold.tokens, predicted.tokens);
}

int exact_match(std::string_view gold, std::string_view predicted,
                const NormalizationProfile& profile) {
  return normalize(gold, profile) == normalize(predicted, profile) ? 1 : 0;
}

double tlnls(const TokenSpan& gold, const TokenSpan& predicted) {
  if (gold.tokens.empty() && predicted.tokens.empty()) return 1.0;
  if (gold.tokens.empty() || predicted.tokens.empty()) return 0.0;

  std::vector<std::u32string> predicted_cps;
  predicted_cps.reserve(predicted.tokens.size());
  for (const std::string& p : predicted.tokens) {
    predicted_cps.push_back(unicode::decode_utf8(p));
  }

  double sum = 0.0;
  for (const std::string& g : gold.tokens) {
    const std::u32string gold_cps = unicode::decode_utf8(g);
    double best = 0.0;
    for (const std::u32string& p : predicted_cps) {
      best = std::max(best, norm_lev_similarity(gold_cps, p));
    }
    sum += best;
  }
  return sum / static_cast<double>(
                   std::max(gold.tokens.size(), predicted.tokens.size()));
}

PairScore score_pair(std::string_view gold, std::string_view predicted,
                     const NormalizationProfile& profile, F1Mode mode) {
  const TokenSpan gold_span = tokenize(gold, profile);
  const TokenSpan predicted_span = tokenize(predicted, profile);

  PairScore score;
  score.em = exact_match(gold, predicted, profile);
  score.f1 = token_f1(gold_span, predicted_span, mode);
  score.span_ls =
      norm_lev_similarity(normalize(gold, profile), normalize(predicted, profile));
  score.used_digit_fallback =
      digit_fraction(gold) > 0.5 || digit_fraction(predicted) > 0.5;
  score.tlnls = score.used_digit_fallback ? score.f1
                                          : tlnls(gold_span, predicted_span);
  return score;
}

SampleScore score_sample(const QASample& sample, std::string_view prediction,
                         const NormalizationProfile& profile, F1Mode mode) {
  SampleScore result;
  result.id = sample.id;
  result.reference_count = sample.answers.size();

  if (sample.is_impossible) {
    const double hit = normalize(prediction, profile).empty() ? 1.0 : 0.0;
    result.best = PairScore{hit, hit, hit, hit, false};
    return result;
  }

  PairScore best;
  bool first = true;
  for (const GoldAnswer& gold : sample.answers) {
    const PairScore pair = score_pair(gold.text, prediction, profile, mode);
    if (first) {
      best = pair;
      first = false;
      continue;
    }
    best.em = std::max(best.em, pair.em);
    best.f1 = std::max(best.f1, pair.f1);
    best.tlnls = std::max(best.tlnls, pair.tlnls);
    best.span_ls = std::max(best.span_ls, pair.span_ls);
    best.used_digit_fallback |= pair.used_digit_fallback;
  }
  result.best = best;
  return result;
}

MetricReport evaluate(const Dataset& dataset, const PredictionSet& predictions,
                      const NormalizationProfile& profile, F1Mode mode,
                      unsigned jobs) {
  const std::vector<SampleRef>& samples = dataset.samples();

  std::vector<std::string> missing;
  for (const SampleRef& ref : samples) {
    if (!predictions.by_id.contains(ref.qa->id)) missing.push_back(ref.qa->id);
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    std::string msg = "predictions missing " + std::to_string(missing.size()) +
                      " sample id(s):";
    for (const std::string& id : missing) {
      msg += ' ';
      msg += id;
    }
    throw CoverageError(msg);
  }

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, std::max<std::size_t>(samples.size(), 1));

  // Workers write into preassigned slots; the reduction below runs in a
  // fixed order, so results do not depend on the job count.
  std::vector<SampleScore> scores(samples.size());
  auto score_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const SampleRef& ref = samples[i];
      const std::string& predicted = predictions.by_id.at(ref.qa->id);
      scores[i] = score_sample(*ref.qa, predicted, profile, mode);
    }
  };
  if (jobs <= 1 || samples.size() < 2) {
    score_range(0, samples.size());
  } else {
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    const std::size_t chunk = (samples.size() + jobs - 1) / jobs;
    for (unsigned t = 0; t < jobs; ++t) {
      const std::size_t begin = std::min<std::size_t>(t * chunk, samples.size());
      const std::size_t end = std::min<std::size_t>(begin + chunk, samples.size());
      if (begin == end) break;
      workers.emplace_back(score_range, begin, end);
    }
    for (std::thread& w : workers) w.join();
  }

  MetricReport report;
  report.n_samples = samples.size();
  report.samples.reserve(samples.size());
  double em_sum = 0.0;
  double f1_sum = 0.0;
  double tlnls_sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].qa->is_impossible) ++report.n_unanswerable;
    const SampleScore& s = scores[i];
    em_sum += s.best.em;
    f1_sum += s.best.f1;
    tlnls_sum += s.best.tlnls;
    report.samples.push_back(
        SampleRecord{s.id, s.best.em, s.best.f1, s.best.tlnls});
  }
  const double n = static_cast<double>(samples.size());
  if (!samples.empty()) {
    report.em_aggregate = 100.0 * em_sum / n;
    report.f1_aggregate = 100.0 * f1_sum / n;
    report.tlnls_aggregate = 100.0 * tlnls_sum / n;
  }
  std::sort(report.samples.begin(), report.samples.end(),
            [](const SampleRecord& a, const SampleRecord& b) { return a.id < b.id; });
  return report;
}

}  // namespace mrceval
