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

#include "mrceval/metaeval.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

#include "json_out.hpp"
#include "mrceval/error.hpp"

namespace mrceval {

namespace {

using nlohmann::json;

PairScore symmetrized(std::string_view a, std::string_view b,
                      const NormalizationProfile& profile) {
  const PairScore ab = score_pair(a, b, profile);
  const PairScore ba = score_pair(b, a, profile);
  PairScore mean;
  mean.em = (ab.em + ba.em) / 2.0;
  mean.f1 = (ab.f1 + ba.f1) / 2.0;
  mean.tlnls = (ab.tlnls + ba.tlnls) / 2.0;
  mean.span_ls = (ab.span_ls + ba.span_ls) / 2.0;
  mean.used_digit_fallback = ab.used_digit_fallback || ba.used_digit_fallback;
  return mean;
}

double field(const PairScore& score, MetricKind kind) {
  switch (kind) {
    case MetricKind::kF1: return score.f1;
    case MetricKind::kSpanLs: return score.span_ls;
    case MetricKind::kTlnls: return score.tlnls;
  }
  return 0.0;
}

struct PositiveSums {
  double f1 = 0.0;
  double span_ls = 0.0;
  double tlnls = 0.0;
  std::size_t pairs = 0;
  std::size_t samples = 0;
};

PositiveSums positive_sums(const Dataset& dataset,
                           const NormalizationProfile& profile) {
  PositiveSums sums;
  for (const SampleRef& ref : dataset.samples()) {
    const std::vector<GoldAnswer>& answers = ref.qa->answers;
    if (answers.size() < 2) continue;
    ++sums.samples;
    for (std::size_t i = 0; i < answers.size(); ++i) {
      for (std::size_t j = i + 1; j < answers.size(); ++j) {
        const PairScore s =
            symmetrized(answers[i].text, answers[j].text, profile);
        sums.f1 += s.f1;
        sums.span_ls += s.span_ls;
        sums.tlnls += s.tlnls;
        ++sums.pairs;
      }
    }
  }
  if (sums.pairs == 0) {
    throw ValidationError("no sample has two or more gold spans");
  }
  return sums;
}

}  // namespace

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::kF1: return "f1";
    case MetricKind::kSpanLs: return "span_ls";
    case MetricKind::kTlnls: return "tlnls";
  }
  return "f1";
}

std::optional<MetricKind> metric_kind_from_string(std::string_view s) {
  if (s == "f1") return MetricKind::kF1;
  if (s == "span_ls" || s == "edit") return MetricKind::kSpanLs;
  if (s == "tlnls") return MetricKind::kTlnls;
  return std::nullopt;
}

double MetricMeans::get(MetricKind kind) const {
  switch (kind) {
    case MetricKind::kF1: return f1;
    case MetricKind::kSpanLs: return span_ls;
    case MetricKind::kTlnls: return tlnls;
  }
  return 0.0;
}

double pair_metric(std::string_view a, std::string_view b, MetricKind kind,
                   const NormalizationProfile& profile) {
  return field(score_pair(a, b, profile), kind);
}

double positive_eval(const Dataset& dataset, MetricKind kind,
                     const NormalizationProfile& profile) {
  const PositiveSums sums = positive_sums(dataset, profile);
  const double n = static_cast<double>(sums.pairs);
  switch (kind) {
    case MetricKind::kF1: return sums.f1 / n;
    case MetricKind::kSpanLs: return sums.span_ls / n;
    case MetricKind::kTlnls: return sums.tlnls / n;
  }
  return 0.0;
}

MetaEvalReport positive_eval_report(const Dataset& dataset,
                                    const NormalizationProfile& profile) {
  const PositiveSums sums = positive_sums(dataset, profile);
  const double n = static_cast<double>(sums.pairs);
  MetaEvalReport report;
  report.positive = MetricMeans{sums.f1 / n, sums.span_ls / n, sums.tlnls / n};
  report.positive_pairs = sums.pairs;
  report.positive_samples = sums.samples;
  return report;
}

namespace {

MetricMeans negative_means(std::span<const NegativePair> pairs,
                           const NormalizationProfile& profile) {
  if (pairs.empty()) {
    throw ValidationError("negative evaluation needs at least one pair");
  }
  MetricMeans sums;
  for (const NegativePair& pair : pairs) {
    if (!pair.verified) {
      throw ValidationError("unverified negative pair for sample " + pair.id);
    }
    if (pair.gold.empty()) {
      throw ValidationError("negative pair for sample " + pair.id +
                            " has no gold references");
    }
    double best_f1 = 0.0, best_span_ls = 0.0, best_tlnls = 0.0;
    for (const std::string& gold : pair.gold) {
      const PairScore s = score_pair(gold, pair.wrong, profile);
      best_f1 = std::max(best_f1, s.f1);
      best_span_ls = std::max(best_span_ls, s.span_ls);
      best_tlnls = std::max(best_tlnls, s.tlnls);
    }
    sums.f1 += best_f1;
    sums.span_ls += best_span_ls;
    sums.tlnls += best_tlnls;
  }
  const double n = static_cast<double>(pairs.size());
  return MetricMeans{sums.f1 / n, sums.span_ls / n, sums.tlnls / n};
}

}  // namespace

double negative_eval(std::span<const NegativePair> pairs, MetricKind kind,
                     const NormalizationProfile& profile) {
  return negative_means(pairs, profile).get(kind);
}

MetaEvalReport negative_eval_report(std::span<const NegativePair> pairs,
                                    const NormalizationProfile& profile) {
  MetaEvalReport report;
  report.negative = negative_means(pairs, profile);
  report.negative_pairs = pairs.size();
  return report;
}

std::vector<NegativePair> collect_negative_candidates(
    const Dataset& dataset, const PredictionSet& predictions, double threshold,
    const NormalizationProfile& profile) {
  std::vector<std::string> missing;
  for (const SampleRef& ref : dataset.samples()) {
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

  std::vector<NegativePair> out;
  for (const SampleRef& ref : dataset.samples()) {
    const QASample& qa = *ref.qa;
    if (qa.is_impossible) continue;
    const std::string& predicted = predictions.by_id.at(qa.id);
    if (normalize(predicted, profile).empty()) continue;
    double best_f1 = 0.0;
    for (const GoldAnswer& gold : qa.answers) {
      best_f1 = std::max(
          best_f1, token_f1(tokenize(gold.text, profile),
                            tokenize(predicted, profile), F1Mode::kPaper));
    }
    if (best_f1 < threshold) {
      NegativePair pair;
      pair.id = qa.id;
      for (const GoldAnswer& gold : qa.answers) pair.gold.push_back(gold.text);
      pair.wrong = predicted;
      pair.verified = false;
      out.push_back(std::move(pair));
    }
  }
  return out;
}

std::vector<GapEntry> score_gap_ranking(const Dataset& dataset,
                                        const NormalizationProfile& profile) {
  std::vector<GapEntry> entries;
  for (const SampleRef& ref : dataset.samples()) {
    const std::vector<GoldAnswer>& answers = ref.qa->answers;
    for (std::size_t i = 0; i < answers.size(); ++i) {
      for (std::size_t j = i + 1; j < answers.size(); ++j) {
        const PairScore s =
            symmetrized(answers[i].text, answers[j].text, profile);
        GapEntry entry;
        entry.id = ref.qa->id;
        entry.span_a = answers[i].text;
        entry.span_b = answers[j].text;
        entry.tlnls = s.tlnls;
        entry.f1 = s.f1;
        entry.gap = s.tlnls - s.f1;
        entries.push_back(std::move(entry));
      }
    }
  }
  // Stable sort keeps within-sample pair order as the final tie-break.
  std::stable_sort(entries.begin(), entries.end(),
                   [](const GapEntry& a, const GapEntry& b) {
                     if (a.gap != b.gap) return a.gap > b.gap;
                     return a.id < b.id;
                   });
  return entries;
}

std::vector<NegativePair> parse_negative_pairs(std::string_view json_text,
                                               std::string_view origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(origin) + ": " + e.what());
  }
  if (!doc.is_array()) {
    throw ParseError(std::string(origin) + ": top-level value is not an array");
  }
  std::vector<NegativePair> out;
  for (const json& node : doc) {
    if (!node.is_object()) {
      throw ParseError(std::string(origin) + ": pair entry is not an object");
    }
    NegativePair pair;
    auto get = [&](const char* key) -> const json& {
      auto it = node.find(key);
      if (it == node.end()) {
        throw ParseError(std::string(origin) + ": pair entry missing \"" +
                         key + "\"");
      }
      return *it;
    };
    const json& id = get("id");
    const json& gold = get("gold");
    const json& wrong = get("wrong");
    const json& verified = get("verified");
    if (!id.is_string() || !wrong.is_string() || !verified.is_boolean() ||
        !gold.is_array()) {
      throw ParseError(std::string(origin) + ": pair entry has wrong field types");
    }
    pair.id = id.get<std::string>();
    for (const json& g : gold) {
      if (!g.is_string()) {
        throw ParseError(std::string(origin) + ": gold entry of pair " +
                         pair.id + " is not a string");
      }
      pair.gold.push_back(g.get<std::string>());
    }
    if (pair.gold.empty()) {
      throw IntegrityError(std::string(origin) + ": pair " + pair.id +
                           " has no gold references");
    }
    pair.wrong = wrong.get<std::string>();
    if (pair.wrong.empty()) {
      throw IntegrityError(std::string(origin) + ": pair " + pair.id +
                           " has an empty wrong span");
    }
    pair.verified = verified.get<bool>();
    out.push_back(std::move(pair));
  }
  return out;
}

std::vector<NegativePair> load_negative_pairs(const std::string& path) {
  return parse_negative_pairs(read_file(path), path);
}

std::string negative_pairs_to_json(std::span<const NegativePair> pairs) {
  std::string out = "[";
  bool first = true;
  for (const NegativePair& pair : pairs) {
    if (!first) out.push_back(',');
    first = false;
    out += "{\"gold\":[";
    bool first_gold = true;
    for (const std::string& g : pair.gold) {
      if (!first_gold) out.push_back(',');
      first_gold = false;
      out += jsonout::quote(g);
    }
    out += "],\"id\":";
    out += jsonout::quote(pair.id);
    out += ",\"verified\":";
    out += pair.verified ? "true" : "false";
    out += ",\"wrong\":";
    out += jsonout::quote(pair.wrong);
    out.push_back('}');
  }
  out += "]\n";
  return out;
}

std::string meta_eval_report_to_json(const MetaEvalReport& report) {
  auto means = [](const MetricMeans& m) {
    std::string s = "{\"f1\":";
    s += jsonout::fixed(m.f1, 4);
    s += ",\"span_ls\":";
    s += jsonout::fixed(m.span_ls, 4);
    s += ",\"tlnls\":";
    s += jsonout::fixed(m.tlnls, 4);
    s.push_back('}');
    return s;
  };
  std::string out = "{\"counts\":{\"negative_pairs\":";
  out += std::to_string(report.negative_pairs);
  out += ",\"positive_pairs\":";
  out += std::to_string(report.positive_pairs);
  out += ",\"positive_samples\":";
  out += std::to_string(report.positive_samples);
  out += "},\"negative\":";
  out += report.negative ? means(*report.negative) : "null";
  out += ",\"positive\":";
  out += report.positive ? means(*report.positive) : "null";
  out += "}\n";
  return out;
}

std::string gap_ranking_to_json(std::span<const GapEntry> entries) {
  std::string out = "[";
  bool first = true;
  for (const GapEntry& e : entries) {
    if (!first) out.push_back(',');
    first = false;
    out += "{\"f1\":";
    out += jsonout::fixed(e.f1, 4);
    out += ",\"gap\":";
    out += jsonout::fixed(e.gap, 4);
    out += ",\"id\":";
    out += jsonout::quote(e.id);
    out += ",\"span_a\":";
    out += jsonout::quote(e.span_a);
    out += ",\"span_b\":";
    out += jsonout::quote(e.span_b);
    out += ",\"tlnls\":";
    out += jsonout::fixed(e.tlnls, 4);
    out.push_back('}');
  }
  out += "]\n";
  return out;
}

}  // namespace mrceval
