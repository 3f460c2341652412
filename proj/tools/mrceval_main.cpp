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

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mrceval/corpus.hpp"
#include "mrceval/error.hpp"
#include "mrceval/metaeval.hpp"
#include "mrceval/metrics.hpp"
#include "mrceval/qc.hpp"
#include "mrceval/report.hpp"
#include "mrceval/textnorm.hpp"

namespace {

using namespace mrceval;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

void require_readable(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path + " for reading");
  }
}

NormalizationProfile profile_by_flag(const std::string& name) {
  auto profile = NormalizationProfile::by_name(name);
  if (!profile) {
    throw ValidationError("unknown normalization profile \"" + name + "\"");
  }
  return *profile;
}

F1Mode f1_mode_by_flag(const std::string& name) {
  if (name == "paper") return F1Mode::kPaper;
  if (name == "squad-compat") return F1Mode::kSquadCompat;
  throw ValidationError("unknown f1 mode \"" + name + "\"");
}

void print_warnings(const PredictionSet& predictions) {
  for (const std::string& w : predictions.warnings) {
    std::cerr << "warning: " << w << "\n";
  }
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

struct CommonOptions {
  std::string norm_profile = "hebrew-default";
  std::string f1_mode = "paper";
};

void run_evaluate(const std::string& dataset_path,
                  const std::string& predictions_path,
                  const std::string& out_path, const CommonOptions& common,
                  unsigned jobs) {
  require_readable(dataset_path);
  require_readable(predictions_path);
  const NormalizationProfile profile = profile_by_flag(common.norm_profile);
  const F1Mode mode = f1_mode_by_flag(common.f1_mode);

  const Dataset dataset = load_dataset(dataset_path);
  const PredictionSet predictions = load_predictions(predictions_path);
  print_warnings(predictions);

  const MetricReport report = evaluate(dataset, predictions, profile, mode, jobs);
  write_metric_report(report, out_path);

  std::cout << "samples: " << report.n_samples
            << " (unanswerable: " << report.n_unanswerable << ")\n"
            << "EM:    " << fixed2(report.em_aggregate) << "\n"
            << "F1:    " << fixed2(report.f1_aggregate) << "\n"
            << "TLNLS: " << fixed2(report.tlnls_aggregate) << "\n"
            << "report written to " << out_path << "\n";
}

void print_means(const char* set_name, const MetricMeans& means) {
  std::cout << set_name << " f1: " << fixed4(means.f1)
            << "  span_ls: " << fixed4(means.span_ls)
            << "  tlnls: " << fixed4(means.tlnls) << "\n";
}

void run_meta_positive(const std::string& dataset_path, const std::string& out_path,
                       const CommonOptions& common) {
  require_readable(dataset_path);
  const NormalizationProfile profile = profile_by_flag(common.norm_profile);
  const Dataset dataset = load_dataset(dataset_path);
  const MetaEvalReport report = positive_eval_report(dataset, profile);
  std::cout << "multi-reference samples: " << report.positive_samples
            << ", pairs: " << report.positive_pairs << "\n";
  print_means("positive", *report.positive);
  if (!out_path.empty()) {
    write_file(out_path, meta_eval_report_to_json(report));
    std::cout << "report written to " << out_path << "\n";
  }
}

void run_meta_negative(const std::string& pairs_path, const std::string& out_path,
                       const CommonOptions& common) {
  require_readable(pairs_path);
  const NormalizationProfile profile = profile_by_flag(common.norm_profile);
  std::vector<NegativePair> pairs = load_negative_pairs(pairs_path);
  std::vector<NegativePair> verified;
  for (NegativePair& pair : pairs) {
    if (pair.verified) verified.push_back(std::move(pair));
  }
  if (verified.size() != pairs.size()) {
    std::cerr << "warning: skipping " << pairs.size() - verified.size()
              << " unverified pair(s)\n";
  }
  const MetaEvalReport report = negative_eval_report(verified, profile);
  std::cout << "verified pairs: " << report.negative_pairs << "\n";
  print_means("negative", *report.negative);
  if (!out_path.empty()) {
    write_file(out_path, meta_eval_report_to_json(report));
    std::cout << "report written to " << out_path << "\n";
  }
}

void run_meta_collect(const std::string& dataset_path,
                      const std::string& predictions_path,
                      const std::string& out_path, double threshold,
                      const CommonOptions& common) {
  require_readable(dataset_path);
  require_readable(predictions_path);
  const NormalizationProfile profile = profile_by_flag(common.norm_profile);
  const Dataset dataset = load_dataset(dataset_path);
  const PredictionSet predictions = load_predictions(predictions_path);
  print_warnings(predictions);
  const std::vector<NegativePair> candidates =
      collect_negative_candidates(dataset, predictions, threshold, profile);
  write_file(out_path, negative_pairs_to_json(candidates));
  std::cout << "collected " << candidates.size()
            << " candidate(s) below threshold " << threshold << "\n"
            << "candidates written to " << out_path
            << " (set \"verified\": true after manual review)\n";
}

void run_meta_gaps(const std::string& dataset_path, const std::string& out_path,
                   std::size_t top, const CommonOptions& common) {
  require_readable(dataset_path);
  const NormalizationProfile profile = profile_by_flag(common.norm_profile);
  const Dataset dataset = load_dataset(dataset_path);
  std::vector<GapEntry> entries = score_gap_ranking(dataset, profile);
  if (top > 0 && entries.size() > top) entries.resize(top);
  for (const GapEntry& e : entries) {
    std::cout << e.id << "  gap=" << fixed4(e.gap) << "  tlnls=" << fixed4(e.tlnls)
              << "  f1=" << fixed4(e.f1) << "  \"" << e.span_a << "\" vs \""
              << e.span_b << "\"\n";
  }
  if (!out_path.empty()) {
    write_file(out_path, gap_ranking_to_json(entries));
    std::cout << "ranking written to " << out_path << "\n";
  }
}

void print_histogram(const Histogram& histogram) {
  std::cout << "n: " << histogram.n << "  mean: " << fixed4(histogram.mean) << "\n";
  for (std::size_t i = 0; i < histogram.bin_count; ++i) {
    const double lo = static_cast<double>(i) / static_cast<double>(histogram.bin_count);
    const double hi =
        static_cast<double>(i + 1) / static_cast<double>(histogram.bin_count);
    std::cout << "[" << fixed2(lo) << ", " << fixed2(hi) << ")  "
              << fixed4(histogram.masses[i]) << "\n";
  }
}

void write_histogram_outputs(const Histogram& histogram, std::string_view kind,
                             const std::string& out_path,
                             const std::string& csv_path) {
  if (!out_path.empty()) {
    write_file(out_path, histogram_to_json(histogram, kind));
    std::cout << "histogram written to " << out_path << "\n";
  }
  if (!csv_path.empty()) {
    write_file(csv_path, histogram_to_csv(histogram));
    std::cout << "csv written to " << csv_path << "\n";
  }
}

void run_qc_overlap(const std::string& dataset_path, const std::string& target_name,
                    const std::string& out_path, const std::string& csv_path,
                    const CommonOptions& common) {
  require_readable(dataset_path);
  const NormalizationProfile profile = profile_by_flag(common.norm_profile);
  const auto target = overlap_target_from_string(target_name);
  if (!target) {
    throw ValidationError("unknown overlap target \"" + target_name + "\"");
  }
  const Dataset dataset = load_dataset(dataset_path);
  const Histogram histogram = overlap_stats(dataset, *target, profile);
  std::cout << "question/" << target_name << " overlap\n";
  print_histogram(histogram);
  write_histogram_outputs(histogram, target_name, out_path, csv_path);
}

void run_qc_positions(const std::string& dataset_path, std::size_t bins,
                      const std::string& out_path, const std::string& csv_path) {
  require_readable(dataset_path);
  const Dataset dataset = load_dataset(dataset_path);
  const Histogram histogram = position_histogram(dataset, bins);
  std::cout << "answer position distribution\n";
  print_histogram(histogram);
  write_histogram_outputs(histogram, "position", out_path, csv_path);
}

void run_qc_quality(const std::string& dataset_path, const std::string& out_path) {
  require_readable(dataset_path);
  const Dataset dataset = load_dataset(dataset_path);
  const QualityBreakdown breakdown = quality_breakdown(dataset);
  const auto count_of = [&](QualityLabel label) {
    return breakdown.counts[static_cast<std::size_t>(label)];
  };
  std::cout << "rejected: " << count_of(QualityLabel::kRejected)
            << "\nverified: " << count_of(QualityLabel::kVerified)
            << "\ngood: " << count_of(QualityLabel::kGood)
            << "\ngold: " << count_of(QualityLabel::kGold)
            << "\nunlabeled: " << breakdown.unlabeled
            << "\ntotal: " << breakdown.n_samples << "\n";
  if (!out_path.empty()) {
    write_file(out_path, quality_breakdown_to_json(breakdown));
    std::cout << "report written to " << out_path << "\n";
  }
}

void run_split(const std::string& dataset_path, const std::vector<double>& ratios,
               std::uint64_t seed, const std::string& out_prefix) {
  require_readable(dataset_path);
  if (ratios.size() != 3) {
    throw ValidationError("--ratios needs exactly three values (train,dev,test)");
  }
  const Dataset dataset = load_dataset(dataset_path);
  const SplitAssignment assignment =
      split_dataset(dataset, {ratios[0], ratios[1], ratios[2]}, seed);

  const auto idx = [](Split s) { return static_cast<std::size_t>(s); };
  for (Split split : {Split::kTrain, Split::kDev, Split::kTest}) {
    const Dataset subset = subset_for_split(dataset, assignment, split);
    const std::string path =
        out_prefix + "_" + std::string(to_string(split)) + ".json";
    write_dataset(subset, path);
    std::cout << to_string(split) << ": "
              << assignment.question_counts[idx(split)] << " questions ("
              << fixed4(assignment.realized_ratios[idx(split)]) << ") -> " << path
              << "\n";
  }
  const std::string summary_path = out_prefix + "_split.json";
  write_file(summary_path, split_summary_to_json(assignment));
  std::cout << "summary written to " << summary_path << "\n";
}

void run_filter_pool(const std::string& source, const std::string& in_path,
                     const std::string& out_path,
                     const std::string& rejected_path) {
  require_readable(in_path);
  if (source != "wikipedia" && source != "geektime") {
    throw ValidationError("unknown pool source \"" + source + "\"");
  }
  const std::vector<PoolParagraph> pool = load_pool(in_path);
  const PoolFilterResult result = source == "wikipedia"
                                      ? filter_wikipedia_pool(pool)
                                      : filter_geektime_pool(pool);
  write_file(out_path, pool_to_jsonl(result.accepted));
  std::map<std::string, std::size_t> reasons;
  for (const PoolFilterResult::Rejection& r : result.rejected) ++reasons[r.reason];
  std::cout << "accepted: " << result.accepted.size()
            << ", rejected: " << result.rejected.size() << "\n";
  for (const auto& [reason, count] : reasons) {
    std::cout << "  " << reason << ": " << count << "\n";
  }
  std::cout << "accepted paragraphs written to " << out_path << "\n";
  if (!rejected_path.empty()) {
    write_file(rejected_path, pool_filter_rejections_to_jsonl(result));
    std::cout << "rejections written to " << rejected_path << "\n";
  }
}

void add_profile_flag(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--norm-profile", common.norm_profile,
                  "Normalization profile: hebrew-default, english-squad or none")
      ->default_val("hebrew-default");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extractive question-answering evaluation and dataset tooling"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string dataset_path;
  std::string predictions_path;
  std::string pairs_path;
  std::string in_path;
  std::string out_path;
  std::string csv_path;
  std::string rejected_path;
  std::string out_prefix;
  std::string target_name;
  std::string source;
  std::vector<double> ratios{0.90, 0.05, 0.05};
  double threshold = 0.1;
  std::uint64_t seed = 0;
  std::size_t bins = 10;
  std::size_t top = 20;
  unsigned jobs = 0;

  std::function<void()> action;

  // evaluate
  {
    CLI::App* cmd = app.add_subcommand(
        "evaluate", "Score predictions against a dataset (EM, F1, TLNLS)");
    cmd->add_option("--dataset", dataset_path, "Dataset JSON file")->required();
    cmd->add_option("--predictions", predictions_path,
                    "Predictions JSON file (id -> answer string)")
        ->required();
    cmd->add_option("--out", out_path, "Report JSON output path")->required();
    add_profile_flag(cmd, common);
    cmd->add_option("--f1-mode", common.f1_mode, "F1 flavor: paper or squad-compat")
        ->default_val("paper");
    cmd->add_option("--jobs", jobs, "Worker threads for per-sample scoring (0 = all cores)")
        ->envname("MRC_EVAL_JOBS");
    cmd->callback([&] {
      action = [&] {
        run_evaluate(dataset_path, predictions_path, out_path, common, jobs);
      };
    });
  }

  // meta-eval
  {
    CLI::App* meta = app.add_subcommand(
        "meta-eval", "Metric meta-evaluation over multi-reference data");
    meta->require_subcommand(1);

    CLI::App* positive = meta->add_subcommand(
        "positive", "Agreement between alternative correct spans");
    positive->add_option("--dataset", dataset_path, "Dataset JSON file")->required();
    positive->add_option("--out", out_path, "Report JSON output path");
    add_profile_flag(positive, common);
    positive->callback([&] {
      action = [&] { run_meta_positive(dataset_path, out_path, common); };
    });

    CLI::App* negative = meta->add_subcommand(
        "negative", "Scores of verified wrong spans against gold");
    negative->add_option("--pairs", pairs_path, "NegativePair JSON file")->required();
    negative->add_option("--out", out_path, "Report JSON output path");
    add_profile_flag(negative, common);
    negative->callback([&] {
      action = [&] { run_meta_negative(pairs_path, out_path, common); };
    });

    CLI::App* collect = meta->add_subcommand(
        "collect", "Export low-F1 predictions for manual review");
    collect->add_option("--dataset", dataset_path, "Dataset JSON file")->required();
    collect->add_option("--predictions", predictions_path, "Predictions JSON file")
        ->required();
    collect->add_option("--threshold", threshold, "F1 threshold (strict less-than)")
        ->default_val(0.1);
    collect->add_option("--out", out_path, "Candidate file output path")->required();
    add_profile_flag(collect, common);
    collect->callback([&] {
      action = [&] {
        run_meta_collect(dataset_path, predictions_path, out_path, threshold, common);
      };
    });

    CLI::App* gaps = meta->add_subcommand(
        "gaps", "Reference pairs ranked by tlnls - f1 gap");
    gaps->add_option("--dataset", dataset_path, "Dataset JSON file")->required();
    gaps->add_option("--top", top, "Entries to keep (0 = all)")->default_val(20);
    gaps->add_option("--out", out_path, "Ranking JSON output path");
    add_profile_flag(gaps, common);
    gaps->callback([&] {
      action = [&] { run_meta_gaps(dataset_path, out_path, top, common); };
    });
  }

  // qc
  {
    CLI::App* qc = app.add_subcommand("qc", "Dataset diagnostics");
    qc->require_subcommand(1);

    CLI::App* overlap = qc->add_subcommand(
        "overlap", "Question/context or question/answer token overlap");
    overlap->add_option("--dataset", dataset_path, "Dataset JSON file")->required();
    overlap->add_option("--target", target_name, "Overlap target: context or answer")
        ->required();
    overlap->add_option("--out", out_path, "Histogram JSON output path");
    overlap->add_option("--csv", csv_path, "Histogram CSV output path");
    add_profile_flag(overlap, common);
    overlap->callback([&] {
      action = [&] {
        run_qc_overlap(dataset_path, target_name, out_path, csv_path, common);
      };
    });

    CLI::App* positions = qc->add_subcommand(
        "positions", "Relative answer position distribution");
    positions->add_option("--dataset", dataset_path, "Dataset JSON file")->required();
    positions->add_option("--bins", bins, "Histogram bin count")->default_val(10);
    positions->add_option("--out", out_path, "Histogram JSON output path");
    positions->add_option("--csv", csv_path, "Histogram CSV output path");
    positions->callback([&] {
      action = [&] { run_qc_positions(dataset_path, bins, out_path, csv_path); };
    });

    CLI::App* quality = qc->add_subcommand(
        "quality", "Counts per quality label");
    quality->add_option("--dataset", dataset_path, "Dataset JSON file")->required();
    quality->add_option("--out", out_path, "Report JSON output path");
    quality->callback([&] {
      action = [&] { run_qc_quality(dataset_path, out_path); };
    });
  }

  // split
  {
    CLI::App* cmd = app.add_subcommand(
        "split", "Article-grouped train/dev/test split");
    cmd->add_option("--dataset", dataset_path, "Dataset JSON file")->required();
    cmd->add_option("--ratios", ratios, "Train,dev,test ratios summing to 1")
        ->delimiter(',')
        ->expected(3);
    cmd->add_option("--seed", seed, "Shuffle seed")->default_val(0);
    cmd->add_option("--out-prefix", out_prefix,
                    "Prefix for <prefix>_{train,dev,test,split}.json")
        ->required();
    cmd->callback([&] {
      action = [&] { run_split(dataset_path, ratios, seed, out_prefix); };
    });
  }

  // filter-pool
  {
    CLI::App* cmd = app.add_subcommand(
        "filter-pool", "Apply paragraph pool constraints");
    cmd->add_option("--source", source, "Pool rules: wikipedia or geektime")
        ->required();
    cmd->add_option("--in", in_path, "Pool JSONL input path")->required();
    cmd->add_option("--out", out_path, "Accepted JSONL output path")->required();
    cmd->add_option("--rejected", rejected_path,
                    "Optional rejections JSONL output path");
    cmd->callback([&] {
      action = [&] { run_filter_pool(source, in_path, out_path, rejected_path); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exits 0
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the error and usage hint
    return kExitValidation;
  }

  try {
    action();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
