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

#ifndef MRCEVAL_REPORT_HPP_
#define MRCEVAL_REPORT_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace mrceval {

/// Per-sample scores as they appear in evaluation reports, in [0, 1].
struct SampleRecord {
  std::string id;
  double em = 0.0;
  double f1 = 0.0;
  double tlnls = 0.0;
};

/// Evaluation result over a full dataset. Aggregates are arithmetic
/// means of the per-sample scores scaled to [0, 100].
struct MetricReport {
  std::vector<SampleRecord> samples;  // sorted by id, each id once
  double em_aggregate = 0.0;
  double f1_aggregate = 0.0;
  double tlnls_aggregate = 0.0;
  std::size_t n_samples = 0;
  std::size_t n_unanswerable = 0;
};

/// Deterministic serialization: sorted keys, per-sample values with 4
/// decimals, aggregates with 2. Identical reports produce identical
/// bytes. Raises ValidationError when the report covers no samples.
std::string metric_report_to_json(const MetricReport& report);

void write_metric_report(const MetricReport& report, const std::string& path);

}  // namespace mrceval

#endif  // MRCEVAL_REPORT_HPP_
