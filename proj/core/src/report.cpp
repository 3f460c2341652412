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

#include "mrceval/report.hpp"

#include "json_out.hpp"
#include "mrceval/corpus.hpp"
#include "mrceval/error.hpp"

namespace mrceval {

std::string metric_report_to_json(const MetricReport& report) {
  if (report.samples.empty()) {
    throw ValidationError("metric report covers no samples");
  }
  std::string out = "{\"aggregates\":{\"EM\":";
  out += jsonout::fixed(report.em_aggregate, 2);
  out += ",\"F1\":";
  out += jsonout::fixed(report.f1_aggregate, 2);
  out += ",\"TLNLS\":";
  out += jsonout::fixed(report.tlnls_aggregate, 2);
  out += "},\"counts\":{\"n_samples\":";
  out += std::to_string(report.n_samples);
  out += ",\"n_unanswerable\":";
  out += std::to_string(report.n_unanswerable);
  out += "},\"samples\":[";
  bool first = true;
  for (const SampleRecord& s : report.samples) {
    if (!first) out.push_back(',');
    first = false;
    out += "{\"em\":";
    out += jsonout::fixed(s.em, 4);
    out += ",\"f1\":";
    out += jsonout::fixed(s.f1, 4);
    out += ",\"id\":";
    out += jsonout::quote(s.id);
    out += ",\"tlnls\":";
    out += jsonout::fixed(s.tlnls, 4);
    out.push_back('}');
  }
  out += "]}\n";
  return out;
}

void write_metric_report(const MetricReport& report, const std::string& path) {
  write_file(path, metric_report_to_json(report));
}

}  // namespace mrceval
