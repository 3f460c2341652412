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

#ifndef MRCEVAL_CORPUS_HPP_
#define MRCEVAL_CORPUS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mrceval {

/// One accepted answer variant. answer_start is a 0-based offset into the
/// owning context, counted in Unicode scalar values (not bytes).
struct GoldAnswer {
  std::string text;
  std::size_t answer_start = 0;

  bool operator==(const GoldAnswer&) const = default;
};

/// Four-tier annotation grade. Optional on samples; absent when the
/// dataset does not carry quality annotations.
enum class QualityLabel { kRejected, kVerified, kGood, kGold };

std::string_view to_string(QualityLabel label);
std::optional<QualityLabel> quality_label_from_string(std::string_view s);

struct QASample {
  std::string id;
  std::string question;
  std::vector<GoldAnswer> answers;  // empty iff is_impossible
  bool is_impossible = false;
  std::optional<QualityLabel> quality_label;

  bool operator==(const QASample&) const = default;
};

struct ParagraphEntry {
  std::string context;
  std::vector<QASample> qas;

  bool operator==(const ParagraphEntry&) const = default;
};

struct Article {
  std::string title;
  std::vector<ParagraphEntry> paragraphs;

  bool operator==(const Article&) const = default;
};

/// Flat view of one sample with its surrounding context. Pointers stay
/// valid as long as the owning Dataset is alive.
struct SampleRef {
  const QASample* qa = nullptr;
  const std::string* context = nullptr;
  const std::string* article_title = nullptr;
};

/// An immutable, validated question-answering dataset. Loading is
/// single-threaded; afterwards the dataset is safe to share across
/// concurrent readers.
class Dataset {
 public:
  /// Validates every invariant (non-empty contexts, unique sample ids,
  /// is_impossible/answers consistency, answer offsets matching the
  /// context) and builds the flat sample index.
  static Dataset from_articles(std::vector<Article> articles);

  const std::vector<Article>& articles() const { return articles_; }
  const std::vector<SampleRef>& samples() const { return samples_; }
  std::size_t sample_count() const { return samples_.size(); }

  /// nullptr when the id is unknown.
  const SampleRef* find(std::string_view id) const;

 private:
  Dataset() = default;

  std::vector<Article> articles_;
  std::vector<SampleRef> samples_;                  // file order
  std::map<std::string, std::size_t, std::less<>> index_;  // id -> samples_ slot
};

/// Map from sample id to predicted answer string; an empty string
/// predicts "unanswerable". Duplicate keys in the input resolve
/// last-wins and leave a note in `warnings`.
struct PredictionSet {
  std::map<std::string, std::string> by_id;
  std::vector<std::string> warnings;
};

/// Candidate paragraph for dataset construction, as found in pool files.
struct PoolParagraph {
  std::string article_id;
  std::string paragraph_id;
  std::string text;

  bool operator==(const PoolParagraph&) const = default;
};

/// Reads a UTF-8 JSON dataset file:
///   {"data": [{"title", "paragraphs": [{"context", "qas": [...]}]}]}
/// Raises ParseError for malformed JSON or schema violations,
/// IntegrityError for invariant violations (naming the sample id),
/// IoError when the file cannot be read.
Dataset load_dataset(const std::string& path);

/// Same as load_dataset but from an in-memory document; `origin` names
/// the input in error messages.
Dataset parse_dataset(std::string_view json_text, std::string_view origin);

/// Serializes a dataset back to the schema accepted by load_dataset.
/// Deterministic: sorted keys, byte-identical across runs, exact
/// round-trip of every field.
std::string dataset_to_json(const Dataset& dataset);

void write_dataset(const Dataset& dataset, const std::string& path);

/// Reads a UTF-8 JSON object of id -> predicted answer string. Values are
/// kept verbatim; no normalization happens at load time.
PredictionSet load_predictions(const std::string& path);

PredictionSet parse_predictions(std::string_view json_text, std::string_view origin);

/// Reads JSON-lines of {"article_id", "paragraph_id", "text"}.
/// Duplicate (article_id, paragraph_id) pairs or empty text raise
/// IntegrityError; malformed lines raise ParseError naming the line.
std::vector<PoolParagraph> load_pool(const std::string& path);

std::vector<PoolParagraph> parse_pool(std::string_view jsonl_text, std::string_view origin);

std::string pool_to_jsonl(const std::vector<PoolParagraph>& paragraphs);

/// Reads the whole file; IoError on failure.
std::string read_file(const std::string& path);

/// Writes bytes exactly; IoError on failure.
void write_file(const std::string& path, std::string_view bytes);

}  // namespace mrceval

#endif  // MRCEVAL_CORPUS_HPP_
