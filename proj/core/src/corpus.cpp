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

#include "mrceval/corpus.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "json_out.hpp"
#include "mrceval/error.hpp"
#include "mrceval/unicode.hpp"

namespace mrceval {

namespace {

using nlohmann::json;

std::string at_origin(std::string_view origin, std::string_view what) {
  std::string msg(origin);
  msg += ": ";
  msg += what;
  return msg;
}

const json& require_field(const json& obj, const char* key,
                          std::string_view origin, std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(at_origin(
        origin, std::string("missing field \"") + key + "\" in " + std::string(where)));
  }
  return *it;
}

std::string require_string(const json& obj, const char* key,
                           std::string_view origin, std::string_view where) {
  const json& v = require_field(obj, key, origin, where);
  if (!v.is_string()) {
    throw ParseError(at_origin(
        origin, std::string("field \"") + key + "\" in " + std::string(where) +
                    " is not a string"));
  }
  return v.get<std::string>();
}

QASample parse_qa(const json& node, std::string_view origin) {
  if (!node.is_object()) {
    throw ParseError(at_origin(origin, "qa entry is not an object"));
  }
  QASample qa;
  qa.id = require_string(node, "id", origin, "qa entry");
  qa.question = require_string(node, "question", origin, "qa entry");
  // Absent in pre-unanswerable dataset layouts; treated as answerable.
  if (auto it = node.find("is_impossible"); it != node.end()) {
    if (!it->is_boolean()) {
      throw ParseError(at_origin(
          origin, "field \"is_impossible\" of sample " + qa.id + " is not a boolean"));
    }
    qa.is_impossible = it->get<bool>();
  }
  if (auto it = node.find("quality_label"); it != node.end() && !it->is_null()) {
    if (!it->is_string()) {
      throw ParseError(at_origin(
          origin, "field \"quality_label\" of sample " + qa.id + " is not a string"));
    }
    auto label = quality_label_from_string(it->get<std::string>());
    if (!label) {
      throw ParseError(at_origin(
          origin, "unknown quality_label \"" + it->get<std::string>() +
                      "\" on sample " + qa.id));
    }
    qa.quality_label = *label;
  }
  const json& answers = require_field(node, "answers", origin, "qa entry");
  if (!answers.is_array()) {
    throw ParseError(at_origin(
        origin, "field \"answers\" of sample " + qa.id + " is not an array"));
  }
  for (const json& a : answers) {
    if (!a.is_object()) {
      throw ParseError(at_origin(origin, "answer of sample " + qa.id + " is not an object"));
    }
    GoldAnswer gold;
    gold.text = require_string(a, "text", origin, "answer of sample " + qa.id);
    const json& start = require_field(a, "answer_start", origin,
                                      "answer of sample " + qa.id);
    if (!start.is_number_integer() && !start.is_number_unsigned()) {
      throw ParseError(at_origin(
          origin, "field \"answer_start\" of sample " + qa.id + " is not an integer"));
    }
    long long off = start.get<long long>();
    if (off < 0) {
      throw IntegrityError(at_origin(
          origin, "negative answer_start on sample " + qa.id));
    }
    gold.answer_start = static_cast<std::size_t>(off);
    qa.answers.push_back(std::move(gold));
  }
  return qa;
}

}  // namespace

std::string_view to_string(QualityLabel label) {
  switch (label) {
    case QualityLabel::kRejected: return "rejected";
    case QualityLabel::kVerified: return "verified";
    case QualityLabel::kGood: return "good";
    case QualityLabel::kGold: return "gold";
  }
  return "rejected";
}

std::optional<QualityLabel> quality_label_from_string(std::string_view s) {
  if (s == "rejected") return QualityLabel::kRejected;
  if (s == "verified") return QualityLabel::kVerified;
  if (s == "good") return QualityLabel::kGood;
  if (s == "gold") return QualityLabel::kGold;
  return std::nullopt;
}

Dataset Dataset::from_articles(std::vector<Article> articles) {
  Dataset ds;
  ds.articles_ = std::move(articles);
  for (const Article& article : ds.articles_) {
    for (const ParagraphEntry& paragraph : article.paragraphs) {
      if (paragraph.context.empty()) {
        throw IntegrityError("empty context in article \"" + article.title + "\"");
      }
      const std::u32string context_cps = unicode::decode_utf8(paragraph.context);
      for (const QASample& qa : paragraph.qas) {
        if (qa.is_impossible && !qa.answers.empty()) {
          throw IntegrityError("unanswerable sample " + qa.id + " carries answers");
        }
        if (!qa.is_impossible && qa.answers.empty()) {
          throw IntegrityError("answerable sample " + qa.id + " has no answers");
        }
        for (const GoldAnswer& gold : qa.answers) {
          const std::u32string answer_cps = unicode::decode_utf8(gold.text);
          if (gold.answer_start + answer_cps.size() > context_cps.size() ||
              context_cps.compare(gold.answer_start, answer_cps.size(),
                                  answer_cps) != 0) {
            throw IntegrityError("answer_start of sample " + qa.id +
                                 " does not point at \"" + gold.text + "\"");
          }
        }
        auto [it, inserted] = ds.index_.emplace(qa.id, ds.samples_.size());
        if (!inserted) {
          throw IntegrityError("duplicate sample id " + qa.id);
        }
        ds.samples_.push_back(
            SampleRef{&qa, &paragraph.context, &article.title});
      }
    }
  }
  return ds;
}

const SampleRef* Dataset::find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return nullptr;
  return &samples_[it->second];
}

Dataset parse_dataset(std::string_view json_text, std::string_view origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(at_origin(origin, e.what()));
  }
  if (!doc.is_object()) {
    throw ParseError(at_origin(origin, "top-level value is not an object"));
  }
  const json& data = require_field(doc, "data", origin, "top-level object");
  if (!data.is_array()) {
    throw ParseError(at_origin(origin, "field \"data\" is not an array"));
  }
  std::vector<Article> articles;
  articles.reserve(data.size());
  for (const json& entry : data) {
    if (!entry.is_object()) {
      throw ParseError(at_origin(origin, "data entry is not an object"));
    }
    Article article;
    article.title = require_string(entry, "title", origin, "data entry");
    const json& paragraphs = require_field(entry, "paragraphs", origin, "data entry");
    if (!paragraphs.is_array()) {
      throw ParseError(at_origin(origin, "field \"paragraphs\" is not an array"));
    }
    for (const json& p : paragraphs) {
      if (!p.is_object()) {
        throw ParseError(at_origin(origin, "paragraph entry is not an object"));
      }
      ParagraphEntry paragraph;
      paragraph.context = require_string(p, "context", origin, "paragraph entry");
      const json& qas = require_field(p, "qas", origin, "paragraph entry");
      if (!qas.is_array()) {
        throw ParseError(at_origin(origin, "field \"qas\" is not an array"));
      }
      for (const json& q : qas) {
        paragraph.qas.push_back(parse_qa(q, origin));
      }
      article.paragraphs.push_back(std::move(paragraph));
    }
    articles.push_back(std::move(article));
  }
  return Dataset::from_articles(std::move(articles));
}

Dataset load_dataset(const std::string& path) {
  return parse_dataset(read_file(path), path);
}

std::string dataset_to_json(const Dataset& dataset) {
  std::string out = "{\"data\":[";
  bool first_article = true;
  for (const Article& article : dataset.articles()) {
    if (!first_article) out.push_back(',');
    first_article = false;
    out += "{\"paragraphs\":[";
    bool first_paragraph = true;
    for (const ParagraphEntry& paragraph : article.paragraphs) {
      if (!first_paragraph) out.push_back(',');
      first_paragraph = false;
      out += "{\"context\":";
      out += jsonout::quote(paragraph.context);
      out += ",\"qas\":[";
      bool first_qa = true;
      for (const QASample& qa : paragraph.qas) {
        if (!first_qa) out.push_back(',');
        first_qa = false;
        out += "{\"answers\":[";
        bool first_answer = true;
        for (const GoldAnswer& gold : qa.answers) {
          if (!first_answer) out.push_back(',');
          first_answer = false;
          out += "{\"answer_start\":";
          out += std::to_string(gold.answer_start);
          out += ",\"text\":";
          out += jsonout::quote(gold.text);
          out.push_back('}');
        }
        out += "],\"id\":";
        out += jsonout::quote(qa.id);
        out += ",\"is_impossible\":";
        out += qa.is_impossible ? "true" : "false";
        if (qa.quality_label) {
          out += ",\"quality_label\":";
          out += jsonout::quote(to_string(*qa.quality_label));
        }
        out += ",\"question\":";
        out += jsonout::quote(qa.question);
        out.push_back('}');
      }
      out += "]}";
    }
    out += "],\"title\":";
    out += jsonout::quote(article.title);
    out.push_back('}');
  }
  out += "]}\n";
  return out;
}

void write_dataset(const Dataset& dataset, const std::string& path) {
  write_file(path, dataset_to_json(dataset));
}

namespace {

// SAX handler for prediction files. Works on the token stream so that
// duplicate keys (which a DOM parse would silently merge) can be
// reported, and non-string values rejected with the offending id.
class PredictionsSax {
 public:
  explicit PredictionsSax(std::string_view origin) : origin_(origin) {}

  PredictionSet take() { return std::move(result_); }

  bool null() { return fail_value("null"); }
  bool boolean(bool) { return fail_value("boolean"); }
  bool number_integer(std::int64_t) { return fail_value("number"); }
  bool number_unsigned(std::uint64_t) { return fail_value("number"); }
  bool number_float(double, const std::string&) { return fail_value("number"); }
  bool binary(json::binary_t&) { return fail_value("binary"); }

  bool string(std::string& val) {
    if (depth_ != 1) return fail_value("string outside the top-level object");
    auto [it, inserted] = result_.by_id.insert_or_assign(current_key_, val);
    (void)it;
    if (!inserted) {
      result_.warnings.push_back("duplicate prediction key \"" + current_key_ +
                                 "\": keeping the last value");
    }
    return true;
  }

  bool start_object(std::size_t) {
    ++depth_;
    if (depth_ > 1) {
      throw ParseError(at_origin(origin_, "prediction for \"" + current_key_ +
                                              "\" is not a string (object)"));
    }
    return true;
  }

  bool key(std::string& val) {
    current_key_ = val;
    return true;
  }

  bool end_object() {
    --depth_;
    return true;
  }

  bool start_array(std::size_t) {
    if (depth_ == 0) {
      throw ParseError(at_origin(origin_, "top-level value is not an object"));
    }
    throw ParseError(at_origin(origin_, "prediction for \"" + current_key_ +
                                            "\" is not a string (array)"));
  }

  bool end_array() { return true; }

  bool parse_error(std::size_t /*position*/, const std::string& /*last_token*/,
                   const nlohmann::detail::exception& ex) {
    throw ParseError(at_origin(origin_, ex.what()));
  }

 private:
  bool fail_value(std::string_view kind) {
    if (depth_ == 0) {
      throw ParseError(at_origin(origin_, "top-level value is not an object"));
    }
    throw ParseError(at_origin(origin_, "prediction for \"" + current_key_ +
                                            "\" is not a string (" +
                                            std::string(kind) + ")"));
  }

  std::string_view origin_;
  std::string current_key_;
  int depth_ = 0;
  PredictionSet result_;
};

}  // namespace

PredictionSet parse_predictions(std::string_view json_text, std::string_view origin) {
  PredictionsSax handler(origin);
  json::sax_parse(json_text, &handler);
  return handler.take();
}

PredictionSet load_predictions(const std::string& path) {
  return parse_predictions(read_file(path), path);
}

std::vector<PoolParagraph> parse_pool(std::string_view jsonl_text,
                                      std::string_view origin) {
  std::vector<PoolParagraph> out;
  std::set<std::pair<std::string, std::string>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= jsonl_text.size()) {
    std::size_t eol = jsonl_text.find('\n', pos);
    std::string_view line = jsonl_text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? jsonl_text.size() + 1 : eol + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    std::string where = std::string(origin) + ":" + std::to_string(line_no);
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!doc.is_object()) {
      throw ParseError(where + ": line is not a JSON object");
    }
    PoolParagraph p;
    p.article_id = require_string(doc, "article_id", where, "pool entry");
    p.paragraph_id = require_string(doc, "paragraph_id", where, "pool entry");
    p.text = require_string(doc, "text", where, "pool entry");
    if (p.text.empty()) {
      throw IntegrityError(where + ": empty text for paragraph " + p.paragraph_id);
    }
    if (!seen.emplace(p.article_id, p.paragraph_id).second) {
      throw IntegrityError(where + ": duplicate paragraph (" + p.article_id +
                           ", " + p.paragraph_id + ")");
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<PoolParagraph> load_pool(const std::string& path) {
  return parse_pool(read_file(path), path);
}

std::string pool_to_jsonl(const std::vector<PoolParagraph>& paragraphs) {
  std::string out;
  for (const PoolParagraph& p : paragraphs) {
    out += "{\"article_id\":";
    out += jsonout::quote(p.article_id);
    out += ",\"paragraph_id\":";
    out += jsonout::quote(p.paragraph_id);
    out += ",\"text\":";
    out += jsonout::quote(p.text);
    out += "}\n";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path + " for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed reading " + path);
  }
  return std::move(buf).str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path + " for writing");
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) {
    throw IoError("failed writing " + path);
  }
}

}  // namespace mrceval
