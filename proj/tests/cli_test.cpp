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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "mrceval/corpus.hpp"
#include "mrceval/metaeval.hpp"
#include "testutil.hpp"

namespace fs = std::filesystem;

namespace mrceval {
namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::string tmpl = (fs::temp_directory_path() / "mrceval_cli_XXXXXX").string();
    ASSERT_NE(mkdtemp(tmpl.data()), nullptr);
    dir_ = tmpl;
  }

  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  RunResult run(const std::string& args, const std::string& env = "") {
    const std::string out_file = path("__stdout");
    const std::string err_file = path("__stderr");
    std::string cmd = env.empty() ? "" : env + " ";
    cmd += std::string("\"") + MRCEVAL_BIN + "\" " + args + " > \"" + out_file +
           "\" 2> \"" + err_file + "\"";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = read_file(out_file);
    result.err = read_file(err_file);
    return result;
  }

  void write_fixture_dataset(const std::string& name, std::size_t articles = 1) {
    std::vector<Article> list;
    for (std::size_t a = 0; a < articles; ++a) {
      list.push_back(testutil::article_with_references(
          "article" + std::to_string(a), "a" + std::to_string(a) + "q",
          {{"בבית", "בית"}, {"שולחן"}}));
    }
    write_dataset(Dataset::from_articles(std::move(list)), path(name));
  }

  fs::path dir_;
};

TEST_F(CliTest, EvaluateHappyPath) {
  write_fixture_dataset("d.json");
  write_file(path("p.json"), R"({"a0q0": "בית", "a0q1": "שולחן"})");
  const RunResult r = run("evaluate --dataset " + path("d.json") +
                          " --predictions " + path("p.json") + " --out " +
                          path("r.json"));
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("TLNLS: 100.00"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(path("r.json")));
}

TEST_F(CliTest, SameInvocationProducesIdenticalBytes) {
  write_fixture_dataset("d.json");
  write_file(path("p.json"), R"({"a0q0": "בית", "a0q1": ""})");
  const std::string args = "evaluate --dataset " + path("d.json") +
                           " --predictions " + path("p.json") + " --out ";
  ASSERT_EQ(run(args + path("r1.json")).exit_code, 0);
  ASSERT_EQ(run(args + path("r2.json")).exit_code, 0);
  EXPECT_EQ(read_file(path("r1.json")), read_file(path("r2.json")));
}

TEST_F(CliTest, JobCountDoesNotChangeOutput) {
  write_fixture_dataset("d.json", 3);
  std::string preds = "{";
  for (int a = 0; a < 3; ++a) {
    for (int q = 0; q < 2; ++q) {
      if (a + q > 0) preds += ",";
      preds += "\"a" + std::to_string(a) + "q" + std::to_string(q) + "\": \"בית\"";
    }
  }
  preds += "}";
  write_file(path("p.json"), preds);
  const std::string base = "evaluate --dataset " + path("d.json") +
                           " --predictions " + path("p.json") + " --out ";
  ASSERT_EQ(run(base + path("r1.json") + " --jobs 1").exit_code, 0);
  ASSERT_EQ(run(base + path("r2.json") + " --jobs 4").exit_code, 0);
  ASSERT_EQ(run(base + path("r3.json"), "MRC_EVAL_JOBS=3").exit_code, 0);
  EXPECT_EQ(read_file(path("r1.json")), read_file(path("r2.json")));
  EXPECT_EQ(read_file(path("r1.json")), read_file(path("r3.json")));
}

TEST_F(CliTest, MissingRequiredFlagExitsOne) {
  const RunResult r = run("evaluate --predictions p.json --out r.json");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("--dataset"), std::string::npos) << r.err;
}

TEST_F(CliTest, UnknownFlagExitsOne) {
  const RunResult r = run("evaluate --bogus x");
  EXPECT_EQ(r.exit_code, 1);
}

TEST_F(CliTest, NoSubcommandExitsOne) {
  EXPECT_EQ(run("").exit_code, 1);
}

TEST_F(CliTest, HelpExitsZero) {
  const RunResult r = run("--help");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("evaluate"), std::string::npos);
}

TEST_F(CliTest, MissingInputFileExitsTwo) {
  const RunResult r = run("evaluate --dataset " + path("absent.json") +
                          " --predictions " + path("absent.json") + " --out " +
                          path("r.json"));
  EXPECT_EQ(r.exit_code, 2);
}

TEST_F(CliTest, MalformedDatasetExitsOne) {
  write_file(path("d.json"), "{broken");
  write_file(path("p.json"), "{}");
  const RunResult r = run("evaluate --dataset " + path("d.json") +
                          " --predictions " + path("p.json") + " --out " +
                          path("r.json"));
  EXPECT_EQ(r.exit_code, 1);
}

TEST_F(CliTest, CoverageGapExitsOne) {
  write_fixture_dataset("d.json");
  write_file(path("p.json"), R"({"a0q0": "בית"})");
  const RunResult r = run("evaluate --dataset " + path("d.json") +
                          " --predictions " + path("p.json") + " --out " +
                          path("r.json"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("a0q1"), std::string::npos) << r.err;
}

TEST_F(CliTest, UnwritableOutputExitsTwo) {
  write_fixture_dataset("d.json");
  write_file(path("p.json"), R"({"a0q0": "בית", "a0q1": "שולחן"})");
  const RunResult r = run("evaluate --dataset " + path("d.json") +
                          " --predictions " + path("p.json") +
                          " --out /nonexistent-dir/r.json");
  EXPECT_EQ(r.exit_code, 2);
}

TEST_F(CliTest, SplitEndToEnd) {
  write_fixture_dataset("d.json", 8);
  const std::string args = "split --dataset " + path("d.json") +
                           " --ratios 0.5,0.25,0.25 --seed 17 --out-prefix " +
                           path("splits");
  ASSERT_EQ(run(args).exit_code, 0);
  for (const char* suffix : {"_train.json", "_dev.json", "_test.json", "_split.json"}) {
    EXPECT_TRUE(fs::exists(path(std::string("splits") + suffix))) << suffix;
  }
  // the written splits are loadable datasets that partition the input
  std::size_t total = 0;
  for (const char* suffix : {"_train.json", "_dev.json", "_test.json"}) {
    total += load_dataset(path(std::string("splits") + suffix)).sample_count();
  }
  EXPECT_EQ(total, 16u);

  // identical invocation reproduces identical bytes
  const std::string train_bytes = read_file(path("splits_train.json"));
  const std::string summary_bytes = read_file(path("splits_split.json"));
  ASSERT_EQ(run(args).exit_code, 0);
  EXPECT_EQ(read_file(path("splits_train.json")), train_bytes);
  EXPECT_EQ(read_file(path("splits_split.json")), summary_bytes);
}

TEST_F(CliTest, FilterPoolEndToEnd) {
  std::string hebrew600;
  for (int i = 0; i < 600; ++i) hebrew600 += "א";
  std::vector<PoolParagraph> pool;
  pool.push_back({"a1", "p1", hebrew600});
  pool.push_back({"a1", "p2", "קצר"});
  write_file(path("pool.jsonl"), pool_to_jsonl(pool));

  const RunResult r = run("filter-pool --source wikipedia --in " +
                          path("pool.jsonl") + " --out " + path("ok.jsonl") +
                          " --rejected " + path("bad.jsonl"));
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(load_pool(path("ok.jsonl")).size(), 1u);
  const std::string rejected = read_file(path("bad.jsonl"));
  EXPECT_NE(rejected.find("too_short"), std::string::npos);
}

TEST_F(CliTest, QcCommandsEndToEnd) {
  write_fixture_dataset("d.json");
  EXPECT_EQ(run("qc overlap --dataset " + path("d.json") +
                " --target context --out " + path("o.json") + " --csv " +
                path("o.csv"))
                .exit_code,
            0);
  EXPECT_TRUE(fs::exists(path("o.json")));
  EXPECT_TRUE(fs::exists(path("o.csv")));
  EXPECT_EQ(run("qc positions --dataset " + path("d.json") + " --bins 10 --out " +
                path("pos.json"))
                .exit_code,
            0);
  EXPECT_EQ(run("qc quality --dataset " + path("d.json") + " --out " +
                path("q.json"))
                .exit_code,
            0);
}

TEST_F(CliTest, QcOverlapBadTargetExitsOne) {
  write_fixture_dataset("d.json");
  EXPECT_EQ(run("qc overlap --dataset " + path("d.json") + " --target bogus")
                .exit_code,
            1);
}

TEST_F(CliTest, MetaEvalChain) {
  write_fixture_dataset("d.json");
  // positive evaluation over the multi-reference sample
  const RunResult positive =
      run("meta-eval positive --dataset " + path("d.json") + " --out " +
          path("pos.json"));
  EXPECT_EQ(positive.exit_code, 0) << positive.err;
  EXPECT_NE(positive.out.find("tlnls"), std::string::npos);

  // collect candidates from a wrong prediction
  write_file(path("p.json"), R"({"a0q0": "מחשב רחוק", "a0q1": "שולחן"})");
  const RunResult collect = run(
      "meta-eval collect --dataset " + path("d.json") + " --predictions " +
      path("p.json") + " --threshold 0.1 --out " + path("neg.json"));
  EXPECT_EQ(collect.exit_code, 0) << collect.err;

  // unverified candidates are rejected by the negative evaluation
  EXPECT_EQ(run("meta-eval negative --pairs " + path("neg.json")).exit_code, 1);

  // after manual review (verified = true) the evaluation runs
  std::vector<NegativePair> pairs = load_negative_pairs(path("neg.json"));
  ASSERT_EQ(pairs.size(), 1u);
  pairs[0].verified = true;
  write_file(path("neg.json"), negative_pairs_to_json(pairs));
  const RunResult negative =
      run("meta-eval negative --pairs " + path("neg.json"));
  EXPECT_EQ(negative.exit_code, 0) << negative.err;

  // gap ranking
  const RunResult gaps = run("meta-eval gaps --dataset " + path("d.json") +
                             " --top 5 --out " + path("gaps.json"));
  EXPECT_EQ(gaps.exit_code, 0) << gaps.err;
  EXPECT_TRUE(fs::exists(path("gaps.json")));
}

TEST_F(CliTest, InputsAreNeverMutated) {
  write_fixture_dataset("d.json");
  write_file(path("p.json"), R"({"a0q0": "בית", "a0q1": "שולחן"})");
  const std::string dataset_before = read_file(path("d.json"));
  const std::string preds_before = read_file(path("p.json"));
  ASSERT_EQ(run("evaluate --dataset " + path("d.json") + " --predictions " +
                path("p.json") + " --out " + path("r.json"))
                .exit_code,
            0);
  EXPECT_EQ(read_file(path("d.json")), dataset_before);
  EXPECT_EQ(read_file(path("p.json")), preds_before);
}

}  // namespace
}  // namespace mrceval
