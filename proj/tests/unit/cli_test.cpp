// Copyright 2026 The Hetsum Authors.
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
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hetsum/corpus.hpp"
#include "json.hpp"
#include "synthetic.hpp"

namespace hetsum {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hetsum_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    testing::SyntheticOptions opt;
    opt.documents = 12;
    opt.seed = 4;
    const auto c = testing::make_corpus(opt);
    std::ofstream out(path("corpus.jsonl"), std::ios::binary);
    write_jsonl(out, c.documents);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(HETSUM_CLI) + " " + args + " > " + path("stdout.txt") + " 2>&1";
    return std::system(cmd.c_str());
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(Cli, DatasetSummarizeEvaluateIndexQuery) {
  ASSERT_EQ(run("gen-dataset --corpus " + path("corpus.jsonl") + " --scale 4 --groups 3 --seed 2 --out " +
                path("ds.jsonl")),
            0)
      << read("stdout.txt");
  ASSERT_EQ(run("summarize --dataset " + path("ds.jsonl") + " --out " + path("sums.jsonl")), 0) << read("stdout.txt");
  std::istringstream lines(read("sums.jsonl"));
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j.at("group_id"), n);
    EXPECT_FALSE(j.at("sentences").empty());
    ++n;
  }
  EXPECT_EQ(n, 3u);

  ASSERT_EQ(run("train-lm --input " + path("corpus.jsonl") + " --out " + path("lm.json")), 0) << read("stdout.txt");
  ASSERT_EQ(run("evaluate --candidates " + path("sums.jsonl") + " --references " + path("ds.jsonl") +
                " --metrics rouge1,rougeL,dalechall,logprob --lm " + path("lm.json")),
            0)
      << read("stdout.txt");
  const auto report = read("stdout.txt");
  for (const char* m : {"rouge1\t", "rougeL\t", "dalechall\t", "logprob\t"}) EXPECT_NE(report.find(m), std::string::npos);

  ASSERT_EQ(run("index --summaries " + path("sums.jsonl") + " --all-terms --out " + path("idx.json")), 0)
      << read("stdout.txt");
  ASSERT_EQ(run("query --index " + path("idx.json") + " --term the --docs " + path("ds.jsonl")), 0)
      << read("stdout.txt");
  EXPECT_NE(read("stdout.txt").find("#"), std::string::npos);
}

TEST_F(Cli, BadInputFailsWithMessage) {
  std::ofstream(path("bad.jsonl")) << "{not json\n";
  EXPECT_NE(run("summarize --input " + path("bad.jsonl")), 0);
  EXPECT_NE(read("stdout.txt").find("error"), std::string::npos);
  EXPECT_NE(run("summarize"), 0);
  EXPECT_NE(run("summarize --input " + path("missing.jsonl")), 0);
}

}  // namespace
}  // namespace hetsum
