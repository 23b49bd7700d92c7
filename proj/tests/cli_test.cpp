// Copyright 2026 The Eva Authors
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

// Drives the eva binary end to end through the shell.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("eva_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("graph.txt", "a b\na c\nb c\nd e\nd f\ne f\nc d\n");
    write("attrs.csv", "node,topic\na,x\nb,x\nc,x\nd,y\ne,y\nf,y\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }

  std::string read(const fs::path& p) const {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  json read_json(const fs::path& p) const { return json::parse(read(p)); }

  int eva(const std::string& args) const {
    const std::string cmd = std::string(EVA_CLI_PATH) + " " + args + " > " +
                            (dir_ / "stdout.txt").string() + " 2> " + (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string inputs() const {
    return "--graph " + (dir_ / "graph.txt").string() + " --attrs " + (dir_ / "attrs.csv").string();
  }

  fs::path dir_;
};

TEST_F(CliTest, DetectAtModularityLimitSplitsTriangles) {
  ASSERT_EQ(eva("detect " + inputs() + " --alpha 0 --out " + (dir_ / "o").string()), 0);
  const json part = read_json(dir_ / "o" / "partition.json");
  EXPECT_EQ(part["communities"], json::parse(R"([["a","b","c"],["d","e","f"]])"));
  const json report = read_json(dir_ / "o" / "report.json");
  EXPECT_NEAR(report["modularity"].get<double>(), 5.0 / 14.0, 1e-12);
  EXPECT_EQ(report["community_count"], 2);
  const json manifest = read_json(dir_ / "o" / "manifest.json");
  EXPECT_FALSE(manifest["trace"].empty());
}

TEST_F(CliTest, DetectAtPurityLimitKeepsPureTriangles) {
  ASSERT_EQ(eva("detect " + inputs() + " --alpha 1 --out " + (dir_ / "o").string()), 0);
  EXPECT_EQ(read_json(dir_ / "o" / "partition.json")["communities"],
            json::parse(R"([["a","b","c"],["d","e","f"]])"));
  EXPECT_EQ(read_json(dir_ / "o" / "report.json")["purity"], 1.0);
}

TEST_F(CliTest, DetectIsDeterministicAndScoreRoundTrips) {
  const std::string o1 = (dir_ / "o1").string();
  const std::string o2 = (dir_ / "o2").string();
  ASSERT_EQ(eva("detect " + inputs() + " --alpha 0.4 --seed 9 --out " + o1), 0);
  ASSERT_EQ(eva("detect " + inputs() + " --alpha 0.4 --seed 9 --out " + o2), 0);
  EXPECT_EQ(read(dir_ / "o1" / "partition.json"), read(dir_ / "o2" / "partition.json"));
  EXPECT_EQ(read(dir_ / "o1" / "report.json"), read(dir_ / "o2" / "report.json"));
  const std::string s = (dir_ / "s").string();
  ASSERT_EQ(eva("score " + inputs() + " --partition " + o1 + "/partition.json --out " + s), 0);
  EXPECT_EQ(read(dir_ / "o1" / "report.json"), read(dir_ / "s" / "report.json"));
}

TEST_F(CliTest, ScoreSingletons) {
  write("single.json", R"({"communities":[["a"],["b"],["c"],["d"],["e"],["f"]]})");
  ASSERT_EQ(eva("score " + inputs() + " --partition " + (dir_ / "single.json").string() +
                " --alpha 0.5 --out " + (dir_ / "s").string()),
            0);
  const json report = read_json(dir_ / "s" / "report.json");
  EXPECT_EQ(report["purity"], 1.0);
  EXPECT_LE(report["modularity"].get<double>(), 0.0);
  EXPECT_EQ(report["community_count"], 6);
}

TEST_F(CliTest, ExitCodesAndNoPartialOutput) {
  const std::string out = (dir_ / "bad").string();
  write("dangling.txt", "a b\nb zz\n");
  EXPECT_EQ(eva("detect --graph " + (dir_ / "dangling.txt").string() + " --attrs " +
                (dir_ / "attrs.csv").string() + " --out " + out),
            2);
  EXPECT_NE(read(dir_ / "stderr.txt").find(":2:"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "bad" / "partition.json"));

  write("cover.json", R"({"communities":[["a","b","c"],["d","e"]]})");
  EXPECT_EQ(eva("score " + inputs() + " --partition " + (dir_ / "cover.json").string() + " --out " +
                out),
            2);
  EXPECT_FALSE(fs::exists(dir_ / "bad" / "report.json"));

  write("empty.txt", "# nothing\n");
  EXPECT_EQ(eva("detect --graph " + (dir_ / "empty.txt").string() + " --attrs " +
                (dir_ / "attrs.csv").string() + " --out " + out),
            3);
  EXPECT_FALSE(fs::exists(dir_ / "bad" / "partition.json"));

  EXPECT_EQ(eva("detect " + inputs() + " --alpha 2 --out " + out), 2);
  EXPECT_NE(eva("frobnicate"), 0);
}

TEST_F(CliTest, SweepWritesOneRowPerCell) {
  ASSERT_EQ(eva("sweep " + inputs() + " --threads 1 --out " + (dir_ / "w").string()), 0);
  std::istringstream csv(read(dir_ / "w" / "sweep.csv"));
  std::string line;
  std::size_t rows = 0;
  std::getline(csv, line);
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 110u);

  ASSERT_EQ(eva("sweep " + inputs() + " --alphas 0,0.5 --runs 2 --format json --out " +
                (dir_ / "j").string()),
            0);
  const json doc = read_json(dir_ / "j" / "sweep.json");
  EXPECT_EQ(doc["rows"].size(), 4u);
}

TEST_F(CliTest, GenerateThenDetect) {
  const std::string g = (dir_ / "g").string();
  ASSERT_EQ(eva("generate --communities 3 --size 20 --p-in 0.4 --p-out 0.02 --seed 5 --out " + g), 0);
  for (const char* f : {"graph.txt", "attrs.csv", "planted.json", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "g" / f)) << f;
  }
  ASSERT_EQ(eva("detect --graph " + g + "/graph.txt --attrs " + g + "/attrs.csv --out " +
                (dir_ / "d").string()),
            0);
  ASSERT_EQ(eva("score --graph " + g + "/graph.txt --attrs " + g + "/attrs.csv --partition " + g +
                "/planted.json --out " + (dir_ / "p").string()),
            0);
  EXPECT_EQ(read_json(dir_ / "p" / "report.json")["community_count"], 3);
}

}  // namespace
