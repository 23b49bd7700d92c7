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

#include "eva/bench.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "eva/metrics.hpp"
#include "eva/partition.hpp"

namespace eva {
namespace {

TEST(GenerateTest, ShapeAndLabels) {
  GeneratorConfig cfg;
  cfg.community_sizes = {3, 5};
  cfg.attribute_count = 2;
  cfg.values_per_attribute = 3;
  const GeneratedGraph gg = generate(cfg);
  EXPECT_EQ(gg.graph.node_count(), 8u);
  EXPECT_EQ(gg.planted, (std::vector<CommunityId>{0, 0, 0, 1, 1, 1, 1, 1}));
  EXPECT_EQ(gg.graph.attribute_schema(), (std::vector<std::string>{"attr1", "attr2"}));
  EXPECT_EQ(gg.graph.node_name(7), "7");
  EXPECT_NO_THROW(gg.graph.validate());
}

TEST(GenerateTest, DeterministicPerSeed) {
  GeneratorConfig cfg;
  const GeneratedGraph a = generate(cfg);
  const GeneratedGraph b = generate(cfg);
  EXPECT_EQ(a.graph.edge_count(), b.graph.edge_count());
  for (NodeId v = 0; v < a.graph.node_count(); ++v) {
    ASSERT_EQ(a.graph.neighbors(v).size(), b.graph.neighbors(v).size());
    EXPECT_TRUE(std::equal(a.graph.labels(v).begin(), a.graph.labels(v).end(),
                           b.graph.labels(v).begin()));
  }
  cfg.seed = 2;
  EXPECT_NE(generate(cfg).graph.edge_count(), 0u);
}

TEST(GenerateTest, Corners) {
  GeneratorConfig cfg;
  cfg.p_in = 0.0;
  cfg.p_out = 0.0;
  EXPECT_TRUE(generate(cfg).edgeless);

  cfg.p_in = 1.0;
  cfg.community_sizes = {10, 10};
  const GeneratedGraph full = generate(cfg);
  EXPECT_EQ(full.graph.edge_count(), 2u * 45u);

  cfg.p_out = 1.0;
  EXPECT_EQ(generate(cfg).graph.edge_count(), 190u);

  cfg.label_homophily = 1.0;
  const GeneratedGraph pure = generate(cfg);
  EXPECT_EQ(partition_purity(Partition::from_assignment(pure.graph, pure.planted)), 1.0);

  GeneratorConfig bad;
  bad.p_in = 1.5;
  EXPECT_THROW(generate(bad), ValidationError);
  bad = {};
  bad.values_per_attribute = 0;
  EXPECT_THROW(generate(bad), ValidationError);
  bad = {};
  bad.community_sizes = {};
  EXPECT_THROW(generate(bad), ValidationError);
}

TEST(GenerateTest, EdgeDensityNearExpectation) {
  GeneratorConfig cfg;
  cfg.community_sizes = {200, 200};
  cfg.p_in = 0.05;
  cfg.p_out = 0.005;
  const GeneratedGraph gg = generate(cfg);
  const double expected = 2 * 0.05 * 200 * 199 / 2 + 0.005 * 200 * 200;
  EXPECT_NEAR(gg.graph.edge_count(), expected, 5 * std::sqrt(expected));
}

// Thresholds calibrated once against this implementation: at alpha 0.8 the
// purity term peels label outliers off their planted block, which costs NMI.
TEST(GenerateTest, PlantedStructureIsRecovered) {
  int strong = 0;
  int moderate = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GeneratorConfig gen;
    gen.seed = seed;
    const GeneratedGraph gg = generate(gen);
    OptimizerConfig cfg;
    cfg.rng_seed = seed;
    cfg.alpha = 0.5;
    if (nmi(run(gg.graph, cfg).assignment, gg.planted) >= 0.9) ++strong;
    cfg.alpha = 0.8;
    if (nmi(run(gg.graph, cfg).assignment, gg.planted) >= 0.8) ++moderate;
  }
  EXPECT_GE(strong, 9);
  EXPECT_GE(moderate, 9);
}

TEST(SweepTest, NormalizationAndShape) {
  const GeneratedGraph gg = generate({});
  SweepOptions opts;
  opts.alphas = {0.0, 1.0};
  opts.runs = 3;
  opts.threads = 1;
  const SweepResult r = sweep(gg.graph, opts);
  ASSERT_EQ(r.rows.size(), 6u);
  ASSERT_EQ(r.summary.size(), 2u);
  EXPECT_EQ(r.rows[0].seed, 42u);
  EXPECT_EQ(r.rows[2].seed, 44u);
  EXPECT_DOUBLE_EQ(r.summary[0].normalized_count.mean, 1.0);
  EXPECT_GE(r.summary[1].purity.mean, r.summary[0].purity.mean);
  for (const SweepRow& row : r.rows) {
    EXPECT_TRUE(row.ok);
    EXPECT_DOUBLE_EQ(row.normalized_count, row.community_count / r.baseline_count);
  }
}

TEST(SweepTest, BaselineComputedWhenZeroMissing) {
  const GeneratedGraph gg = generate({});
  SweepOptions with_zero;
  with_zero.alphas = {0.0};
  with_zero.runs = 2;
  SweepOptions without = with_zero;
  without.alphas = {0.5};
  EXPECT_DOUBLE_EQ(sweep(gg.graph, with_zero).baseline_count, sweep(gg.graph, without).baseline_count);
}

TEST(SweepTest, IdenticalAcrossThreadCounts) {
  const GeneratedGraph gg = generate({});
  SweepOptions opts;
  opts.alphas = default_alphas();
  opts.runs = 2;
  opts.threads = 1;
  const SweepResult a = sweep(gg.graph, opts);
  opts.threads = 4;
  const SweepResult b = sweep(gg.graph, opts);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].alpha, b.rows[i].alpha);
    EXPECT_EQ(a.rows[i].community_count, b.rows[i].community_count);
    EXPECT_EQ(a.rows[i].modularity, b.rows[i].modularity);
    EXPECT_EQ(a.rows[i].purity, b.rows[i].purity);
  }
}

TEST(SweepTest, FailingCellsAreRecorded) {
  const std::vector<NodeRecord> nodes{{"a", {"x"}}, {"b", {"y"}}};
  const AttributedGraph edgeless = build({}, nodes, {"t"});
  SweepOptions opts;
  opts.alphas = {0.5};
  opts.runs = 2;
  const SweepResult r = sweep(edgeless, opts);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_FALSE(r.rows[0].ok);
  EXPECT_FALSE(r.rows[0].error.empty());
  EXPECT_EQ(r.summary[0].successful_runs, 0u);
}

TEST(SpreadTest, Quartiles) {
  const Spread s = spread_of({4, 1, 3, 2, 5});
  EXPECT_DOUBLE_EQ(s.mean, 3.0);
  EXPECT_DOUBLE_EQ(s.q1, 2.0);
  EXPECT_DOUBLE_EQ(s.q3, 4.0);
  EXPECT_EQ(default_alphas().size(), 11u);
  EXPECT_DOUBLE_EQ(default_alphas()[3], 0.3);
}

TEST(ScalingTest, ReportsRowsAndExponent) {
  ScalingOptions opts;
  opts.sizes = {500};
  ScalingReport single = scaling_probe(opts);
  ASSERT_EQ(single.rows.size(), 1u);
  EXPECT_TRUE(std::isnan(single.exponent));
  EXPECT_NEAR(single.rows[0].edges, 2500.0, 300.0);
  opts.sizes = {500, 1000};
  EXPECT_TRUE(std::isfinite(scaling_probe(opts).exponent));
}

}  // namespace
}  // namespace eva
