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

#include "eva/graph.hpp"

#include <random>

#include "gtest/gtest.h"
#include "eva/metrics.hpp"
#include "eva/partition.hpp"
#include "oracles.hpp"

namespace eva {
namespace {

using testing::random_assignment;
using testing::random_graph;
using testing::triangle_pair;

std::vector<NodeRecord> labeled(std::initializer_list<const char*> ids) {
  std::vector<NodeRecord> out;
  for (const char* id : ids) out.push_back({id, {"x"}});
  return out;
}

TEST(BuildTest, DuplicateEdgesMerge) {
  const std::vector<EdgeRecord> edges{{"a", "b", {}}, {"b", "a", {}}};
  const AttributedGraph g = build(edges, labeled({"a", "b"}), {"t"});
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(g.neighbors(0)[0].weight, 2.0);
  EXPECT_DOUBLE_EQ(g.total_weight(), 2.0);
  EXPECT_NO_THROW(g.validate());
}

TEST(BuildTest, NoEdgesGivesIsolatedNodes) {
  const AttributedGraph g = build({}, labeled({"a", "b", "c"}), {"t"});
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(g.total_weight(), 0.0);
}

TEST(BuildTest, TriangleDegrees) {
  const std::vector<EdgeRecord> edges{{"a", "b", {}}, {"b", "c", {}}, {"c", "a", {}}};
  const AttributedGraph g = build(edges, labeled({"a", "b", "c"}), {"t"});
  for (NodeId v = 0; v < 3; ++v) EXPECT_DOUBLE_EQ(g.degree(v), 2.0);
  EXPECT_DOUBLE_EQ(g.total_weight(), 3.0);
  EXPECT_EQ(g.node_name(*g.find_node("c")), "c");
  EXPECT_EQ(g.multiplicity(0), 1u);
}

TEST(BuildTest, SelfLoopCountsTwiceInDegree) {
  const std::vector<EdgeRecord> edges{{"a", "a", 1.5}, {"a", "b", {}}};
  const AttributedGraph g = build(edges, labeled({"a", "b"}), {"t"});
  EXPECT_DOUBLE_EQ(g.self_loop(0), 1.5);
  EXPECT_DOUBLE_EQ(g.degree(0), 4.0);
  EXPECT_DOUBLE_EQ(g.total_weight(), 2.5);
}

TEST(BuildTest, LabelsAreInternedInLexicographicOrder) {
  const std::vector<NodeRecord> nodes{{"a", {"zeta"}}, {"b", {"alpha"}}, {"c", {"mid"}}};
  const AttributedGraph g = build({}, nodes, {"t"});
  EXPECT_EQ(g.label_name(0, g.labels(0)[0]), "zeta");
  EXPECT_EQ(g.labels(1)[0], 0u);
  EXPECT_EQ(g.labels(0)[0], 2u);
}

TEST(BuildTest, MissingAttributeRecordNamesTheNode) {
  const std::vector<EdgeRecord> edges{{"a", "ghost", {}}};
  try {
    build(edges, labeled({"a"}), {"t"});
    FAIL() << "expected IngestionError";
  } catch (const IngestionError& e) {
    EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos);
  }
}

TEST(BuildTest, RejectsNegativeWeightAndWrongArity) {
  const std::vector<EdgeRecord> negative{{"a", "b", -1.0}};
  EXPECT_THROW(build(negative, labeled({"a", "b"}), {"t"}), ValidationError);
  const std::vector<NodeRecord> bad{{"a", {"x", "y"}}};
  EXPECT_THROW(build({}, bad, {"t"}), ValidationError);
  EXPECT_THROW(build({}, labeled({"a", "a"}), {"t"}), IngestionError);
}

TEST(AggregateTest, BridgedTrianglesCollapseToTwoSuperNodes) {
  const AttributedGraph g = triangle_pair(true);
  const std::vector<CommunityId> parts{0, 0, 0, 1, 1, 1};
  const AttributedGraph coarse = aggregate(g, parts);
  ASSERT_EQ(coarse.node_count(), 2u);
  EXPECT_DOUBLE_EQ(coarse.self_loop(0), 3.0);
  EXPECT_DOUBLE_EQ(coarse.self_loop(1), 3.0);
  ASSERT_EQ(coarse.neighbors(0).size(), 1u);
  EXPECT_DOUBLE_EQ(coarse.neighbors(0)[0].weight, 1.0);
  EXPECT_DOUBLE_EQ(coarse.total_weight(), 7.0);
  EXPECT_EQ(coarse.multiplicity(0), 3u);
  EXPECT_EQ(coarse.histogram(1).max_count(0), 3u);
  EXPECT_FALSE(coarse.is_finest());
  EXPECT_NO_THROW(coarse.validate());
}

TEST(AggregateTest, SingletonPartitionIsIdentity) {
  const AttributedGraph g = triangle_pair(true);
  std::vector<CommunityId> ids(g.node_count());
  for (NodeId v = 0; v < ids.size(); ++v) ids[v] = v;
  const AttributedGraph coarse = aggregate(g, ids);
  ASSERT_EQ(coarse.node_count(), g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    EXPECT_EQ(coarse.multiplicity(v), 1u);
    ASSERT_EQ(coarse.neighbors(v).size(), g.neighbors(v).size());
    for (std::size_t i = 0; i < g.neighbors(v).size(); ++i) {
      EXPECT_EQ(coarse.neighbors(v)[i].node, g.neighbors(v)[i].node);
      EXPECT_EQ(coarse.neighbors(v)[i].weight, g.neighbors(v)[i].weight);
    }
  }
}

TEST(AggregateTest, FullCollapseKeepsAllWeightAsSelfLoop) {
  const AttributedGraph g = triangle_pair(true);
  const AttributedGraph coarse = aggregate(g, std::vector<CommunityId>(6, 9));
  ASSERT_EQ(coarse.node_count(), 1u);
  EXPECT_DOUBLE_EQ(coarse.self_loop(0), g.total_weight());
  EXPECT_EQ(coarse.multiplicity(0), 6u);
}

TEST(AggregateTest, RejectsPartitionOfWrongSize) {
  const AttributedGraph g = triangle_pair(false);
  EXPECT_THROW(aggregate(g, std::vector<CommunityId>{0, 1}), ContractViolation);
}

// Weight, modularity and label mass survive coarsening; a second singleton
// coarsening changes nothing.
TEST(AggregateTest, PreservesWeightModularityAndLabelsOnRandomGraphs) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    testing::RandomGraphSpec spec;
    spec.nodes = 5 + trial % 25;
    spec.attributes = 1 + trial % 3;
    spec.random_weights = trial % 2 == 0;
    spec.self_loops = trial % 5 == 0;
    const AttributedGraph g = random_graph(rng, spec);
    const auto parts = random_assignment(rng, g.node_count(), 1 + trial % 7);
    const AttributedGraph coarse = aggregate(g, parts);
    EXPECT_NO_THROW(coarse.validate());
    EXPECT_EQ(coarse.total_weight(), g.total_weight());
    if (!spec.random_weights) {
      double recomputed = 0.0;
      for (NodeId v = 0; v < coarse.node_count(); ++v) {
        recomputed += coarse.self_loop(v);
        for (const auto& nb : coarse.neighbors(v)) {
          if (nb.node > v) recomputed += nb.weight;
        }
      }
      EXPECT_EQ(recomputed, g.total_weight());
    }
    EXPECT_EQ(coarse.original_node_count(), g.node_count());
    EXPECT_EQ(coarse.global_histogram(), g.global_histogram());

    const double fine_q = modularity(g, Partition::from_assignment(g, parts));
    const double coarse_q = modularity(coarse, Partition::singletons(coarse));
    EXPECT_NEAR(fine_q, coarse_q, 1e-9);
    EXPECT_NEAR(partition_purity(Partition::from_assignment(g, parts)),
                partition_purity(Partition::singletons(coarse)), 1e-12);

    std::vector<CommunityId> ids(coarse.node_count());
    for (NodeId v = 0; v < ids.size(); ++v) ids[v] = v;
    const AttributedGraph again = aggregate(coarse, ids);
    ASSERT_EQ(again.node_count(), coarse.node_count());
    for (NodeId v = 0; v < coarse.node_count(); ++v) {
      EXPECT_EQ(again.self_loop(v), coarse.self_loop(v));
      EXPECT_EQ(again.histogram(v), coarse.histogram(v));
      ASSERT_EQ(again.neighbors(v).size(), coarse.neighbors(v).size());
    }
  }
}

TEST(CompactAssignmentTest, NumbersByFirstAppearance) {
  const std::vector<CommunityId> raw{7, 3, 7, 100, 3};
  EXPECT_EQ(compact_assignment(raw), (std::vector<CommunityId>{0, 1, 0, 2, 1}));
  EXPECT_THROW(compact_assignment(std::vector<CommunityId>{0, kNoCommunity}), ContractViolation);
}

TEST(HugePageAllocatorTest, LargeAndSmallBlocksRoundTrip) {
  HugeVector<double> big(HugePageAllocator<double>::kThreshold / sizeof(double) + 7, 1.5);
  HugeVector<double> small(10, 2.5);
  EXPECT_EQ(reinterpret_cast<std::uintptr_t>(big.data()) % HugePageAllocator<double>::kHugePage, 0u);
  big.back() = 3.0;
  EXPECT_EQ(big.front() + big.back() + small[9], 7.0);
  big.resize(3);
  big.shrink_to_fit();
  EXPECT_EQ(big[2], 1.5);
}

}  // namespace
}  // namespace eva
