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

#ifndef EVA_BENCH_HPP_
#define EVA_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "eva/graph.hpp"
#include "eva/optimizer.hpp"

namespace eva {

// Planted-partition attributed graph. Blocks are contiguous node ranges.
struct GeneratorConfig {
  std::vector<std::size_t> community_sizes{25, 25, 25, 25};
  double p_in = 0.3;
  double p_out = 0.01;
  std::size_t attribute_count = 1;
  std::size_t values_per_attribute = 4;
  // Probability that a node carries its block's designated value; otherwise
  // the value is uniform over the remaining ones.
  double label_homophily = 0.9;
  std::uint64_t seed = 1;

  void validate() const;
};

struct GeneratedGraph {
  AttributedGraph graph;
  std::vector<CommunityId> planted;
  // Set when no edge was drawn; the optimizer rejects such graphs.
  bool edgeless = false;
};

GeneratedGraph generate(const GeneratorConfig& cfg);

struct SweepOptions {
  std::vector<double> alphas;
  std::size_t runs = 10;
  // Run r of every alpha uses seed + r.
  std::uint64_t seed = 42;
  // alpha and rng_seed are overwritten per cell.
  OptimizerConfig optimizer;
  // 0 picks the hardware concurrency.
  std::size_t threads = 0;
};

struct SweepRow {
  double alpha = 0.0;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  bool ok = true;
  std::string error;
  std::size_t community_count = 0;
  double normalized_count = 0.0;
  double modularity = 0.0;
  double purity = 0.0;
  double z_objective = 0.0;
  double z_score = 0.0;
  double p_value = 0.0;
  bool z_defined = false;
  double runtime_ms = 0.0;
  OptimizationTrace trace;
};

struct Spread {
  double mean = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

struct SweepSummary {
  double alpha = 0.0;
  std::size_t successful_runs = 0;
  Spread community_count;
  Spread normalized_count;
  Spread modularity;
  Spread purity;
  Spread z_objective;
};

struct SweepResult {
  // Ordered by alpha (as requested), then run index.
  std::vector<SweepRow> rows;
  std::vector<SweepSummary> summary;
  // Mean community count at alpha = 0, the normalizer of normalized_count.
  double baseline_count = 0.0;
};

// 0.0, 0.1, ..., 1.0.
std::vector<double> default_alphas();

/// Runs `runs` seeded optimizations per alpha. Failing cells are recorded
/// with ok = false instead of aborting. Community counts are normalized by
/// the mean count at alpha = 0, which is computed from extra runs when 0 is
/// not among the requested alphas.
SweepResult sweep(const AttributedGraph& g, const SweepOptions& opts);

// Mean and linearly interpolated quartiles.
Spread spread_of(std::vector<double> values);

struct ScalingOptions {
  std::vector<std::size_t> sizes;
  double average_degree = 10.0;
  std::size_t community_size = 100;
  // Expected share of a node's degree that stays inside its block.
  double intra_fraction = 0.8;
  std::size_t values_per_attribute = 4;
  double label_homophily = 0.9;
  std::uint64_t seed = 7;
  OptimizerConfig optimizer;
};

struct ScalingRow {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double seconds = 0.0;
  OptimizationTrace trace;
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  // Least-squares slope of log(runtime) against log(n log n); NaN with fewer
  // than two rows.
  double exponent = 0.0;
};

ScalingReport scaling_probe(const ScalingOptions& opts);

}  // namespace eva

#endif  // EVA_BENCH_HPP_
