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

#ifndef EVA_OPTIMIZER_HPP_
#define EVA_OPTIMIZER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "eva/graph.hpp"
#include "eva/partition.hpp"

namespace eva {

struct OptimizerConfig {
  // Weight of purity in Z = alpha * P + (1 - alpha) * Q.
  double alpha = 0.5;
  std::uint64_t rng_seed = 42;
  // The level loop stops once a level improves Z by no more than this.
  double min_z_gain = 1e-7;
  std::size_t max_levels = 64;
  bool shuffle_nodes = true;
  // Evaluate every purity gain as 0. Only useful to check that the purity
  // bookkeeping has no effect at alpha = 0.
  bool zero_purity_terms = false;

  // Throws ValidationError on out-of-range fields.
  void validate() const;
};

// Gains within this distance are ties.
inline constexpr double kGainTolerance = 1e-14;

struct LevelRecord {
  std::size_t node_count = 0;
  std::size_t community_count = 0;
  std::size_t move_count = 0;
  std::size_t sweep_count = 0;
  double z_before = 0.0;
  double z_after = 0.0;
  double modularity = 0.0;
  double purity = 0.0;
  double seconds = 0.0;
};

struct OptimizationTrace {
  std::vector<LevelRecord> levels;
};

// One evaluated relocation of a detached node.
struct Candidate {
  NodeId node;
  CommunityId target;
  double delta_modularity;
  double delta_purity;
  double gain;
};

// Optional instrumentation for move_nodes(). `on_candidate` sees the
// partition with the node detached; `on_move` sees it after the node has been
// re-attached somewhere else.
struct MoveHooks {
  std::function<void(const AttributedGraph&, const Partition&, const Candidate&)> on_candidate;
  std::function<void(const AttributedGraph&, const Partition&, NodeId, CommunityId from,
                     CommunityId to)>
      on_move;
};

/// Modularity change of attaching the detached node `v` to `target`,
/// relative to `v` forming its own community:
///   w(v, target) / m - D_target * k_v / (2 m^2).
double delta_modularity(const AttributedGraph& g, const Partition& p, NodeId v,
                        CommunityId target, double weight_to_target);

/// Partition purity change of the same move. With K non-empty communities
/// besides v and S the sum of their purities,
///   dP = (S - P_c + P_{c+v}) / K - (S + P_v) / (K + 1),
/// evaluated in a form that is exactly 0 when all purities are equal.
double delta_purity(const AttributedGraph& g, const Partition& p, NodeId v, CommunityId target);

struct MoveResult {
  std::size_t moves = 0;
  std::size_t sweeps = 0;
};

/// Local moving phase. Sweeps the nodes (shuffled per sweep when enabled)
/// and relocates each to the neighboring community with the best combined
/// gain alpha * dP + (1 - alpha) * dQ, until a sweep moves nothing.
///
/// A node leaves its community only for a strictly better gain, or for an
/// equal gain when the destination holds more original nodes. Remaining ties
/// go to the larger destination, then to the smaller community id.
MoveResult move_nodes(const AttributedGraph& g, Partition& p, const OptimizerConfig& cfg,
                      std::mt19937_64& rng, const MoveHooks* hooks = nullptr);

struct RunResult {
  // Community of every input node, numbered by first appearance.
  std::vector<CommunityId> assignment;
  OptimizationTrace trace;
};

/// Multilevel optimization of Z: alternate move_nodes() and aggregate() from
/// the singleton partition until a level gains no more than min_z_gain.
/// Deterministic for a given graph and config.
///
/// Throws ValidationError for an empty graph or bad config and
/// UndefinedValueError for an edgeless graph.
RunResult run(const AttributedGraph& g, const OptimizerConfig& cfg,
              const MoveHooks* hooks = nullptr);

}  // namespace eva

#endif  // EVA_OPTIMIZER_HPP_
