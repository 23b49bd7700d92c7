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

#include "eva/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "eva/metrics.hpp"

namespace eva {
namespace {

double purity_gain(const Partition& p, CommunityId target, double node_purity, double merged) {
  if (p.is_empty(target)) return 0.0;
  const double k = static_cast<double>(p.community_count());
  const double s = p.purity_sum();
  return (s - k * node_purity + (k + 1.0) * (merged - p.purity(target))) / (k * (k + 1.0));
}

double z_of(const AttributedGraph& g, const Partition& p, double alpha, double* q, double* pur) {
  *q = modularity(g, p);
  *pur = partition_purity(p);
  return alpha * *pur + (1.0 - alpha) * *q;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ValidationError("alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
  if (!(min_z_gain >= 0.0)) throw ValidationError("min_z_gain must be non-negative");
  if (max_levels == 0) throw ValidationError("max_levels must be positive");
}

double delta_modularity(const AttributedGraph& g, const Partition& p, NodeId v,
                        CommunityId target, double weight_to_target) {
  const double m = g.total_weight();
  return weight_to_target / m - p.degree_sum(target) * g.degree(v) / (2.0 * m * m);
}

double delta_purity(const AttributedGraph& g, const Partition& p, NodeId v, CommunityId target) {
  if (p.is_empty(target)) return 0.0;
  const double node_purity = community_purity(g.histogram(v), g.multiplicity(v));
  const double merged =
      merged_purity(p.labels(target), p.size(target), g.histogram(v), g.multiplicity(v));
  return purity_gain(p, target, node_purity, merged);
}

MoveResult move_nodes(const AttributedGraph& g, Partition& p, const OptimizerConfig& cfg,
                      std::mt19937_64& rng, const MoveHooks* hooks) {
  const std::size_t n = g.node_count();
  if (p.node_count() != n) throw ContractViolation("partition does not match graph");
  const double alpha = cfg.alpha;
  const bool want_purity = !cfg.zero_purity_terms && (alpha > 0.0 || hooks != nullptr);

  std::vector<double> node_purity;
  if (want_purity) {
    node_purity.resize(n);
    for (NodeId v = 0; v < n; ++v) {
      node_purity[v] = community_purity(g.histogram(v), g.multiplicity(v));
    }
  }

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::vector<double> link(p.slot_count(), 0.0);
  std::vector<char> seen(p.slot_count(), 0);
  std::vector<CommunityId> touched;

  auto evaluate = [&](NodeId v, CommunityId c) {
    Candidate cand{v, c, delta_modularity(g, p, v, c, link[c]), 0.0, 0.0};
    if (want_purity && !p.is_empty(c)) {
      const double merged =
          merged_purity(p.labels(c), p.size(c), g.histogram(v), g.multiplicity(v));
      cand.delta_purity = purity_gain(p, c, node_purity[v], merged);
    }
    cand.gain = alpha * cand.delta_purity + (1.0 - alpha) * cand.delta_modularity;
    if (hooks && hooks->on_candidate) hooks->on_candidate(g, p, cand);
    return cand.gain;
  };

  MoveResult result;
  std::size_t moved = 0;
  do {
    moved = 0;
    ++result.sweeps;
    if (cfg.shuffle_nodes) std::shuffle(order.begin(), order.end(), rng);
    p.refresh_purity_sum();
    for (std::size_t i = 0; i < n; ++i) {
      const NodeId v = order[i];
      // Visits are in random order; fetch the next nodes' data ahead of time.
      if (i + 6 < n) {
        g.prefetch_node(order[i + 6]);
        if (want_purity) __builtin_prefetch(&node_purity[order[i + 6]]);
      }
      if (i + 4 < n) g.prefetch_row(order[i + 4]);
      if (i + 2 < n) {
        for (const auto& nb : g.neighbors(order[i + 2])) p.prefetch_assignment(nb.node);
      }
      if (i + 1 < n) {
        p.prefetch(p.community_of(order[i + 1]));
        for (const auto& nb : g.neighbors(order[i + 1])) {
          const CommunityId c = p.community_of(nb.node);
          p.prefetch(c);
          __builtin_prefetch(&link[c]);
        }
      }
      const CommunityId former = p.community_of(v);
      for (const auto& nb : g.neighbors(v)) {
        const CommunityId c = p.community_of(nb.node);
        if (!seen[c]) {
          seen[c] = 1;
          touched.push_back(c);
        }
        link[c] += nb.weight;
      }
      p.remove_node(g, v, link[former]);

      CommunityId best = former;
      double best_gain = evaluate(v, former);
      std::uint64_t best_size = p.size(former);
      for (const CommunityId c : touched) {
        if (c == former) continue;
        const double gain = evaluate(v, c);
        const std::uint64_t size = p.size(c);
        bool take = false;
        if (gain > best_gain + kGainTolerance) {
          take = true;
        } else if (gain >= best_gain - kGainTolerance) {
          take = size > best_size || (size == best_size && best != former && c < best);
        }
        if (take) {
          best = c;
          best_gain = gain;
          best_size = size;
        }
      }

      p.insert_node(g, v, best, link[best]);
      for (const CommunityId c : touched) {
        link[c] = 0.0;
        seen[c] = 0;
      }
      touched.clear();
      if (best != former) {
        ++moved;
        if (hooks && hooks->on_move) hooks->on_move(g, p, v, former, best);
      }
    }
    result.moves += moved;
  } while (moved > 0);
  return result;
}

RunResult run(const AttributedGraph& g, const OptimizerConfig& cfg, const MoveHooks* hooks) {
  cfg.validate();
  if (g.node_count() == 0) throw ValidationError("cannot optimize an empty graph");
  if (!(g.total_weight() > 0.0)) {
    throw UndefinedValueError("graph has no edges; modularity is undefined");
  }

  std::mt19937_64 rng(cfg.rng_seed);
  RunResult result;
  result.assignment.resize(g.node_count());
  std::iota(result.assignment.begin(), result.assignment.end(), CommunityId{0});

  AttributedGraph coarse;
  const AttributedGraph* level_graph = &g;
  for (std::size_t level = 0; level < cfg.max_levels; ++level) {
    const auto start = std::chrono::steady_clock::now();
    Partition p = Partition::singletons(*level_graph);
    LevelRecord rec;
    rec.node_count = level_graph->node_count();
    double q = 0.0;
    double pur = 0.0;
    rec.z_before = z_of(*level_graph, p, cfg.alpha, &q, &pur);

    const MoveResult moved = move_nodes(*level_graph, p, cfg, rng, hooks);
    rec.move_count = moved.moves;
    rec.sweep_count = moved.sweeps;

    // Fresh aggregates, free of the drift accumulated by incremental updates.
    const Partition settled = Partition::from_assignment(*level_graph, p.assignment());
    rec.z_after = z_of(*level_graph, settled, cfg.alpha, &rec.modularity, &rec.purity);
    rec.community_count = settled.community_count();

    const auto labels = settled.assignment();
    for (CommunityId& c : result.assignment) c = labels[c];

    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.trace.levels.push_back(rec);

    if (rec.z_after - rec.z_before <= cfg.min_z_gain) break;
    AttributedGraph next = aggregate(*level_graph, labels);
    coarse = std::move(next);
    level_graph = &coarse;
  }
  result.assignment = compact_assignment(result.assignment);
  return result;
}

}  // namespace eva
