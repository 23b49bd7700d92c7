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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace eva {
namespace {

bool valid_weight(double w) { return std::isfinite(w) && w >= 0.0; }

}  // namespace

std::optional<NodeId> AttributedGraph::find_node(std::string_view name) const {
  auto it = name_index_.find(std::string(name));
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t AttributedGraph::original_node_count() const {
  return std::accumulate(multiplicity_.begin(), multiplicity_.end(), std::uint64_t{0});
}

LabelHistogram AttributedGraph::global_histogram() const {
  LabelHistogram total(attribute_count());
  for (const auto& h : histograms_) total.merge(h);
  return total;
}

void AttributedGraph::finalize_degrees() {
  const std::size_t n = node_count();
  degrees_.assign(n, 0.0);
  double loops = 0.0;
  double edges = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    double k = 2.0 * self_loops_[v];
    for (const Neighbor& nb : neighbors(v)) {
      k += nb.weight;
      if (nb.node > v) edges += nb.weight;
    }
    degrees_[v] = k;
    loops += self_loops_[v];
  }
  total_weight_ = edges + loops;
}

void AttributedGraph::validate() const {
  const std::size_t n = node_count();
  const std::size_t attrs = attribute_count();
  if (offsets_.size() != n + 1 || degrees_.size() != n || multiplicity_.size() != n ||
      histograms_.size() != n) {
    throw ContractViolation("graph arrays have inconsistent lengths");
  }
  double recomputed = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    if (!valid_weight(self_loops_[v])) throw ContractViolation("invalid self-loop weight");
    recomputed += self_loops_[v];
    for (const Neighbor& nb : neighbors(v)) {
      if (!valid_weight(nb.weight)) throw ContractViolation("invalid edge weight");
      if (nb.node == v || nb.node >= n) throw ContractViolation("bad neighbor id");
      const auto back = neighbors(nb.node);
      auto it = std::lower_bound(back.begin(), back.end(), v,
                                 [](const Neighbor& x, NodeId id) { return x.node < id; });
      if (it == back.end() || it->node != v || it->weight != nb.weight) {
        throw ContractViolation("adjacency is not symmetric");
      }
      if (nb.node > v) recomputed += nb.weight;
    }
    if (histograms_[v].attribute_count() != attrs) {
      throw ContractViolation("histogram arity differs from schema");
    }
    for (std::size_t a = 0; a < attrs; ++a) {
      if (histograms_[v].total(a) != multiplicity_[v]) {
        throw ContractViolation("histogram does not cover node multiplicity");
      }
    }
  }
  const double scale = std::max(1.0, std::abs(recomputed));
  if (std::abs(recomputed - total_weight_) > 1e-9 * scale) {
    throw ContractViolation("total weight does not match edge sum");
  }
  if (!labels_.empty() && labels_.size() != n * attrs) {
    throw ContractViolation("label table has wrong size");
  }
}

AttributedGraph build(std::span<const EdgeRecord> edges, std::span<const NodeRecord> nodes,
                      std::vector<std::string> schema) {
  const std::size_t attrs = schema.size();
  std::vector<std::string> names;
  names.reserve(nodes.size());
  std::unordered_map<std::string, NodeId> index;
  index.reserve(nodes.size());
  for (const NodeRecord& rec : nodes) {
    if (rec.labels.size() != attrs) {
      throw ValidationError("node '" + rec.id + "' has " + std::to_string(rec.labels.size()) +
                            " attribute values, expected " + std::to_string(attrs));
    }
    if (!index.emplace(rec.id, static_cast<NodeId>(names.size())).second) {
      throw IngestionError("duplicate attribute record for node '" + rec.id + "'");
    }
    names.push_back(rec.id);
  }

  LabelDictionary dict;
  dict.values.resize(attrs);
  std::vector<LabelId> labels(nodes.size() * attrs);
  for (std::size_t a = 0; a < attrs; ++a) {
    auto& values = dict.values[a];
    for (const NodeRecord& rec : nodes) values.push_back(rec.labels[a]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      auto it = std::lower_bound(values.begin(), values.end(), nodes[v].labels[a]);
      labels[v * attrs + a] = static_cast<LabelId>(it - values.begin());
    }
  }
  dict.schema = std::move(schema);

  std::vector<IndexedEdge> indexed;
  indexed.reserve(edges.size());
  for (const EdgeRecord& e : edges) {
    auto lookup = [&](const std::string& id) {
      auto it = index.find(id);
      if (it == index.end()) {
        throw IngestionError("node '" + id + "' appears in an edge but has no attribute record");
      }
      return it->second;
    };
    const double w = e.weight.value_or(1.0);
    if (!valid_weight(w)) {
      throw ValidationError("edge '" + e.source + "' - '" + e.target +
                            "' has invalid weight " + std::to_string(w));
    }
    indexed.push_back({lookup(e.source), lookup(e.target), w});
  }
  return build_indexed(std::move(names), indexed, std::move(dict), std::move(labels));
}

AttributedGraph build_indexed(std::vector<std::string> names, std::span<const IndexedEdge> edges,
                              LabelDictionary dictionary, std::vector<LabelId> labels) {
  const std::size_t n = names.size();
  const std::size_t attrs = dictionary.schema.size();
  if (labels.size() != n * attrs) throw ContractViolation("label table has wrong size");
  if (dictionary.values.size() != attrs) throw ContractViolation("dictionary arity mismatch");

  AttributedGraph g;
  g.self_loops_.assign(n, 0.0);

  std::vector<IndexedEdge> sorted;
  sorted.reserve(edges.size());
  for (IndexedEdge e : edges) {
    if (e.u >= n || e.v >= n) throw ContractViolation("edge endpoint out of range");
    if (!valid_weight(e.weight)) throw ValidationError("invalid edge weight");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v) {
      g.self_loops_[e.u] += e.weight;
    } else {
      sorted.push_back(e);
    }
  }
  std::sort(sorted.begin(), sorted.end(), [](const IndexedEdge& a, const IndexedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  std::vector<IndexedEdge> merged;
  merged.reserve(sorted.size());
  for (const IndexedEdge& e : sorted) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
      merged.back().weight += e.weight;
    } else {
      merged.push_back(e);
    }
  }

  std::vector<std::size_t> counts(n + 1, 0);
  for (const IndexedEdge& e : merged) {
    ++counts[e.u + 1];
    ++counts[e.v + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  g.offsets_.assign(counts.begin(), counts.end());
  g.adjacency_.resize(2 * merged.size());
  std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
  for (const IndexedEdge& e : merged) {
    g.adjacency_[cursor[e.u]++] = {e.v, e.weight};
    g.adjacency_[cursor[e.v]++] = {e.u, e.weight};
  }
  for (NodeId v = 0; v < n; ++v) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]),
              [](const auto& a, const auto& b) { return a.node < b.node; });
  }
  g.finalize_degrees();

  g.multiplicity_.assign(n, 1);
  g.histograms_.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    g.histograms_.push_back(
        LabelHistogram::of_node(std::span<const LabelId>(labels.data() + v * attrs, attrs)));
  }
  g.labels_ = std::move(labels);
  g.name_index_.reserve(n);
  for (NodeId v = 0; v < n; ++v) g.name_index_.emplace(names[v], v);
  g.names_ = std::move(names);
  g.dictionary_ = std::make_shared<const LabelDictionary>(std::move(dictionary));
  return g;
}

std::vector<CommunityId> compact_assignment(std::span<const CommunityId> assignment) {
  std::vector<CommunityId> out(assignment.size());
  std::unordered_map<CommunityId, CommunityId> remap;
  remap.reserve(assignment.size());
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    if (assignment[v] == kNoCommunity) {
      throw ContractViolation("node " + std::to_string(v) + " has no community");
    }
    auto [it, inserted] = remap.emplace(assignment[v], static_cast<CommunityId>(remap.size()));
    out[v] = it->second;
  }
  return out;
}

AttributedGraph aggregate(const AttributedGraph& g, std::span<const CommunityId> assignment) {
  const std::size_t n = g.node_count();
  if (assignment.size() != n) {
    throw ContractViolation("partition covers " + std::to_string(assignment.size()) +
                            " nodes, graph has " + std::to_string(n));
  }
  const std::vector<CommunityId> community = compact_assignment(assignment);
  const std::size_t k =
      n == 0 ? 0 : static_cast<std::size_t>(*std::max_element(community.begin(), community.end())) + 1;

  // Members grouped by community, in node order.
  std::vector<std::size_t> start(k + 1, 0);
  for (CommunityId c : community) ++start[c + 1];
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<NodeId> members(n);
  {
    std::vector<std::size_t> cursor(start.begin(), start.end() - 1);
    for (NodeId v = 0; v < n; ++v) members[cursor[community[v]]++] = v;
  }

  AttributedGraph coarse;
  coarse.dictionary_ = g.dictionary_;
  coarse.self_loops_.assign(k, 0.0);
  coarse.multiplicity_.assign(k, 0);
  coarse.histograms_.assign(k, LabelHistogram(g.attribute_count()));
  coarse.offsets_.assign(k + 1, 0);

  // Only pairs c < d are accumulated; the mirror copies the same double so
  // the coarse adjacency is bit-symmetric.
  struct Link {
    CommunityId from, to;
    double weight;
  };
  std::vector<Link> links;
  std::vector<double> scratch(k, 0.0);
  std::vector<char> seen(k, 0);
  std::vector<CommunityId> touched;
  for (CommunityId c = 0; c < k; ++c) {
    double intra = 0.0;
    double loops = 0.0;
    for (std::size_t i = start[c]; i < start[c + 1]; ++i) {
      const NodeId u = members[i];
      loops += g.self_loop(u);
      coarse.multiplicity_[c] += g.multiplicity(u);
      coarse.histograms_[c].merge(g.histogram(u));
      for (const auto& nb : g.neighbors(u)) {
        const CommunityId d = community[nb.node];
        if (d == c) {
          intra += nb.weight;
        } else if (d > c) {
          if (!seen[d]) {
            seen[d] = 1;
            touched.push_back(d);
          }
          scratch[d] += nb.weight;
        }
      }
    }
    // Each intra-community edge was seen from both endpoints.
    coarse.self_loops_[c] = loops + intra / 2.0;
    std::sort(touched.begin(), touched.end());
    for (CommunityId d : touched) {
      links.push_back({c, d, scratch[d]});
      ++coarse.offsets_[c + 1];
      ++coarse.offsets_[d + 1];
      scratch[d] = 0.0;
      seen[d] = 0;
    }
    touched.clear();
  }
  std::partial_sum(coarse.offsets_.begin(), coarse.offsets_.end(), coarse.offsets_.begin());
  coarse.adjacency_.resize(coarse.offsets_[k]);
  // Links arrive sorted by (from, to), so each row fills in ascending order.
  std::vector<std::size_t> cursor(coarse.offsets_.begin(), coarse.offsets_.end() - 1);
  for (const Link& l : links) {
    coarse.adjacency_[cursor[l.from]++] = {l.to, l.weight};
    coarse.adjacency_[cursor[l.to]++] = {l.from, l.weight};
  }
  coarse.finalize_degrees();
  // Same quantity by construction; keep it bit-identical.
  coarse.total_weight_ = g.total_weight();
  return coarse;
}

}  // namespace eva
