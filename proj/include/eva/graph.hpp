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

#ifndef EVA_GRAPH_HPP_
#define EVA_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "eva/huge_page_allocator.hpp"
#include "eva/label_histogram.hpp"
#include "eva/types.hpp"

namespace eva {

// An input edge between two named nodes. A missing weight means 1.0.
struct EdgeRecord {
  std::string source;
  std::string target;
  std::optional<double> weight;
};

// Categorical attribute values of one named node, ordered as the schema.
struct NodeRecord {
  std::string id;
  std::vector<std::string> labels;
};

// Attribute names plus, per attribute, the interned value strings. Value ids
// follow lexicographic order of the strings.
struct LabelDictionary {
  std::vector<std::string> schema;
  std::vector<std::vector<std::string>> values;
};

struct IndexedEdge {
  NodeId u;
  NodeId v;
  double weight;
};

/// Weighted undirected graph whose nodes carry categorical attribute
/// profiles. Immutable once built; coarser graphs come from aggregate().
///
/// Self-loops are stored apart from the adjacency lists. A self-loop of
/// weight w adds w to total_weight() and 2w to the node's degree, which keeps
/// modularity invariant under aggregation.
class AttributedGraph {
 public:
  struct Neighbor {
    NodeId node;
    double weight;
  };

  AttributedGraph() = default;

  std::size_t node_count() const { return self_loops_.size(); }
  // Number of undirected non-loop edges.
  std::size_t edge_count() const { return adjacency_.size() / 2; }
  std::span<const Neighbor> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  double self_loop(NodeId v) const { return self_loops_[v]; }
  double degree(NodeId v) const { return degrees_[v]; }
  // m: every undirected edge once plus self-loop weights.
  double total_weight() const { return total_weight_; }

  const LabelDictionary& dictionary() const { return *dictionary_; }
  const std::vector<std::string>& attribute_schema() const { return dictionary_->schema; }
  std::size_t attribute_count() const { return dictionary_->schema.size(); }
  const std::string& label_name(std::size_t attr, LabelId value) const {
    return dictionary_->values[attr][value];
  }

  // True for graphs produced by build(); coarse graphs have no per-node
  // labels or names, only histograms.
  bool is_finest() const { return !labels_.empty() || node_count() == 0; }
  std::span<const LabelId> labels(NodeId v) const {
    return {labels_.data() + static_cast<std::size_t>(v) * attribute_count(), attribute_count()};
  }
  const std::string& node_name(NodeId v) const { return names_[v]; }
  std::optional<NodeId> find_node(std::string_view name) const;

  std::uint64_t multiplicity(NodeId v) const { return multiplicity_[v]; }
  const LabelHistogram& histogram(NodeId v) const { return histograms_[v]; }

  // Cache hints for a node that is about to be visited: per-node scalars
  // first, then its adjacency row (which needs the offsets to be resident).
  void prefetch_node(NodeId v) const {
    __builtin_prefetch(&offsets_[v]);
    __builtin_prefetch(&self_loops_[v]);
    __builtin_prefetch(&degrees_[v]);
    __builtin_prefetch(&multiplicity_[v]);
    __builtin_prefetch(&histograms_[v]);
    __builtin_prefetch(reinterpret_cast<const char*>(&histograms_[v]) + 64);
  }
  void prefetch_row(NodeId v) const { __builtin_prefetch(adjacency_.data() + offsets_[v]); }

  std::uint64_t original_node_count() const;
  // Label counts over every original node.
  LabelHistogram global_histogram() const;

  // Re-checks the structural invariants; throws ContractViolation on failure.
  void validate() const;

 private:
  friend AttributedGraph build_indexed(std::vector<std::string>, std::span<const IndexedEdge>,
                                       LabelDictionary, std::vector<LabelId>);
  friend AttributedGraph aggregate(const AttributedGraph&, std::span<const CommunityId>);

  void finalize_degrees();

  HugeVector<std::size_t> offsets_{0};
  HugeVector<Neighbor> adjacency_;
  HugeVector<double> self_loops_;
  HugeVector<double> degrees_;
  double total_weight_ = 0.0;

  std::shared_ptr<const LabelDictionary> dictionary_ = std::make_shared<LabelDictionary>();
  std::vector<LabelId> labels_;
  HugeVector<std::uint64_t> multiplicity_;
  HugeVector<LabelHistogram> histograms_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> name_index_;
};

/// Builds a graph from named edges and attribute records. Node ids are
/// compacted to 0..n-1 in the order of `nodes`; duplicate undirected edges
/// are merged by summing their weights.
///
/// Throws IngestionError for an edge endpoint without an attribute record or
/// a duplicated record, ValidationError for negative or non-finite weights
/// and records whose arity differs from the schema.
AttributedGraph build(std::span<const EdgeRecord> edges, std::span<const NodeRecord> nodes,
                      std::vector<std::string> schema);

// Same as build() for callers that already hold dense ids and interned labels
// (`labels` is row-major, node_count x attribute_count).
AttributedGraph build_indexed(std::vector<std::string> names, std::span<const IndexedEdge> edges,
                              LabelDictionary dictionary, std::vector<LabelId> labels);

/// Collapses every community into one super-node. Super-node ids follow the
/// first appearance of each community when scanning nodes in id order (the
/// same numbering as compact_assignment()).
AttributedGraph aggregate(const AttributedGraph& g, std::span<const CommunityId> assignment);

// Renumbers community ids densely by first appearance in node order.
std::vector<CommunityId> compact_assignment(std::span<const CommunityId> assignment);

}  // namespace eva

#endif  // EVA_GRAPH_HPP_
