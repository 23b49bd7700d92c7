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

#ifndef EVA_PARTITION_HPP_
#define EVA_PARTITION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "eva/graph.hpp"
#include "eva/label_histogram.hpp"
#include "eva/types.hpp"

namespace eva {

/// Crisp node -> community assignment over one graph level, with the
/// per-community aggregates that modularity and purity need:
/// intra-community weight (self-loops once), degree sum, original-node size,
/// label histogram and cached purity.
///
/// Community ids index fixed slots; a slot may be empty while the optimizer
/// is moving nodes around. community_count() only counts non-empty slots.
class Partition {
 public:
  Partition() = default;

  static Partition singletons(const AttributedGraph& g);
  // Ids are renumbered with compact_assignment().
  static Partition from_assignment(const AttributedGraph& g,
                                   std::span<const CommunityId> assignment);

  std::size_t node_count() const { return assignment_.size(); }
  CommunityId community_of(NodeId v) const { return assignment_[v]; }
  std::span<const CommunityId> assignment() const { return assignment_; }

  std::size_t slot_count() const { return slots_.size(); }
  std::size_t community_count() const { return community_count_; }
  bool is_empty(CommunityId c) const { return slots_[c].members == 0; }
  // Non-empty community ids in increasing order.
  std::vector<CommunityId> communities() const;

  double internal_weight(CommunityId c) const { return slots_[c].internal; }
  double degree_sum(CommunityId c) const { return slots_[c].degree; }
  std::uint64_t size(CommunityId c) const { return slots_[c].size; }
  std::size_t member_count(CommunityId c) const { return slots_[c].members; }
  const LabelHistogram& labels(CommunityId c) const { return slots_[c].labels; }
  double purity(CommunityId c) const { return slots_[c].purity; }
  void prefetch_assignment(NodeId v) const { __builtin_prefetch(&assignment_[v]); }
  void prefetch(CommunityId c) const {
    __builtin_prefetch(&slots_[c]);
    const char* base = reinterpret_cast<const char*>(&slots_[c]);
    __builtin_prefetch(base + 64);
    __builtin_prefetch(base + sizeof(Slot) - 1);
  }

  // Running sum of purities over non-empty communities.
  double purity_sum() const { return purity_sum_; }
  void refresh_purity_sum();

  // Detaches v from its community. `weight_to_own` is the summed weight of
  // edges from v to the other members of that community (self-loop
  // excluded). Afterwards community_of(v) == kNoCommunity.
  void remove_node(const AttributedGraph& g, NodeId v, double weight_to_own);
  // Attaches a detached node; `weight_to_target` as above.
  void insert_node(const AttributedGraph& g, NodeId v, CommunityId target,
                   double weight_to_target);

  // Dense renumbering by first appearance; see compact_assignment().
  std::vector<CommunityId> compacted() const { return compact_assignment(assignment_); }

  // Recomputes every aggregate from scratch and compares; throws
  // ContractViolation naming the first mismatch.
  void verify(const AttributedGraph& g, double tolerance = 1e-9) const;

 private:
  struct Slot {
    double internal = 0.0;
    double degree = 0.0;
    std::uint64_t size = 0;
    std::size_t members = 0;
    LabelHistogram labels;
    double purity = 0.0;
  };

  HugeVector<CommunityId> assignment_;
  HugeVector<Slot> slots_;
  std::size_t community_count_ = 0;
  double purity_sum_ = 0.0;
};

inline AttributedGraph aggregate(const AttributedGraph& g, const Partition& p) {
  return aggregate(g, p.assignment());
}

}  // namespace eva

#endif  // EVA_PARTITION_HPP_
