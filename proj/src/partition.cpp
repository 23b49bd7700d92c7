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

#include "eva/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eva/metrics.hpp"

namespace eva {

Partition Partition::singletons(const AttributedGraph& g) {
  std::vector<CommunityId> ids(g.node_count());
  for (NodeId v = 0; v < ids.size(); ++v) ids[v] = v;
  return from_assignment(g, ids);
}

Partition Partition::from_assignment(const AttributedGraph& g,
                                     std::span<const CommunityId> assignment) {
  if (assignment.size() != g.node_count()) {
    throw ContractViolation("partition covers " + std::to_string(assignment.size()) +
                            " nodes, graph has " + std::to_string(g.node_count()));
  }
  Partition p;
  const std::vector<CommunityId> compact = compact_assignment(assignment);
  p.assignment_.assign(compact.begin(), compact.end());
  const std::size_t k =
      p.assignment_.empty()
          ? 0
          : static_cast<std::size_t>(*std::max_element(p.assignment_.begin(), p.assignment_.end())) + 1;
  p.slots_.resize(k);
  for (Slot& s : p.slots_) s.labels = LabelHistogram(g.attribute_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    Slot& s = p.slots_[p.assignment_[v]];
    s.internal += g.self_loop(v);
    for (const auto& nb : g.neighbors(v)) {
      if (nb.node > v && p.assignment_[nb.node] == p.assignment_[v]) s.internal += nb.weight;
    }
    s.degree += g.degree(v);
    s.size += g.multiplicity(v);
    s.members += 1;
    s.labels.merge(g.histogram(v));
  }
  p.community_count_ = k;
  for (Slot& s : p.slots_) s.purity = community_purity(s.labels, s.size);
  p.refresh_purity_sum();
  return p;
}

std::vector<CommunityId> Partition::communities() const {
  std::vector<CommunityId> out;
  out.reserve(community_count_);
  for (CommunityId c = 0; c < slots_.size(); ++c) {
    if (slots_[c].members > 0) out.push_back(c);
  }
  return out;
}

void Partition::refresh_purity_sum() {
  double sum = 0.0;
  for (const Slot& s : slots_) {
    if (s.members > 0) sum += s.purity;
  }
  purity_sum_ = sum;
}

void Partition::remove_node(const AttributedGraph& g, NodeId v, double weight_to_own) {
  const CommunityId c = assignment_[v];
  if (c == kNoCommunity) throw ContractViolation("node is already detached");
  Slot& s = slots_[c];
  purity_sum_ -= s.purity;
  s.members -= 1;
  if (s.members == 0) {
    s.internal = 0.0;
    s.degree = 0.0;
    s.size = 0;
    s.labels = LabelHistogram(g.attribute_count());
    s.purity = 0.0;
    --community_count_;
  } else {
    s.internal -= weight_to_own + g.self_loop(v);
    s.degree -= g.degree(v);
    s.size -= g.multiplicity(v);
    s.labels.subtract(g.histogram(v));
    s.purity = community_purity(s.labels, s.size);
    purity_sum_ += s.purity;
  }
  assignment_[v] = kNoCommunity;
}

void Partition::insert_node(const AttributedGraph& g, NodeId v, CommunityId target,
                            double weight_to_target) {
  if (assignment_[v] != kNoCommunity) throw ContractViolation("node is still attached");
  if (target >= slots_.size()) throw ContractViolation("unknown community id");
  Slot& s = slots_[target];
  if (s.members == 0) {
    ++community_count_;
  } else {
    purity_sum_ -= s.purity;
  }
  s.members += 1;
  s.internal += weight_to_target + g.self_loop(v);
  s.degree += g.degree(v);
  s.size += g.multiplicity(v);
  s.labels.merge(g.histogram(v));
  s.purity = community_purity(s.labels, s.size);
  purity_sum_ += s.purity;
  assignment_[v] = target;
}

void Partition::verify(const AttributedGraph& g, double tolerance) const {
  if (assignment_.size() != g.node_count()) throw ContractViolation("node count mismatch");
  std::vector<Slot> fresh(slots_.size());
  for (Slot& s : fresh) s.labels = LabelHistogram(g.attribute_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const CommunityId c = assignment_[v];
    if (c == kNoCommunity || c >= slots_.size()) {
      throw ContractViolation("node " + std::to_string(v) + " is not assigned");
    }
    Slot& s = fresh[c];
    s.internal += g.self_loop(v);
    for (const auto& nb : g.neighbors(v)) {
      if (nb.node > v && assignment_[nb.node] == c) s.internal += nb.weight;
    }
    s.degree += g.degree(v);
    s.size += g.multiplicity(v);
    s.members += 1;
    s.labels.merge(g.histogram(v));
  }
  auto close = [tolerance](double a, double b) {
    return std::abs(a - b) <= tolerance * std::max(1.0, std::max(std::abs(a), std::abs(b)));
  };
  std::size_t nonempty = 0;
  double sum = 0.0;
  for (CommunityId c = 0; c < slots_.size(); ++c) {
    const Slot& a = slots_[c];
    const Slot& b = fresh[c];
    const std::string where = "community " + std::to_string(c) + ": ";
    if (a.members != b.members) throw ContractViolation(where + "member count mismatch");
    if (a.size != b.size) throw ContractViolation(where + "size mismatch");
    if (!close(a.internal, b.internal)) throw ContractViolation(where + "internal weight mismatch");
    if (!close(a.degree, b.degree)) throw ContractViolation(where + "degree sum mismatch");
    if (b.members == 0) continue;
    if (!(a.labels == b.labels)) throw ContractViolation(where + "label histogram mismatch");
    const double purity = community_purity(b.labels, b.size);
    if (!close(a.purity, purity)) throw ContractViolation(where + "purity mismatch");
    ++nonempty;
    sum += purity;
  }
  if (nonempty != community_count_) throw ContractViolation("community count mismatch");
  if (!close(purity_sum_, sum)) throw ContractViolation("purity sum mismatch");
}

}  // namespace eva
