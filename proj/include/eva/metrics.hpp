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

#ifndef EVA_METRICS_HPP_
#define EVA_METRICS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "eva/graph.hpp"
#include "eva/label_histogram.hpp"
#include "eva/partition.hpp"

namespace eva {

/// Purity of one community: the product over attributes of the modal value's
/// relative frequency. `size` is the number of original nodes represented.
double community_purity(const LabelHistogram& hist, std::uint64_t size);

// community_purity() of the union of two disjoint node sets.
double merged_purity(const LabelHistogram& a, std::uint64_t size_a, const LabelHistogram& b,
                     std::uint64_t size_b);

/// Newman modularity from community aggregates,
///   Q = sum_c [ W_in(c) / m - (D_c / 2m)^2 ].
/// Throws UndefinedValueError when the graph has no edge weight.
double modularity(const AttributedGraph& g, const Partition& p);

// Unweighted mean of the community purities.
double partition_purity(const Partition& p);

// Purities of the non-empty communities, in community id order.
std::vector<double> community_purities(const Partition& p);

// Null-model purity P0: product over attributes of the global modal value's
// relative frequency.
double null_purity(const LabelHistogram& global);

struct ZTestResult {
  double null_purity = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  double z = 0.0;
  double p_value = 0.0;
  // False when the community purities have zero spread and equal P0.
  bool defined = true;
};

/// z = (P0 - mean purity) / stddev of the community purities (population
/// form), with a lower-tail normal p-value. Zero spread yields z = -inf / +inf
/// with p = 0 / 1, or an undefined result when P0 equals the mean.
/// Requires at least two communities.
ZTestResult z_test(const Partition& p, const LabelHistogram& global);

struct QualityReport {
  double modularity = 0.0;
  double purity = 0.0;
  double z_objective = 0.0;
  double alpha = 0.0;
  std::size_t community_count = 0;
  std::vector<double> per_community_purity;
  double z_score = 0.0;
  double p_value = 0.0;
  bool z_defined = false;
};

// Z = alpha * P + (1 - alpha) * Q. Leaves the z-test fields unset.
QualityReport objective(const AttributedGraph& g, const Partition& p, double alpha);

// objective() plus the z-test when the partition has at least two
// communities.
QualityReport evaluate(const AttributedGraph& g, const Partition& p, double alpha);

/// Normalized mutual information, 2 I(X;Y) / (H(X) + H(Y)). Two partitions
/// that both put everything in one community score 1.
double nmi(std::span<const CommunityId> a, std::span<const CommunityId> b);
inline double nmi(const Partition& a, const Partition& b) {
  return nmi(a.assignment(), b.assignment());
}

}  // namespace eva

#endif  // EVA_METRICS_HPP_
