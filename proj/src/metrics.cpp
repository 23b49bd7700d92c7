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

#include "eva/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>

namespace eva {
namespace {

// Below this spread the purities are treated as identical.
constexpr double kDegenerateSpread = 1e-12;

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ValidationError("alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
}

double entropy(const std::unordered_map<CommunityId, std::size_t>& counts, double n) {
  double h = 0.0;
  for (const auto& [id, c] : counts) {
    const double q = static_cast<double>(c) / n;
    h -= q * std::log(q);
  }
  return h;
}

}  // namespace

double community_purity(const LabelHistogram& hist, std::uint64_t size) {
  if (size == 0) throw ContractViolation("purity of an empty community");
  double purity = 1.0;
  const double denom = static_cast<double>(size);
  for (std::size_t a = 0; a < hist.attribute_count(); ++a) {
    purity *= static_cast<double>(hist.max_count(a)) / denom;
  }
  return purity;
}

double merged_purity(const LabelHistogram& a, std::uint64_t size_a, const LabelHistogram& b,
                     std::uint64_t size_b) {
  const std::uint64_t size = size_a + size_b;
  if (size == 0) throw ContractViolation("purity of an empty community");
  double purity = 1.0;
  const double denom = static_cast<double>(size);
  for (std::size_t attr = 0; attr < a.attribute_count(); ++attr) {
    purity *= static_cast<double>(merged_max_count(a, b, attr)) / denom;
  }
  return purity;
}

double modularity(const AttributedGraph& g, const Partition& p) {
  if (p.node_count() != g.node_count()) {
    throw ContractViolation("partition does not cover the graph");
  }
  const double m = g.total_weight();
  if (!(m > 0.0)) throw UndefinedValueError("modularity is undefined on an edgeless graph");
  double q = 0.0;
  for (CommunityId c = 0; c < p.slot_count(); ++c) {
    if (p.is_empty(c)) continue;
    const double share = p.degree_sum(c) / (2.0 * m);
    q += p.internal_weight(c) / m - share * share;
  }
  return q;
}

std::vector<double> community_purities(const Partition& p) {
  std::vector<double> out;
  out.reserve(p.community_count());
  for (CommunityId c = 0; c < p.slot_count(); ++c) {
    if (!p.is_empty(c)) out.push_back(p.purity(c));
  }
  return out;
}

double partition_purity(const Partition& p) {
  if (p.community_count() == 0) throw ContractViolation("purity of an empty partition");
  double sum = 0.0;
  for (CommunityId c = 0; c < p.slot_count(); ++c) {
    if (!p.is_empty(c)) sum += p.purity(c);
  }
  return sum / static_cast<double>(p.community_count());
}

double null_purity(const LabelHistogram& global) {
  if (global.attribute_count() == 0) return 1.0;
  return community_purity(global, global.total(0));
}

ZTestResult z_test(const Partition& p, const LabelHistogram& global) {
  if (p.community_count() < 2) {
    throw ContractViolation("z-test needs at least two communities");
  }
  ZTestResult r;
  r.null_purity = null_purity(global);
  const std::vector<double> purities = community_purities(p);
  const double k = static_cast<double>(purities.size());
  double sum = 0.0;
  for (double x : purities) sum += x;
  r.mean = sum / k;
  double sq = 0.0;
  for (double x : purities) sq += (x - r.mean) * (x - r.mean);
  r.stddev = std::sqrt(sq / k);

  if (r.stddev <= kDegenerateSpread) {
    const double gap = r.null_purity - r.mean;
    if (std::abs(gap) <= kDegenerateSpread) {
      r.z = std::numeric_limits<double>::quiet_NaN();
      r.p_value = std::numeric_limits<double>::quiet_NaN();
      r.defined = false;
    } else if (gap < 0.0) {
      r.z = -std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
    } else {
      r.z = std::numeric_limits<double>::infinity();
      r.p_value = 1.0;
    }
    return r;
  }
  r.z = (r.null_purity - r.mean) / r.stddev;
  r.p_value = 0.5 * std::erfc(-r.z / std::sqrt(2.0));
  return r;
}

QualityReport objective(const AttributedGraph& g, const Partition& p, double alpha) {
  check_alpha(alpha);
  QualityReport r;
  r.alpha = alpha;
  r.modularity = modularity(g, p);
  r.purity = partition_purity(p);
  r.z_objective = alpha * r.purity + (1.0 - alpha) * r.modularity;
  r.community_count = p.community_count();
  r.per_community_purity = community_purities(p);
  return r;
}

QualityReport evaluate(const AttributedGraph& g, const Partition& p, double alpha) {
  QualityReport r = objective(g, p, alpha);
  if (p.community_count() >= 2) {
    const ZTestResult z = z_test(p, g.global_histogram());
    r.z_score = z.z;
    r.p_value = z.p_value;
    r.z_defined = z.defined;
  }
  return r;
}

double nmi(std::span<const CommunityId> a, std::span<const CommunityId> b) {
  if (a.size() != b.size()) throw ContractViolation("partitions cover different node sets");
  if (a.empty()) throw ContractViolation("nmi of empty partitions");
  const double n = static_cast<double>(a.size());
  std::unordered_map<CommunityId, std::size_t> ca;
  std::unordered_map<CommunityId, std::size_t> cb;
  std::map<std::pair<CommunityId, CommunityId>, std::size_t> joint;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++ca[a[i]];
    ++cb[b[i]];
    ++joint[{a[i], b[i]}];
  }
  const double ha = entropy(ca, n);
  const double hb = entropy(cb, n);
  if (ha + hb == 0.0) return 1.0;
  double mi = 0.0;
  for (const auto& [key, c] : joint) {
    const double pxy = static_cast<double>(c) / n;
    const double px = static_cast<double>(ca[key.first]) / n;
    const double py = static_cast<double>(cb[key.second]) / n;
    mi += pxy * std::log(pxy / (px * py));
  }
  return std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
}

}  // namespace eva
