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

#include "eva/label_histogram.hpp"

#include <algorithm>
#include <string>

namespace eva {
namespace {

template <typename Bins>
auto lower_bound_value(Bins& bins, LabelId value) {
  return std::lower_bound(bins.begin(), bins.end(), value,
                          [](const LabelHistogram::Bin& b, LabelId v) { return b.value < v; });
}

auto lower_bound_value(const std::span<const LabelHistogram::Bin> bins, LabelId value) {
  return std::lower_bound(bins.begin(), bins.end(), value,
                          [](const LabelHistogram::Bin& b, LabelId v) { return b.value < v; });
}

}  // namespace

LabelHistogram LabelHistogram::of_node(std::span<const LabelId> labels) {
  LabelHistogram h(labels.size());
  for (std::size_t a = 0; a < labels.size(); ++a) h.add(a, labels[a], 1);
  return h;
}

void LabelHistogram::check_attr(std::size_t attr) const {
  if (attr >= attrs_.size()) {
    throw ContractViolation("attribute index " + std::to_string(attr) + " out of range");
  }
}

std::uint64_t LabelHistogram::count(std::size_t attr, LabelId value) const {
  const auto bins = this->bins(attr);
  auto it = lower_bound_value(bins, value);
  return (it != bins.end() && it->value == value) ? it->count : 0;
}

bool LabelHistogram::empty() const {
  return std::all_of(attrs_.begin(), attrs_.end(),
                     [](const Attribute& a) { return a.total == 0; });
}

void LabelHistogram::add(std::size_t attr, LabelId value, std::uint64_t n) {
  check_attr(attr);
  if (n == 0) return;
  Attribute& a = attrs_[attr];
  auto it = lower_bound_value(a.bins, value);
  if (it != a.bins.end() && it->value == value) {
    it->count += n;
    a.max = std::max(a.max, it->count);
  } else {
    a.bins.insert(it, Bin{value, n});
    a.max = std::max(a.max, n);
  }
  a.total += n;
}

void LabelHistogram::remove(std::size_t attr, LabelId value, std::uint64_t n) {
  check_attr(attr);
  if (n == 0) return;
  Attribute& a = attrs_[attr];
  auto it = lower_bound_value(a.bins, value);
  if (it == a.bins.end() || it->value != value || it->count < n) {
    throw ContractViolation("removing more label occurrences than present");
  }
  const bool was_max = it->count == a.max;
  it->count -= n;
  a.total -= n;
  if (it->count == 0) a.bins.erase(it);
  if (was_max) {
    a.max = 0;
    for (const Bin& b : a.bins) a.max = std::max(a.max, b.count);
  }
}

void LabelHistogram::merge(const LabelHistogram& other) {
  if (attrs_.empty()) attrs_.resize(other.attrs_.size());
  if (other.attrs_.size() != attrs_.size()) {
    throw ContractViolation("merging histograms with different attribute counts");
  }
  for (std::size_t attr = 0; attr < attrs_.size(); ++attr) {
    for (const Bin& b : other.attrs_[attr].bins) add(attr, b.value, b.count);
  }
}

void LabelHistogram::subtract(const LabelHistogram& other) {
  if (other.attrs_.size() != attrs_.size()) {
    throw ContractViolation("subtracting histograms with different attribute counts");
  }
  for (std::size_t attr = 0; attr < attrs_.size(); ++attr) {
    for (const Bin& b : other.attrs_[attr].bins) remove(attr, b.value, b.count);
  }
}

LabelId LabelHistogram::modal_value(std::size_t attr) const {
  check_attr(attr);
  const Attribute& a = attrs_[attr];
  for (const Bin& b : a.bins) {
    if (b.count == a.max) return b.value;
  }
  throw ContractViolation("modal value of an empty histogram");
}

std::uint64_t merged_max_count(const LabelHistogram& a, const LabelHistogram& b,
                               std::size_t attr) {
  // Values absent from the smaller side keep their count from the larger one,
  // which is bounded by its cached maximum.
  const LabelHistogram& big = a.bins(attr).size() >= b.bins(attr).size() ? a : b;
  const LabelHistogram& small = &big == &a ? b : a;
  std::uint64_t best = std::max(big.max_count(attr), small.max_count(attr));
  for (const auto& bin : small.bins(attr)) {
    best = std::max(best, bin.count + big.count(attr, bin.value));
  }
  return best;
}

}  // namespace eva
