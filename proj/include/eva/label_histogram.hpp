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

#ifndef EVA_LABEL_HISTOGRAM_HPP_
#define EVA_LABEL_HISTOGRAM_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "eva/types.hpp"

namespace eva {

/// Per-attribute counts of categorical label values over a set of original
/// (finest-level) nodes. Bins are kept sorted by label id and only present
/// values are stored, so every stored count is at least 1.
class LabelHistogram {
 public:
  struct Bin {
    LabelId value;
    std::uint64_t count;
    friend bool operator==(const Bin&, const Bin&) = default;
  };

  LabelHistogram() = default;
  explicit LabelHistogram(std::size_t attribute_count) : attrs_(attribute_count) {}

  // Histogram of a single node carrying one value per attribute.
  static LabelHistogram of_node(std::span<const LabelId> labels);

  std::size_t attribute_count() const { return attrs_.size(); }
  std::span<const Bin> bins(std::size_t attr) const {
    return {attrs_[attr].bins.data(), attrs_[attr].bins.size()};
  }

  std::uint64_t count(std::size_t attr, LabelId value) const;
  // Largest single-value count for `attr`; 0 when empty.
  std::uint64_t max_count(std::size_t attr) const { return attrs_[attr].max; }
  // Sum of counts for `attr`, i.e. the number of original nodes covered.
  std::uint64_t total(std::size_t attr) const { return attrs_[attr].total; }
  bool empty() const;

  void add(std::size_t attr, LabelId value, std::uint64_t n = 1);
  // Throws ContractViolation if fewer than n occurrences are present.
  void remove(std::size_t attr, LabelId value, std::uint64_t n = 1);

  void merge(const LabelHistogram& other);
  void subtract(const LabelHistogram& other);

  // Modal value for `attr`; the smallest label id wins ties.
  LabelId modal_value(std::size_t attr) const;

  friend bool operator==(const LabelHistogram& a, const LabelHistogram& b) {
    if (a.attrs_.size() != b.attrs_.size()) return false;
    for (std::size_t i = 0; i < a.attrs_.size(); ++i) {
      if (a.attrs_[i].bins != b.attrs_[i].bins) return false;
    }
    return true;
  }

 private:
  // Inline capacity covers the common small label domains without touching
  // the heap, which keeps community lookups to one cache-line neighborhood.
  struct Attribute {
    boost::container::small_vector<Bin, 4> bins;
    std::uint64_t max = 0;
    std::uint64_t total = 0;
  };

  void check_attr(std::size_t attr) const;

  boost::container::small_vector<Attribute, 1> attrs_;
};

// Largest per-value count of `attr` in the union of two histograms, without
// materializing the union.
std::uint64_t merged_max_count(const LabelHistogram& a, const LabelHistogram& b,
                               std::size_t attr);

}  // namespace eva

#endif  // EVA_LABEL_HISTOGRAM_HPP_
