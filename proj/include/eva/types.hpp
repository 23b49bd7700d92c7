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

#ifndef EVA_TYPES_HPP_
#define EVA_TYPES_HPP_

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace eva {

using NodeId = std::uint32_t;
using CommunityId = std::uint32_t;
using LabelId = std::uint32_t;

inline constexpr CommunityId kNoCommunity = std::numeric_limits<CommunityId>::max();

// Input could not be turned into a graph (unknown node, malformed record).
class IngestionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violates a documented domain constraint (negative weight, alpha
// outside [0,1], wrong attribute arity).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested quantity is mathematically undefined for this input, e.g.
// modularity of an edgeless graph.
class UndefinedValueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke a precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace eva

#endif  // EVA_TYPES_HPP_
