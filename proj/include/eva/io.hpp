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

#ifndef EVA_IO_HPP_
#define EVA_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "eva/bench.hpp"
#include "eva/graph.hpp"
#include "eva/metrics.hpp"

namespace eva::io {

// Malformed or inconsistent input, located at source:line (line 0 when the
// problem is not tied to one line).
class InputError : public IngestionError {
 public:
  InputError(std::string source, std::size_t line, const std::string& message);
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

struct EdgeList {
  std::vector<EdgeRecord> edges;
  std::vector<std::size_t> lines;
};

/// Whitespace-separated `source target [weight]` per line. `#` starts a
/// comment; blank lines are skipped.
EdgeList read_edge_list(std::istream& in, const std::string& source);

struct AttributeTable {
  std::vector<std::string> schema;
  std::vector<NodeRecord> nodes;
  std::vector<std::size_t> lines;
};

/// CSV with header `node,attr1,...`. Empty values are rejected.
AttributeTable read_attributes(std::istream& in, const std::string& source);

// Reads both files and builds the graph, reporting unknown nodes and bad
// weights at their file and line.
AttributedGraph load_graph(const std::filesystem::path& edges, const std::filesystem::path& attrs);

void write_edge_list(std::ostream& out, const AttributedGraph& g);
void write_attributes(std::ostream& out, const AttributedGraph& g);

/// {"communities": [[ids...]...], "alpha": a, "seed": s}. Communities are
/// ordered by their smallest member, members by node order.
nlohmann::json partition_to_json(const AttributedGraph& g, std::span<const CommunityId> assignment,
                                 std::optional<double> alpha, std::optional<std::uint64_t> seed);

struct PartitionFile {
  std::vector<CommunityId> assignment;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
};

// Every node of `g` must appear exactly once.
PartitionFile partition_from_json(const nlohmann::json& doc, const AttributedGraph& g,
                                  const std::string& source);

nlohmann::json report_to_json(const QualityReport& report);

nlohmann::json sweep_to_json(const SweepResult& result);
std::string sweep_to_csv(const SweepResult& result);

// JSON text as emitted by every subcommand (2-space indent, trailing newline).
std::string dump(const nlohmann::json& doc);

/// Stages files next to their destination and renames them into place on
/// commit(), so a failure before commit() leaves no output behind.
class OutputSet {
 public:
  OutputSet() = default;
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;
  ~OutputSet();

  void add(const std::filesystem::path& path, const std::string& content);
  void commit();

 private:
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> staged_;
  bool committed_ = false;
};

}  // namespace eva::io

#endif  // EVA_IO_HPP_
