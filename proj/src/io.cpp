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

#include "eva/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <unordered_map>
#include <unordered_set>

#include <unistd.h>

namespace eva::io {
namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// Splits one CSV line; supports double-quoted fields with "" escapes.
std::vector<std::string> split_csv(const std::string& line, const std::string& source,
                                   std::size_t lineno) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"' && trim(cur).empty()) {
      quoted = true;
      was_quoted = true;
      cur.clear();
    } else if (ch == ',') {
      fields.push_back(was_quoted ? cur : trim(cur));
      cur.clear();
      was_quoted = false;
    } else {
      cur.push_back(ch);
    }
  }
  if (quoted) throw InputError(source, lineno, "unterminated quoted field");
  fields.push_back(was_quoted ? cur : trim(cur));
  return fields;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos && trim(s) == s) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

std::string number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string(), 0, "cannot open file");
  return in;
}

json finite_or_string(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x < 0 ? "-Infinity" : "Infinity";
  return x;
}

}  // namespace

InputError::InputError(std::string source, std::size_t line, const std::string& message)
    : IngestionError(source + ":" + std::to_string(line) + ": " + message),
      source_(std::move(source)),
      line_(line) {}

EdgeList read_edge_list(std::istream& in, const std::string& source) {
  EdgeList out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(t);
    if (parts.empty()) continue;
    if (parts.size() < 2 || parts.size() > 3) {
      throw InputError(source, lineno,
                       "expected 'source target [weight]', got " + std::to_string(parts.size()) +
                           " fields");
    }
    EdgeRecord e{parts[0], parts[1], std::nullopt};
    if (parts.size() == 3) {
      const std::string& w = parts[2];
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), value);
      if (ec != std::errc() || ptr != w.data() + w.size()) {
        throw InputError(source, lineno, "invalid weight '" + w + "'");
      }
      if (!std::isfinite(value) || value < 0.0) {
        throw InputError(source, lineno, "weight must be finite and non-negative, got '" + w + "'");
      }
      e.weight = value;
    }
    out.edges.push_back(std::move(e));
    out.lines.push_back(lineno);
  }
  return out;
}

AttributeTable read_attributes(std::istream& in, const std::string& source) {
  AttributeTable out;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::unordered_set<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_csv(line, source, lineno);
    if (!have_header) {
      if (fields.empty() || fields[0] != "node") {
        throw InputError(source, lineno, "header must start with 'node'");
      }
      for (std::size_t i = 1; i < fields.size(); ++i) {
        if (fields[i].empty()) throw InputError(source, lineno, "empty attribute name");
        out.schema.push_back(fields[i]);
      }
      if (out.schema.empty()) throw InputError(source, lineno, "at least one attribute is required");
      have_header = true;
      continue;
    }
    if (fields.size() != out.schema.size() + 1) {
      throw InputError(source, lineno,
                       "expected " + std::to_string(out.schema.size() + 1) + " fields, got " +
                           std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw InputError(source, lineno, "missing node id");
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (fields[i].empty()) {
        throw InputError(source, lineno,
                         "missing value for attribute '" + out.schema[i - 1] + "'");
      }
    }
    if (!seen.insert(fields[0]).second) {
      throw InputError(source, lineno, "duplicate record for node '" + fields[0] + "'");
    }
    NodeRecord rec{std::move(fields[0]), {}};
    rec.labels.assign(std::make_move_iterator(fields.begin() + 1),
                      std::make_move_iterator(fields.end()));
    out.nodes.push_back(std::move(rec));
    out.lines.push_back(lineno);
  }
  if (!have_header) throw InputError(source, lineno, "missing header line");
  return out;
}

AttributedGraph load_graph(const std::filesystem::path& edges, const std::filesystem::path& attrs) {
  std::ifstream attr_in = open_input(attrs);
  AttributeTable table = read_attributes(attr_in, attrs.string());
  std::ifstream edge_in = open_input(edges);
  EdgeList list = read_edge_list(edge_in, edges.string());

  std::unordered_set<std::string_view> known;
  known.reserve(table.nodes.size());
  for (const NodeRecord& rec : table.nodes) known.insert(rec.id);
  for (std::size_t i = 0; i < list.edges.size(); ++i) {
    for (const std::string* id : {&list.edges[i].source, &list.edges[i].target}) {
      if (!known.count(*id)) {
        throw InputError(edges.string(), list.lines[i],
                         "node '" + *id + "' has no record in " + attrs.string());
      }
    }
  }
  return build(list.edges, table.nodes, std::move(table.schema));
}

void write_edge_list(std::ostream& out, const AttributedGraph& g) {
  out << "# source target [weight]\n";
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (g.self_loop(u) > 0.0) {
      out << g.node_name(u) << ' ' << g.node_name(u) << ' ' << number(g.self_loop(u)) << '\n';
    }
    for (const auto& nb : g.neighbors(u)) {
      if (nb.node < u) continue;
      out << g.node_name(u) << ' ' << g.node_name(nb.node);
      if (nb.weight != 1.0) out << ' ' << number(nb.weight);
      out << '\n';
    }
  }
}

void write_attributes(std::ostream& out, const AttributedGraph& g) {
  out << "node";
  for (const std::string& a : g.attribute_schema()) out << ',' << csv_field(a);
  out << '\n';
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out << csv_field(g.node_name(v));
    const auto labels = g.labels(v);
    for (std::size_t a = 0; a < labels.size(); ++a) out << ',' << csv_field(g.label_name(a, labels[a]));
    out << '\n';
  }
}

json partition_to_json(const AttributedGraph& g, std::span<const CommunityId> assignment,
                       std::optional<double> alpha, std::optional<std::uint64_t> seed) {
  if (assignment.size() != g.node_count()) {
    throw ContractViolation("partition does not cover the graph");
  }
  const std::vector<CommunityId> compact = compact_assignment(assignment);
  std::vector<std::vector<std::string>> groups;
  for (NodeId v = 0; v < compact.size(); ++v) {
    if (compact[v] == groups.size()) groups.emplace_back();
    groups[compact[v]].push_back(g.node_name(v));
  }
  json doc;
  doc["communities"] = groups;
  doc["alpha"] = alpha ? json(*alpha) : json(nullptr);
  doc["seed"] = seed ? json(*seed) : json(nullptr);
  doc["manifest"] = "manifest.json";
  return doc;
}

PartitionFile partition_from_json(const json& doc, const AttributedGraph& g,
                                  const std::string& source) {
  if (!doc.is_object() || !doc.contains("communities") || !doc["communities"].is_array()) {
    throw InputError(source, 0, "expected an object with a 'communities' array");
  }
  PartitionFile out;
  out.assignment.assign(g.node_count(), kNoCommunity);
  CommunityId next = 0;
  for (const json& group : doc["communities"]) {
    if (!group.is_array() || group.empty()) {
      throw InputError(source, 0, "every community must be a non-empty array of node ids");
    }
    for (const json& member : group) {
      if (!member.is_string()) throw InputError(source, 0, "node ids must be strings");
      const std::string id = member.get<std::string>();
      const auto v = g.find_node(id);
      if (!v) throw InputError(source, 0, "unknown node '" + id + "'");
      if (out.assignment[*v] != kNoCommunity) {
        throw InputError(source, 0, "node '" + id + "' appears more than once");
      }
      out.assignment[*v] = next;
    }
    ++next;
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (out.assignment[v] == kNoCommunity) {
      throw InputError(source, 0, "node '" + g.node_name(v) + "' is not in any community");
    }
  }
  if (doc.contains("alpha") && doc["alpha"].is_number()) out.alpha = doc["alpha"].get<double>();
  if (doc.contains("seed") && doc["seed"].is_number_unsigned()) {
    out.seed = doc["seed"].get<std::uint64_t>();
  }
  return out;
}

json report_to_json(const QualityReport& r) {
  json doc;
  doc["alpha"] = r.alpha;
  doc["modularity"] = r.modularity;
  doc["purity"] = r.purity;
  doc["z_objective"] = r.z_objective;
  doc["community_count"] = r.community_count;
  doc["per_community_purity"] = r.per_community_purity;
  if (r.community_count < 2) {
    doc["z_score"] = nullptr;
    doc["p_value"] = nullptr;
    doc["z_status"] = "single_community";
  } else if (!r.z_defined) {
    doc["z_score"] = nullptr;
    doc["p_value"] = nullptr;
    doc["z_status"] = "undefined";
  } else {
    doc["z_score"] = finite_or_string(r.z_score);
    doc["p_value"] = r.p_value;
    doc["z_status"] = std::isinf(r.z_score) ? "zero_spread" : "defined";
  }
  doc["manifest"] = "manifest.json";
  return doc;
}

json sweep_to_json(const SweepResult& result) {
  json rows = json::array();
  for (const SweepRow& r : result.rows) {
    json row;
    row["alpha"] = r.alpha;
    row["run"] = r.run;
    row["seed"] = r.seed;
    row["ok"] = r.ok;
    if (!r.ok) row["error"] = r.error;
    row["community_count"] = r.community_count;
    row["normalized_count"] = finite_or_string(r.normalized_count);
    row["modularity"] = r.modularity;
    row["purity"] = r.purity;
    row["z_objective"] = r.z_objective;
    row["z_score"] = r.z_defined ? finite_or_string(r.z_score) : json(nullptr);
    row["p_value"] = r.z_defined ? finite_or_string(r.p_value) : json(nullptr);
    row["runtime_ms"] = r.runtime_ms;
    rows.push_back(std::move(row));
  }
  json summary = json::array();
  auto spread = [](const Spread& s) {
    return json{{"mean", finite_or_string(s.mean)},
                {"q1", finite_or_string(s.q1)},
                {"q3", finite_or_string(s.q3)}};
  };
  for (const SweepSummary& s : result.summary) {
    summary.push_back({{"alpha", s.alpha},
                       {"successful_runs", s.successful_runs},
                       {"community_count", spread(s.community_count)},
                       {"normalized_count", spread(s.normalized_count)},
                       {"modularity", spread(s.modularity)},
                       {"purity", spread(s.purity)},
                       {"z_objective", spread(s.z_objective)}});
  }
  return json{{"baseline_count", finite_or_string(result.baseline_count)},
              {"rows", std::move(rows)},
              {"summary", std::move(summary)},
              {"manifest", "manifest.json"}};
}

std::string sweep_to_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "alpha,run,seed,ok,community_count,normalized_count,modularity,purity,z_objective,"
         "z_score,p_value,runtime_ms,error\n";
  for (const SweepRow& r : result.rows) {
    out << number(r.alpha) << ',' << r.run << ',' << r.seed << ',' << (r.ok ? 1 : 0) << ','
        << r.community_count << ',' << number(r.normalized_count) << ',' << number(r.modularity)
        << ',' << number(r.purity) << ',' << number(r.z_objective) << ','
        << (r.z_defined ? number(r.z_score) : "") << ',' << (r.z_defined ? number(r.p_value) : "")
        << ',' << number(r.runtime_ms) << ',' << csv_field(r.error) << '\n';
  }
  return out.str();
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

OutputSet::~OutputSet() {
  if (committed_) return;
  for (const auto& [tmp, dest] : staged_) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
  }
}

void OutputSet::add(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  staged_.emplace_back(tmp, path);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
}

void OutputSet::commit() {
  for (const auto& [tmp, dest] : staged_) std::filesystem::rename(tmp, dest);
  committed_ = true;
}

}  // namespace eva::io
