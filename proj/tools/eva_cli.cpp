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

// Command-line driver: detect, score, sweep and generate.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "eva/bench.hpp"
#include "eva/graph.hpp"
#include "eva/io.hpp"
#include "eva/metrics.hpp"
#include "eva/optimizer.hpp"
#include "eva/partition.hpp"

#ifndef EVA_VERSION
#define EVA_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitUndefined = 3;

struct Common {
  std::string graph;
  std::string attrs;
  std::string out;
};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

json manifest(const std::string& command, json inputs, json config, const std::vector<fs::path>& outputs,
              double seconds) {
  json outs = json::array();
  for (const auto& p : outputs) outs.push_back(p.filename().string());
  return json{{"tool", "eva"},
              {"version", EVA_VERSION},
              {"command", command},
              {"inputs", std::move(inputs)},
              {"config", std::move(config)},
              {"outputs", std::move(outs)},
              {"wall_time_seconds", seconds}};
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw CLI::ValidationError("--alphas", "not a number: '" + s + "'");
  }
  return v;
}

// "0,0.5,1" or "start:stop:step" (inclusive).
std::vector<double> parse_alphas(const std::string& text) {
  if (text.empty()) return eva::default_alphas();
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw CLI::ValidationError("--alphas", "expected start:stop:step");
    const double start = parse_double(parts[0]);
    const double stop = parse_double(parts[1]);
    const double step = parse_double(parts[2]);
    if (!(step > 0.0)) throw CLI::ValidationError("--alphas", "step must be positive");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= count; ++i) {
      // Rounded to 12 decimals so 0.1 steps land on the usual literals.
      out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return out;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(parse_double(p));
  return out;
}

void print_report(const eva::QualityReport& r) {
  std::cout << "communities " << r.community_count << "  Q " << r.modularity << "  P " << r.purity
            << "  Z " << r.z_objective;
  if (r.community_count >= 2 && r.z_defined) std::cout << "  z " << r.z_score << "  p " << r.p_value;
  std::cout << '\n';
}

void add_graph_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--graph", c.graph, "Edge list: 'source target [weight]' per line")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--attrs", c.attrs, "Attribute CSV with header 'node,attr1,...'")
      ->required()
      ->check(CLI::ExistingFile);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eva: labeled community discovery"};
  app.set_version_flag("--version", EVA_VERSION);
  app.require_subcommand(1);

  Common common;
  double alpha = 0.5;
  std::uint64_t seed = 42;
  double min_gain = 1e-7;
  bool no_shuffle = false;
  std::size_t max_levels = 64;

  auto* detect = app.add_subcommand("detect", "Find communities and write partition + report");
  add_graph_options(detect, common);
  detect->add_option("--alpha", alpha, "Purity weight in [0,1]")->capture_default_str();
  detect->add_option("--seed", seed, "Random seed")->capture_default_str();
  detect->add_option("--min-gain", min_gain, "Stop when a level improves Z by at most this")
      ->capture_default_str();
  detect->add_option("--max-levels", max_levels, "Upper bound on aggregation levels")
      ->capture_default_str();
  detect->add_flag("--no-shuffle", no_shuffle, "Visit nodes in id order");
  detect->add_option("--out", common.out, "Output directory")->required();

  std::string partition_path;
  std::optional<double> score_alpha;
  auto* score = app.add_subcommand("score", "Evaluate an existing partition");
  add_graph_options(score, common);
  score->add_option("--partition", partition_path, "Partition JSON")
      ->required()
      ->check(CLI::ExistingFile);
  score->add_option("--alpha", score_alpha, "Purity weight (default: the partition's alpha, else 0.5)");
  score->add_option("--out", common.out, "Output directory")->required();

  std::string alphas_text;
  std::size_t runs = 10;
  std::string format = "csv";
  std::size_t threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Run Eva over a grid of alphas");
  add_graph_options(sweep, common);
  sweep->add_option("--alphas", alphas_text, "Comma list or start:stop:step (default 0:1:0.1)");
  sweep->add_option("--runs", runs, "Seeded runs per alpha")->capture_default_str();
  sweep->add_option("--seed", seed, "Base seed; run r uses seed + r")->capture_default_str();
  sweep->add_option("--min-gain", min_gain, "Level stopping threshold")->capture_default_str();
  sweep->add_flag("--no-shuffle", no_shuffle, "Visit nodes in id order");
  sweep->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  sweep->add_option("--out", common.out, "Output directory")->required();

  eva::GeneratorConfig gen;
  std::size_t block_count = 4;
  std::size_t block_size = 25;
  std::vector<std::size_t> sizes;
  auto* generate = app.add_subcommand("generate", "Write a planted-partition attributed graph");
  generate->add_option("--communities", block_count, "Number of planted communities")
      ->capture_default_str();
  generate->add_option("--size", block_size, "Nodes per community")->capture_default_str();
  generate->add_option("--sizes", sizes, "Explicit community sizes (overrides the two above)")
      ->delimiter(',');
  generate->add_option("--p-in", gen.p_in, "Intra-community edge probability")->capture_default_str();
  generate->add_option("--p-out", gen.p_out, "Inter-community edge probability")->capture_default_str();
  generate->add_option("--attributes", gen.attribute_count, "Attribute count")->capture_default_str();
  generate->add_option("--values", gen.values_per_attribute, "Values per attribute")
      ->capture_default_str();
  generate->add_option("--homophily", gen.label_homophily, "P(node carries its block's value)")
      ->capture_default_str();
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--out", common.out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  const Timer timer;
  const fs::path out_dir(common.out);
  try {
    if (detect->parsed()) {
      eva::AttributedGraph g = eva::io::load_graph(common.graph, common.attrs);
      eva::OptimizerConfig cfg;
      cfg.alpha = alpha;
      cfg.rng_seed = seed;
      cfg.min_z_gain = min_gain;
      cfg.max_levels = max_levels;
      cfg.shuffle_nodes = !no_shuffle;
      const eva::RunResult result = eva::run(g, cfg);
      const eva::Partition p = eva::Partition::from_assignment(g, result.assignment);
      const eva::QualityReport report = eva::evaluate(g, p, alpha);

      const std::vector<fs::path> outputs{out_dir / "partition.json", out_dir / "report.json",
                                          out_dir / "manifest.json"};
      json trace = json::array();
      for (const auto& lv : result.trace.levels) {
        trace.push_back({{"nodes", lv.node_count},
                         {"communities", lv.community_count},
                         {"moves", lv.move_count},
                         {"sweeps", lv.sweep_count},
                         {"z_before", lv.z_before},
                         {"z_after", lv.z_after},
                         {"modularity", lv.modularity},
                         {"purity", lv.purity},
                         {"seconds", lv.seconds}});
      }
      json config{{"alpha", alpha}, {"seed", seed},           {"min_gain", min_gain},
                  {"max_levels", max_levels}, {"shuffle", !no_shuffle}};
      json manifest_doc = manifest("detect", {{"graph", common.graph}, {"attrs", common.attrs}},
                                   config, outputs, timer.seconds());
      manifest_doc["trace"] = std::move(trace);
      eva::io::OutputSet files;
      files.add(outputs[0], eva::io::dump(eva::io::partition_to_json(g, result.assignment, alpha, seed)));
      files.add(outputs[1], eva::io::dump(eva::io::report_to_json(report)));
      files.add(outputs[2], eva::io::dump(manifest_doc));
      files.commit();
      print_report(report);
    } else if (score->parsed()) {
      eva::AttributedGraph g = eva::io::load_graph(common.graph, common.attrs);
      std::ifstream in(partition_path);
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::parse_error& e) {
        throw eva::io::InputError(partition_path, 0, e.what());
      }
      const eva::io::PartitionFile pf = eva::io::partition_from_json(doc, g, partition_path);
      const double a = score_alpha.value_or(pf.alpha.value_or(0.5));
      const eva::Partition p = eva::Partition::from_assignment(g, pf.assignment);
      const eva::QualityReport report = eva::evaluate(g, p, a);
      const std::vector<fs::path> outputs{out_dir / "report.json", out_dir / "manifest.json"};
      eva::io::OutputSet files;
      files.add(outputs[0], eva::io::dump(eva::io::report_to_json(report)));
      files.add(outputs[1], eva::io::dump(manifest("score",
                                                   {{"graph", common.graph},
                                                    {"attrs", common.attrs},
                                                    {"partition", partition_path}},
                                                   {{"alpha", a}}, outputs, timer.seconds())));
      files.commit();
      print_report(report);
    } else if (sweep->parsed()) {
      eva::AttributedGraph g = eva::io::load_graph(common.graph, common.attrs);
      eva::SweepOptions opts;
      opts.alphas = parse_alphas(alphas_text);
      opts.runs = runs;
      opts.seed = seed;
      opts.threads = threads;
      opts.optimizer.min_z_gain = min_gain;
      opts.optimizer.shuffle_nodes = !no_shuffle;
      const eva::SweepResult result = eva::sweep(g, opts);
      const fs::path table = out_dir / (format == "csv" ? "sweep.csv" : "sweep.json");
      const std::vector<fs::path> outputs{table, out_dir / "manifest.json"};
      eva::io::OutputSet files;
      files.add(table, format == "csv" ? eva::io::sweep_to_csv(result)
                                       : eva::io::dump(eva::io::sweep_to_json(result)));
      files.add(outputs[1],
                eva::io::dump(manifest("sweep", {{"graph", common.graph}, {"attrs", common.attrs}},
                                       {{"alphas", opts.alphas},
                                        {"runs", runs},
                                        {"seed", seed},
                                        {"min_gain", min_gain},
                                        {"shuffle", !no_shuffle},
                                        {"format", format}},
                                       outputs, timer.seconds())));
      files.commit();
      std::cout << "alpha  communities(mean)  normalized  Q(mean)  P(mean)\n";
      for (const auto& s : result.summary) {
        std::cout << s.alpha << "  " << s.community_count.mean << "  " << s.normalized_count.mean
                  << "  " << s.modularity.mean << "  " << s.purity.mean << '\n';
      }
    } else if (generate->parsed()) {
      if (sizes.empty()) sizes.assign(block_count, block_size);
      gen.community_sizes = sizes;
      const eva::GeneratedGraph gg = eva::generate(gen);
      if (gg.edgeless) std::cerr << "warning: generated graph has no edges\n";
      std::ostringstream edges;
      std::ostringstream attrs;
      eva::io::write_edge_list(edges, gg.graph);
      eva::io::write_attributes(attrs, gg.graph);
      const std::vector<fs::path> outputs{out_dir / "graph.txt", out_dir / "attrs.csv",
                                          out_dir / "planted.json", out_dir / "manifest.json"};
      eva::io::OutputSet files;
      files.add(outputs[0], edges.str());
      files.add(outputs[1], attrs.str());
      files.add(outputs[2], eva::io::dump(eva::io::partition_to_json(gg.graph, gg.planted,
                                                                     std::nullopt, gen.seed)));
      files.add(outputs[3], eva::io::dump(manifest("generate", json::object(),
                                                   {{"community_sizes", gen.community_sizes},
                                                    {"p_in", gen.p_in},
                                                    {"p_out", gen.p_out},
                                                    {"attributes", gen.attribute_count},
                                                    {"values", gen.values_per_attribute},
                                                    {"homophily", gen.label_homophily},
                                                    {"seed", gen.seed},
                                                    {"edgeless", gg.edgeless}},
                                                   outputs, timer.seconds())));
      files.commit();
      std::cout << "nodes " << gg.graph.node_count() << "  edges " << gg.graph.edge_count() << '\n';
    }
  } catch (const eva::UndefinedValueError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUndefined;
  } catch (const eva::IngestionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const eva::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
