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

#include "eva/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <random>
#include <thread>
#include <utility>

#include "eva/metrics.hpp"

namespace eva {
namespace {

std::string padded(std::size_t value, std::size_t width) {
  std::string s = std::to_string(value);
  if (s.size() < width) s.insert(0, width - s.size(), '0');
  return s;
}

// Visits every j in [first, last) independently with probability p by
// jumping over geometrically distributed gaps.
template <typename Rng, typename Fn>
void sample_range(Rng& rng, double p, std::size_t first, std::size_t last, Fn&& fn) {
  if (p <= 0.0 || first >= last) return;
  if (p >= 1.0) {
    for (std::size_t j = first; j < last; ++j) fn(j);
    return;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_q = std::log1p(-p);
  std::size_t j = first;
  while (true) {
    const double skip = std::floor(std::log1p(-unit(rng)) / log_q);
    if (skip >= static_cast<double>(last - j)) return;
    j += static_cast<std::size_t>(skip);
    fn(j);
    ++j;
    if (j >= last) return;
  }
}

struct Cell {
  double alpha;
  std::size_t run;
  bool baseline_only;
};

}  // namespace

void GeneratorConfig::validate() const {
  if (community_sizes.empty()) throw ValidationError("at least one community is required");
  for (std::size_t s : community_sizes) {
    if (s == 0) throw ValidationError("community sizes must be at least 1");
  }
  if (!(p_out >= 0.0 && p_out <= p_in && p_in <= 1.0)) {
    throw ValidationError("edge probabilities must satisfy 0 <= p_out <= p_in <= 1");
  }
  if (!(label_homophily >= 0.0 && label_homophily <= 1.0)) {
    throw ValidationError("label_homophily must lie in [0, 1]");
  }
  if (values_per_attribute == 0) throw ValidationError("values_per_attribute must be positive");
}

GeneratedGraph generate(const GeneratorConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  const std::size_t blocks = cfg.community_sizes.size();
  const std::size_t n =
      std::accumulate(cfg.community_sizes.begin(), cfg.community_sizes.end(), std::size_t{0});
  const std::size_t attrs = cfg.attribute_count;
  const std::size_t values = cfg.values_per_attribute;

  GeneratedGraph out;
  out.planted.resize(n);
  std::vector<std::size_t> block_end(n);
  {
    std::size_t v = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t end = v + cfg.community_sizes[b];
      for (; v < end; ++v) {
        out.planted[v] = static_cast<CommunityId>(b);
        block_end[v] = end;
      }
    }
  }

  // Designated value of block b for attribute a: perm[a][b % values].
  std::vector<std::vector<LabelId>> perm(attrs, std::vector<LabelId>(values));
  for (auto& row : perm) {
    std::iota(row.begin(), row.end(), LabelId{0});
    std::shuffle(row.begin(), row.end(), rng);
  }
  std::vector<LabelId> labels(n * attrs);
  std::bernoulli_distribution keep(cfg.label_homophily);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t a = 0; a < attrs; ++a) {
      const LabelId designated = perm[a][out.planted[v] % values];
      LabelId value = designated;
      if (values > 1 && !keep(rng)) {
        std::uniform_int_distribution<LabelId> other(0, static_cast<LabelId>(values - 2));
        value = other(rng);
        if (value >= designated) ++value;
      }
      labels[v * attrs + a] = value;
    }
  }

  std::vector<IndexedEdge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    auto add = [&](std::size_t v) {
      edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), 1.0});
    };
    sample_range(rng, cfg.p_in, u + 1, block_end[u], add);
    sample_range(rng, cfg.p_out, block_end[u], n, add);
  }
  out.edgeless = edges.empty();

  LabelDictionary dict;
  const std::size_t width = std::to_string(values - 1).size();
  for (std::size_t a = 0; a < attrs; ++a) {
    dict.schema.push_back("attr" + std::to_string(a + 1));
    auto& names = dict.values.emplace_back();
    for (std::size_t x = 0; x < values; ++x) names.push_back("v" + padded(x, width));
  }
  std::vector<std::string> names(n);
  for (std::size_t v = 0; v < n; ++v) names[v] = std::to_string(v);
  out.graph = build_indexed(std::move(names), edges, std::move(dict), std::move(labels));
  return out;
}

std::vector<double> default_alphas() {
  std::vector<double> out;
  for (int i = 0; i <= 10; ++i) out.push_back(i / 10.0);
  return out;
}

Spread spread_of(std::vector<double> values) {
  Spread s;
  if (values.empty()) {
    s.mean = s.q1 = s.q3 = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  std::sort(values.begin(), values.end());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  s.q1 = quantile(0.25);
  s.q3 = quantile(0.75);
  return s;
}

SweepResult sweep(const AttributedGraph& g, const SweepOptions& opts) {
  if (opts.runs == 0) throw ValidationError("runs must be at least 1");
  if (opts.alphas.empty()) throw ValidationError("at least one alpha is required");
  for (double a : opts.alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw ValidationError("alpha outside [0, 1]");
  }
  const bool has_zero =
      std::find(opts.alphas.begin(), opts.alphas.end(), 0.0) != opts.alphas.end();

  std::vector<Cell> cells;
  for (double a : opts.alphas) {
    for (std::size_t r = 0; r < opts.runs; ++r) cells.push_back({a, r, false});
  }
  if (!has_zero) {
    for (std::size_t r = 0; r < opts.runs; ++r) cells.push_back({0.0, r, true});
  }

  std::vector<SweepRow> rows(cells.size());
  auto work = [&](std::size_t i) {
    const Cell& cell = cells[i];
    SweepRow& row = rows[i];
    row.alpha = cell.alpha;
    row.run = cell.run;
    row.seed = opts.seed + cell.run;
    OptimizerConfig cfg = opts.optimizer;
    cfg.alpha = cell.alpha;
    cfg.rng_seed = row.seed;
    const auto start = std::chrono::steady_clock::now();
    try {
      RunResult res = run(g, cfg);
      row.trace = std::move(res.trace);
      const Partition p = Partition::from_assignment(g, res.assignment);
      const QualityReport q = evaluate(g, p, cell.alpha);
      row.community_count = q.community_count;
      row.modularity = q.modularity;
      row.purity = q.purity;
      row.z_objective = q.z_objective;
      row.z_score = q.z_score;
      row.p_value = q.p_value;
      row.z_defined = q.z_defined;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    row.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  std::size_t threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, cells.size());
  if (threads == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  SweepResult result;
  std::vector<double> baseline;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].alpha == 0.0 && rows[i].ok) {
      baseline.push_back(static_cast<double>(rows[i].community_count));
    }
  }
  result.baseline_count =
      baseline.empty() ? std::numeric_limits<double>::quiet_NaN()
                       : std::accumulate(baseline.begin(), baseline.end(), 0.0) /
                             static_cast<double>(baseline.size());

  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].baseline_only) continue;
    SweepRow row = std::move(rows[i]);
    row.normalized_count =
        row.ok ? static_cast<double>(row.community_count) / result.baseline_count
               : std::numeric_limits<double>::quiet_NaN();
    result.rows.push_back(std::move(row));
  }

  for (double a : opts.alphas) {
    std::vector<double> count, norm, q, pur, z;
    for (const SweepRow& row : result.rows) {
      if (row.alpha != a || !row.ok) continue;
      count.push_back(static_cast<double>(row.community_count));
      norm.push_back(row.normalized_count);
      q.push_back(row.modularity);
      pur.push_back(row.purity);
      z.push_back(row.z_objective);
    }
    SweepSummary s;
    s.alpha = a;
    s.successful_runs = count.size();
    s.community_count = spread_of(std::move(count));
    s.normalized_count = spread_of(std::move(norm));
    s.modularity = spread_of(std::move(q));
    s.purity = spread_of(std::move(pur));
    s.z_objective = spread_of(std::move(z));
    result.summary.push_back(s);
  }
  return result;
}

ScalingReport scaling_probe(const ScalingOptions& opts) {
  if (opts.sizes.empty()) throw ValidationError("at least one size is required");
  for (std::size_t i = 1; i < opts.sizes.size(); ++i) {
    if (opts.sizes[i] <= opts.sizes[i - 1]) throw ValidationError("sizes must be increasing");
  }
  if (opts.community_size < 2) throw ValidationError("community_size must be at least 2");

  ScalingReport report;
  for (std::size_t idx = 0; idx < opts.sizes.size(); ++idx) {
    const std::size_t n = opts.sizes[idx];
    GeneratorConfig gen;
    gen.community_sizes.clear();
    for (std::size_t left = n; left > 0;) {
      const std::size_t s = std::min(opts.community_size, left);
      gen.community_sizes.push_back(s);
      left -= s;
    }
    const double s = static_cast<double>(std::min(opts.community_size, n));
    gen.p_in = s > 1.0 ? std::min(1.0, opts.intra_fraction * opts.average_degree / (s - 1.0)) : 0.0;
    gen.p_out = n > s ? std::min(gen.p_in, (1.0 - opts.intra_fraction) * opts.average_degree /
                                               (static_cast<double>(n) - s))
                      : 0.0;
    gen.values_per_attribute = opts.values_per_attribute;
    gen.label_homophily = opts.label_homophily;
    gen.seed = opts.seed + idx;
    const GeneratedGraph gg = generate(gen);

    const auto start = std::chrono::steady_clock::now();
    RunResult res = run(gg.graph, opts.optimizer);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.rows.push_back({n, gg.graph.edge_count(), secs, std::move(res.trace)});
  }

  if (report.rows.size() < 2) {
    report.exponent = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(report.rows.size());
  for (const ScalingRow& r : report.rows) {
    const double n = static_cast<double>(r.nodes);
    const double x = std::log(n * std::log(n));
    const double y = std::log(std::max(r.seconds, 1e-9));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  report.exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return report;
}

}  // namespace eva
