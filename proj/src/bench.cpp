#include "decoyrt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>

#include "decoyrt/reachability.hpp"

namespace decoyrt {

namespace {

double median_ms(const BenchOptions& o, const std::function<void()>& body) {
  using Clock = std::chrono::steady_clock;
  for (int i = 0; i < o.warmups; ++i) body();
  std::vector<double> samples;
  for (int i = 0; i < std::max(1, o.repetitions); ++i) {
    const auto t0 = Clock::now();
    body();
    samples.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  }
  std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2),
                   samples.end());
  return samples[samples.size() / 2];
}

}  // namespace

std::vector<BenchRecord> bench_earliest_arrival(const Instance& instance, const BenchOptions& options) {
  const auto& g = instance.graph;
  const auto& iv = g.interval();
  BenchRecord base;
  base.graph = instance.name;
  base.eps_s = g.static_edge_count();
  base.eps_d = g.dynamic_edge_count();
  base.t_max = iv.t_omega;

  SearchStats dij;
  BenchRecord d = base;
  d.algorithm = "dijkstra";
  d.wall_ms = median_ms(options, [&] {
    dij = {};
    for (NodeId s : instance.entries) {
      const NodeId src[] = {s};
      ea_dijkstra(g, src, iv, nullptr, &dij);
    }
  });
  d.ops = dij.relaxations;

  const EdgeStream stream = edge_stream(g, iv);
  SearchStats wu;
  BenchRecord w = base;
  w.algorithm = "wu";
  w.wall_ms = median_ms(options, [&] {
    wu = {};
    for (NodeId s : instance.entries) {
      const NodeId src[] = {s};
      ea_wu(stream, g.node_count(), src, iv, nullptr, &wu);
    }
  });
  w.ops = wu.scans;
  return {d, w};
}

std::string to_csv_row(const BenchRecord& r) {
  char wall[64];
  std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
  // Graph names may contain commas, e.g. star_static_heavy(2000,500).
  std::string graph = r.graph;
  if (graph.find(',') != std::string::npos) graph = "\"" + graph + "\"";
  return r.algorithm + "," + graph + "," + std::to_string(r.eps_s) + "," + std::to_string(r.eps_d) +
         "," + std::to_string(r.t_max) + "," + wall + "," + std::to_string(r.ops);
}

}  // namespace decoyrt
