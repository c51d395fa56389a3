#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "decoyrt/instance.hpp"

namespace decoyrt {

struct BenchRecord {
  std::string algorithm;
  std::string graph;
  std::size_t eps_s = 0;
  std::size_t eps_d = 0;
  Time t_max = 0;
  double wall_ms = 0;   // median over the timed repetitions
  std::uint64_t ops = 0;  // relaxations (dijkstra) or stream scans (wu), one repetition
};

struct BenchOptions {
  int warmups = 3;
  int repetitions = 7;
};

/// Times ea_dijkstra and ea_wu from every entry node separately, the
/// stream for wu being prebuilt once. Returns {dijkstra, wu}.
std::vector<BenchRecord> bench_earliest_arrival(const Instance& instance, const BenchOptions& options = {});

inline constexpr const char* kBenchCsvHeader = "algorithm,graph,eps_s,eps_d,t_max,wall_ms,ops";
std::string to_csv_row(const BenchRecord& record);

}  // namespace decoyrt
