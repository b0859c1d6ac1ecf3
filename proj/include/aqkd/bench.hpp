// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "aqkd/netsim.hpp"

namespace aqkd::bench {

enum class Mode { SinglePath, MultiPath };
std::string_view to_string(Mode m);

struct BenchConfig {
  std::vector<std::size_t> node_counts{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::vector<std::size_t> attr_counts{10, 20};
  std::vector<Mode> modes{Mode::SinglePath, Mode::MultiPath};
  std::size_t multi_paths = 3;
  std::size_t repetitions = 3;  // at least 3
  std::uint64_t seed = 1;

  // Throws std::invalid_argument on an unusable configuration.
  void validate() const;
};

struct BenchRow {
  std::size_t n = 0;  // total hops
  std::size_t attr_count = 0;
  std::size_t disclosed = 0;
  Mode mode = Mode::SinglePath;
  double node_median_ms = 0;
  double receiver_median_ms = 0;
  std::size_t payload_bytes = 0;
  OpCounters receiver_counts;
  OpCounters node_counts;  // one forwarding hop past the entry node
};

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);
double median(std::vector<double> v);

// Chain topology: `paths` disjoint chains whose lengths sum to n.
netsim::GraphSpec chain_graph(std::size_t n, std::size_t paths,
                              const std::vector<std::string>& attr_labels);
netsim::RouteSpec chain_routes(std::size_t n, std::size_t paths);

// Labels "a0".."a<l-1>" and a policy requiring the first l/2 of them.
std::vector<std::string> bench_labels(std::size_t attr_count);
Policy bench_policy(std::size_t attr_count);

BenchRow run_cell(std::size_t n, std::size_t attr_count, Mode mode, const BenchConfig& cfg);
std::vector<BenchRow> run_bench(const BenchConfig& cfg, std::ostream* progress = nullptr);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const BenchRow& row);

}  // namespace aqkd::bench
