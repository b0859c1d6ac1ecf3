// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include "aqkd/bench.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

namespace aqkd::bench {

std::string_view to_string(Mode m) { return m == Mode::SinglePath ? "single" : "multi"; }

void BenchConfig::validate() const {
  if (repetitions < 3) throw std::invalid_argument("need at least 3 repetitions");
  if (node_counts.empty() || attr_counts.empty() || modes.empty()) {
    throw std::invalid_argument("empty sweep");
  }
  for (auto n : node_counts) {
    if (n == 0) throw std::invalid_argument("node count must be positive");
    for (auto m : modes) {
      if (m == Mode::MultiPath && n < multi_paths) {
        throw std::invalid_argument("multi-path cells need n >= number of paths");
      }
    }
  }
  for (auto l : attr_counts) {
    if (l == 0) throw std::invalid_argument("attribute count must be positive");
  }
  if (multi_paths < 2) throw std::invalid_argument("multi-path mode needs at least 2 paths");
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit needs two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LinearFit f;
  const double denom = n * sxx - sx * sx;
  if (denom == 0) throw std::invalid_argument("degenerate x values");
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  const double mean = sy / n;
  double ss_tot = 0, ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double pred = f.slope * x[i] + f.intercept;
    ss_res += (y[i] - pred) * (y[i] - pred);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  f.r_squared = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return f;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const auto mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2;
}

namespace {
std::vector<std::size_t> split_lengths(std::size_t n, std::size_t paths) {
  std::vector<std::size_t> len(paths, n / paths);
  for (std::size_t i = 0; i < n % paths; ++i) ++len[i];
  return len;
}
std::string chain_id(std::size_t path, std::size_t hop) {
  return "p" + std::to_string(path) + "n" + std::to_string(hop);
}
}  // namespace

netsim::GraphSpec chain_graph(std::size_t n, std::size_t paths,
                              const std::vector<std::string>& attr_labels) {
  netsim::GraphSpec spec;
  const auto len = split_lengths(n, paths);
  for (std::size_t p = 0; p < paths; ++p) {
    for (std::size_t j = 0; j < len[p]; ++j) {
      spec.nodes.push_back({chain_id(p, j), attr_labels});
      if (j > 0) spec.edges.emplace_back(chain_id(p, j - 1), chain_id(p, j));
    }
    spec.entries.push_back(chain_id(p, 0));
    spec.exits.push_back(chain_id(p, len[p] - 1));
  }
  return spec;
}

netsim::RouteSpec chain_routes(std::size_t n, std::size_t paths) {
  netsim::RouteSpec r;
  const auto len = split_lengths(n, paths);
  for (std::size_t p = 0; p < paths; ++p) {
    std::vector<std::string> path;
    for (std::size_t j = 0; j < len[p]; ++j) path.push_back(chain_id(p, j));
    r.paths.push_back(std::move(path));
  }
  return r;
}

std::vector<std::string> bench_labels(std::size_t attr_count) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < attr_count; ++i) labels.push_back("a" + std::to_string(i));
  return labels;
}

Policy bench_policy(std::size_t attr_count) {
  Policy p("bench", attr_count);
  const auto labels = bench_labels(attr_count);
  for (std::size_t i = 0; i < attr_count / 2; ++i) p.require(i, labels[i]);
  return p;
}

namespace {

struct Cell {
  std::unique_ptr<netsim::NetworkGraph> graph;
  netsim::RouteSpec routes;
  Policy policy;
  std::unique_ptr<SeededRng> rng;
  BenchRow row;
  std::vector<double> node_ms;
  std::vector<double> receiver_ms;
};

Cell make_cell(std::size_t n, std::size_t attr_count, Mode mode, const BenchConfig& cfg) {
  const auto paths = mode == Mode::SinglePath ? 1 : cfg.multi_paths;
  Cell c;
  c.rng = std::make_unique<SeededRng>(cfg.seed,
                                      n * 1000 + attr_count * 10 + (mode == Mode::SinglePath ? 0 : 1));
  auto pp = PublicParams::derive(attr_count);
  auto issuer = std::make_shared<Issuer>(pp, IssuerKeyPair::generate(pp, *c.rng));
  c.graph = std::make_unique<netsim::NetworkGraph>(
      netsim::NetworkGraph::build(chain_graph(n, paths, bench_labels(attr_count)), issuer, *c.rng));
  c.routes = chain_routes(n, paths);
  c.policy = bench_policy(attr_count);
  c.row.n = n;
  c.row.attr_count = attr_count;
  c.row.disclosed = c.policy.disclosed_count();
  c.row.mode = mode;
  return c;
}

void measure(Cell& c, bool keep) {
  auto rep = netsim::run_session(*c.graph, c.routes, c.policy, {}, *c.rng);
  if (!rep.accepted()) throw std::runtime_error("benchmark session rejected");
  if (!keep) return;
  c.node_ms.insert(c.node_ms.end(), rep.hop_ms.begin(), rep.hop_ms.end());
  c.receiver_ms.push_back(rep.receiver_ms);
  c.row.payload_bytes = rep.payload_bytes;
  c.row.receiver_counts = rep.receiver_counts;
  c.row.node_counts = rep.hop_counts.size() > 1 ? rep.hop_counts[1] : rep.hop_counts[0];
}

BenchRow finish(Cell& c) {
  c.row.node_median_ms = median(c.node_ms);
  c.row.receiver_median_ms = median(c.receiver_ms);
  return c.row;
}

}  // namespace

BenchRow run_cell(std::size_t n, std::size_t attr_count, Mode mode, const BenchConfig& cfg) {
  auto c = make_cell(n, attr_count, mode, cfg);
  measure(c, false);
  for (std::size_t r = 0; r < cfg.repetitions; ++r) measure(c, true);
  return finish(c);
}

// Repetitions are interleaved across cells so a burst of machine noise lands
// on one sample of many cells rather than every sample of one cell.
std::vector<BenchRow> run_bench(const BenchConfig& cfg, std::ostream* progress) {
  cfg.validate();
  std::vector<Cell> cells;
  for (auto mode : cfg.modes) {
    for (auto l : cfg.attr_counts) {
      for (auto n : cfg.node_counts) cells.push_back(make_cell(n, l, mode, cfg));
    }
  }
  for (std::size_t r = 0; r <= cfg.repetitions; ++r) {
    for (auto& c : cells) measure(c, r > 0);
    if (progress) *progress << "# round " << r << "/" << cfg.repetitions << " done\n";
  }
  std::vector<BenchRow> rows;
  for (auto& c : cells) {
    rows.push_back(finish(c));
    if (progress) {
      *progress << "# " << to_string(c.row.mode) << " l=" << c.row.attr_count << " n=" << c.row.n
                << " receiver " << c.row.receiver_median_ms << " ms\n";
    }
  }
  return rows;
}

void write_csv_header(std::ostream& out) {
  out << "n,l,d,mode,node_median_ms,receiver_median_ms,payload_bytes,"
         "recv_g1_exp,recv_g2_exp,recv_gt_exp,recv_pairings,"
         "node_g1_exp,node_g2_exp,node_gt_exp,node_pairings\n";
}

void write_csv_row(std::ostream& out, const BenchRow& r) {
  out << r.n << ',' << r.attr_count << ',' << r.disclosed << ',' << to_string(r.mode) << ','
      << std::fixed << std::setprecision(3) << r.node_median_ms << ',' << r.receiver_median_ms
      << std::defaultfloat << ',' << r.payload_bytes << ',' << r.receiver_counts.g1_exp << ','
      << r.receiver_counts.g2_exp << ',' << r.receiver_counts.gt_exp << ','
      << r.receiver_counts.pairings << ',' << r.node_counts.g1_exp << ',' << r.node_counts.g2_exp
      << ',' << r.node_counts.gt_exp << ',' << r.node_counts.pairings << '\n';
}

}  // namespace aqkd::bench
