// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sstream>

#include "aqkd/bench.hpp"

namespace aqkd::bench {
namespace {

TEST(Stats, FitRecoversExactLine) {
  const auto f = fit_line({1, 2, 3, 4}, {5, 7, 9, 11});
  EXPECT_NEAR(f.slope, 2.0, 1e-12);
  EXPECT_NEAR(f.intercept, 3.0, 1e-12);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
  const auto noisy = fit_line({1, 2, 3, 4}, {1, 3, 2, 4});
  EXPECT_NEAR(noisy.slope, 0.8, 1e-12);
  EXPECT_NEAR(noisy.r_squared, 0.64, 1e-12);
  EXPECT_THROW((void)fit_line({1}, {1}), std::invalid_argument);
  EXPECT_THROW((void)fit_line({2, 2}, {1, 3}), std::invalid_argument);
}

TEST(Stats, Median) {
  EXPECT_EQ(median({3, 1, 2}), 2);
  EXPECT_EQ(median({4, 1, 3, 2}), 2.5);
}

TEST(Chains, ShapeAndRoutes) {
  const auto labels = bench_labels(4);
  EXPECT_EQ(labels, (std::vector<std::string>{"a0", "a1", "a2", "a3"}));
  const auto spec = chain_graph(10, 3, labels);
  EXPECT_EQ(spec.nodes.size(), 10u);
  const auto routes = chain_routes(10, 3);
  EXPECT_EQ(routes.total_hops(), 10u);
  std::set<std::size_t> lens;
  for (const auto& p : routes.paths) lens.insert(p.size());
  EXPECT_LE(*lens.rbegin() - *lens.begin(), 1u);
  SeededRng rng(111);
  const auto pp = PublicParams::derive(4);
  auto g = netsim::NetworkGraph::build(spec, std::make_shared<Issuer>(pp, IssuerKeyPair::generate(pp, rng)),
                                       rng);
  EXPECT_EQ(netsim::check_session_routes(g, routes), std::nullopt);
  EXPECT_EQ(bench_policy(4).disclosed_count(), 2u);
}

TEST(Config, Validation) {
  BenchConfig c;
  EXPECT_NO_THROW(c.validate());
  c.repetitions = 2;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = BenchConfig{};
  c.node_counts = {2};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.modes = {Mode::SinglePath};
  EXPECT_NO_THROW(c.validate());
}

TEST(Cell, CountsAndPayloadFollowClosedForms) {
  BenchConfig cfg;
  for (auto mode : {Mode::SinglePath, Mode::MultiPath}) {
    const auto row = run_cell(6, 4, mode, cfg);
    const std::size_t paths = mode == Mode::SinglePath ? 1 : 3;
    EXPECT_EQ(row.disclosed, 2u);
    EXPECT_EQ(row.payload_bytes, closed_form_payload_bytes(6, 4, 2) + 64 * (paths - 1));
    EXPECT_EQ(row.receiver_counts, (OpCounters{(4 + 3) * 6 + 4 * paths, 0, 24, 24}));
    EXPECT_EQ(row.node_counts, (OpCounters{2 + 13, 1, 2, 3}));
    EXPECT_GT(row.receiver_median_ms, 0);
  }
}

TEST(Csv, HeaderAndRowAgree) {
  std::ostringstream out;
  write_csv_header(out);
  BenchRow r;
  r.n = 10;
  r.attr_count = 20;
  write_csv_row(out, r);
  std::istringstream in(out.str());
  std::string h, row;
  std::getline(in, h);
  std::getline(in, row);
  EXPECT_EQ(std::count(h.begin(), h.end(), ','), std::count(row.begin(), row.end(), ','));
  EXPECT_EQ(h.rfind("n,l,d,mode", 0), 0u);
}

}  // namespace
}  // namespace aqkd::bench
