// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0
// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "aqkd/bench.hpp"
#include "aqkd/netsim.hpp"

using namespace aqkd;
using namespace aqkd::netsim;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void report(int id, const char* name, Outcome& o, double secs) {
  std::printf("%s %d %s:%s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.str().c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

void run(int id, const char* name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  report(id, name, o, seconds_since(t0));
}

std::vector<std::string> labels(std::size_t l) { return bench::bench_labels(l); }

Policy first_d(std::size_t l, std::size_t d) {
  Policy p("acceptance", l);
  const auto ls = labels(l);
  for (std::size_t i = 0; i < d; ++i) p.require(i, ls[i]);
  return p;
}

struct World {
  PublicParams pp;
  std::shared_ptr<Issuer> issuer;
  NetworkGraph g;
};

World world(const GraphSpec& spec, std::size_t l, Rng& rng) {
  auto pp = PublicParams::derive(l);
  auto issuer = std::make_shared<Issuer>(pp, IssuerKeyPair::generate(pp, rng));
  auto g = NetworkGraph::build(spec, issuer, rng);
  return {pp, issuer, std::move(g)};
}

// r rows of c nodes, entries in the first column, exits in the last, rungs
// between neighboring rows.
GraphSpec ladder(std::size_t rows, std::size_t cols, const std::vector<std::string>& ls) {
  GraphSpec s;
  auto id = [](std::size_t r, std::size_t c) { return "r" + std::to_string(r) + "c" + std::to_string(c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      s.nodes.push_back({id(r, c), ls});
      if (c > 0) s.edges.emplace_back(id(r, c - 1), id(r, c));
      if (r > 0) s.edges.emplace_back(id(r - 1, c), id(r, c));
    }
    s.entries.push_back(id(r, 0));
    s.exits.push_back(id(r, cols - 1));
  }
  return s;
}

RouteSpec ladder_rows(std::size_t rows, std::size_t cols) {
  RouteSpec out;
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::string> p;
    for (std::size_t c = 0; c < cols; ++c) p.push_back("r" + std::to_string(r) + "c" + std::to_string(c));
    out.paths.push_back(p);
  }
  return out;
}

// ---- 1 ------------------------------------------------------------------------

void bandwidth(Outcome& o) {
  const auto t0 = Clock::now();
  SeededRng rng(1001);
  auto w = world(bench::chain_graph(2, 1, labels(20)), 20, rng);
  const auto rep = run_session(w.g, bench::chain_routes(2, 1), first_d(20, 10), {}, rng);
  o.require(rep.accepted(), "two-hop seed session accepted");
  auto msg = deserialize_hop_message(rep.transcript.finals.at(0));
  const auto seed_hops = msg.hops;
  msg.hops.clear();
  for (std::size_t i = 0; i < 100; ++i) msg.hops.push_back(seed_hops[i % 2]);
  const auto wire = serialize_hop_message(msg);
  const auto decoded = deserialize_hop_message(wire);
  const std::size_t formula = 3 * 100 * 48 + 100 * 96 + ((4 + 10) * 100 + 2) * 32;
  const auto measured = payload_bytes(decoded);
  const auto secs = seconds_since(t0);
  o.detail << " n=100 l=20 d=10 payload=" << measured << " B, formula=" << formula
           << " B, wire=" << wire.size() << " B";
  o.require(formula == 68864, "formula evaluates to 68864");
  o.require(measured == formula, "payload equals formula");
  o.require(closed_form_payload_bytes(100, 20, 10) == formula, "library closed form");
  o.require(secs < 1.0, "under 1 s");
}

// ---- 2 ------------------------------------------------------------------------

void counts(Outcome& o) {
  for (auto [n, l] : {std::pair<std::size_t, std::size_t>{10, 10}, {50, 20}, {100, 20}}) {
    for (std::size_t d : {std::size_t{0}, l / 2}) {
      SeededRng rng(2000 + n + d);
      auto w = world(bench::chain_graph(n, 1, labels(l)), l, rng);
      const auto rep = run_session(w.g, bench::chain_routes(n, 1), first_d(l, d), {}, rng);
      const std::string cell = "(n=" + std::to_string(n) + ",l=" + std::to_string(l) +
                               ",d=" + std::to_string(d) + ")";
      o.require(rep.accepted(), cell + " accepted");
      const OpCounters recv{(l + 3) * n + 4, 0, 4 * n, 4 * n};
      o.require(rep.receiver_counts == recv, cell + " receiver " + rep.receiver_counts.to_string());
      // Table rows: l+13 G1, 1 G2, 2 GT, 4 pairings for a forwarding node
      bool node_ok = true;
      for (std::size_t j = 1; j < rep.hop_counts.size(); ++j) {
        const auto& c = rep.hop_counts[j];
        const bool pairings_ok = c.pairings + 1 >= 4 && c.pairings <= 4 + 1;
        node_ok = node_ok && c.g1_exp == (l - d) + 13 && c.g2_exp == 1 && c.gt_exp == 2 && pairings_ok;
        if (d == 0) node_ok = node_ok && c.g1_exp == l + 13;
      }
      const auto& entry = rep.hop_counts.at(0);
      node_ok = node_ok && entry.g1_exp == (l - d) + 9 && entry.g2_exp == 1 && entry.gt_exp == 2;
      o.require(node_ok, cell + " node rows " + rep.hop_counts.at(1).to_string());
      if (d == l / 2) {
        o.detail << " " << cell << " recv{" << rep.receiver_counts.to_string() << "} node{"
                 << rep.hop_counts.at(1).to_string() << "}";
      }
    }
  }
}

// ---- 3 and 4 ----------------------------------------------------------------

std::vector<bench::BenchRow> bench_rows;

void runtime(Outcome& o) {
  bench::BenchConfig cfg;
  cfg.attr_counts = {20};
  cfg.repetitions = 7;
  cfg.seed = 3003;
  bench_rows = bench::run_bench(cfg);
  for (auto mode : cfg.modes) {
    std::vector<double> x, y;
    double at100 = 0;
    for (const auto& r : bench_rows) {
      if (r.mode != mode) continue;
      x.push_back(static_cast<double>(r.n));
      y.push_back(r.receiver_median_ms);
      if (r.n == 100) at100 = r.receiver_median_ms;
    }
    const auto fit = bench::fit_line(x, y);
    const std::string m(bench::to_string(mode));
    o.detail << " " << m << ": n=100 receiver " << at100 << " ms, slope " << fit.slope
             << " ms/hop, R^2=" << fit.r_squared << ";";
    o.require(at100 > 0 && at100 <= 2500.0, m + " receiver at n=100 within 2.5 s");
    o.require(fit.r_squared >= 0.99, m + " R^2 >= 0.99");
  }
}

void node_cost(Outcome& o) {
  if (bench_rows.empty()) {
    bench::BenchConfig cfg;
    cfg.attr_counts = {20};
    cfg.node_counts = {10, 50};
    bench_rows = bench::run_bench(cfg);
  }
  double worst = 0;
  for (const auto& r : bench_rows) {
    if (r.attr_count == 20) worst = std::max(worst, r.node_median_ms);
  }
  o.detail << " l=20 worst per-cell median node_forward " << worst << " ms";
  o.require(worst > 0 && worst <= 50.0, "median node time within 50 ms");
}

// ---- 5 ------------------------------------------------------------------------

bool designated(FaultKind kind, RejectCode code) {
  switch (kind) {
    case FaultKind::ShareNodeAcrossPaths: return code == RejectCode::DuplicatePseudonym;
    case FaultKind::SkipAppendAndRelay: return code == RejectCode::LinkProofInvalid;
    case FaultKind::PolicyViolatingAttrs:
    case FaultKind::UncertifiedNodeInject:
      return code == RejectCode::ProofInvalid || code == RejectCode::LinkProofInvalid;
    case FaultKind::ReplaySid: return code == RejectCode::DuplicateSession;
    case FaultKind::TamperHop: return code == RejectCode::ProofInvalid || code == RejectCode::DecodeError;
    case FaultKind::None: return false;
  }
  return false;
}

void fault_matrix(Outcome& o) {
  SeededRng setup(5005);
  auto w = world(ladder(3, 3, labels(4)), 4, setup);
  const auto routes = ladder_rows(3, 3);
  const auto policy = first_d(4, 2);
  const FaultKind kinds[] = {FaultKind::ShareNodeAcrossPaths, FaultKind::SkipAppendAndRelay,
                             FaultKind::UncertifiedNodeInject, FaultKind::PolicyViolatingAttrs,
                             FaultKind::ReplaySid, FaultKind::TamperHop};
  std::size_t false_accepts = 0;
  for (auto kind : kinds) {
    std::map<std::string, std::size_t> seen;
    std::size_t good = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      SeededRng rng(seed, static_cast<std::uint64_t>(kind));
      FaultPlan plan;
      plan.kind = kind;
      plan.path = rng.uniform(3);
      plan.hop = rng.uniform(3);
      plan.field = kAllHopFields[seed % std::size(kAllHopFields)];
      const auto guards = w.g.snapshot_guards();
      const auto rep = run_session(w.g, routes, policy, plan, rng);
      if (rep.accepted()) {
        ++false_accepts;
        continue;
      }
      const auto code = *rep.outcome();
      ++seen[std::string(to_string(code))];
      if (designated(kind, code)) ++good;
      // same seed and node state, same verdict and transcript
      if (seed < 5) {
        const auto after = w.g.snapshot_guards();
        w.g.restore_guards(guards);
        SeededRng again(seed, static_cast<std::uint64_t>(kind));
        (void)again.uniform(3);
        (void)again.uniform(3);
        const auto rep2 = run_session(w.g, routes, policy, plan, again);
        o.require(rep2.outcome() == rep.outcome() && rep2.transcript.finals == rep.transcript.finals,
                  std::string(to_string(kind)) + " deterministic");
        w.g.restore_guards(after);
      }
    }
    o.detail << " " << to_string(kind) << ":" << good << "/100";
    if (good != 100) {
      o.detail << "{";
      for (const auto& [k, v] : seen) o.detail << k << "=" << v << ",";
      o.detail << "}";
    }
    o.require(good == 100, std::string(to_string(kind)) + " designated rejection");
  }
  o.detail << "; false accepts " << false_accepts;
  o.require(false_accepts == 0, "zero false accepts");
}

// ---- 6 ------------------------------------------------------------------------

void completeness(Outcome& o) {
  SeededRng rng(6006);
  const std::size_t l = 2;
  const auto ls = labels(l);
  const auto policy = first_d(l, 1);
  const auto pp = PublicParams::derive(l);
  auto issuer = std::make_shared<Issuer>(pp, IssuerKeyPair::generate(pp, rng));
  std::size_t sessions = 0, accepted = 0, checked = 0, hops = 0;
  std::map<std::size_t, std::size_t> by_paths;
  std::size_t min_nodes = 1000, max_nodes = 0;
  for (std::size_t gi = 0; gi < 50; ++gi) {
    const std::size_t n = 5 + (gi * 25) / 49;  // 5 .. 30
    min_nodes = std::min(min_nodes, n);
    max_nodes = std::max(max_nodes, n);
    const std::size_t ends = std::min<std::size_t>(3, n / 2);
    const auto spec = random_graph_spec(n, 2.0 / static_cast<double>(n), ls, ends, ends, rng);
    auto g = NetworkGraph::build(spec, issuer, rng);
    for (std::size_t s = 0; s < 20; ++s) {
      std::size_t k = 1 + rng.uniform(3);
      RouteSpec routes;
      for (;; --k) {
        try {
          routes = find_session_routes(g, k);
          break;
        } catch (const NoSuchRoutes&) {
          if (k == 1) throw;
        }
      }
      if (!check_session_routes(g, routes)) ++checked;
      const auto rep = run_session(g, routes, policy, {}, rng);
      ++sessions;
      ++by_paths[routes.paths.size()];
      hops += routes.total_hops();
      if (rep.accepted() && rep.verdict->n_prime == routes.paths.size()) ++accepted;
    }
  }
  o.detail << " " << accepted << "/" << sessions << " accepted with n'=n over 50 graphs of " << min_nodes
           << "-" << max_nodes << " nodes; paths 1/2/3 = " << by_paths[1] << "/" << by_paths[2] << "/"
           << by_paths[3] << "; " << hops << " hops; independent route check " << checked << "/" << sessions;
  o.require(sessions == 1000, "1000 sessions");
  o.require(checked == sessions, "route sets pass the independent checker");
  o.require(accepted == sessions, "all accepted");
}

// ---- 7 ------------------------------------------------------------------------

void harness(Outcome& o) {
  SeededRng rng(7007);
  auto w = world(ladder(3, 3, labels(4)), 4, rng);
  const auto routes = ladder_rows(3, 3);
  const auto policy = first_d(4, 2);

  std::vector<FaultPlan> strategies;
  for (auto kind : {FaultKind::None, FaultKind::ShareNodeAcrossPaths, FaultKind::SkipAppendAndRelay,
                    FaultKind::UncertifiedNodeInject, FaultKind::PolicyViolatingAttrs, FaultKind::ReplaySid}) {
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t h = 0; h < 3; ++h) strategies.push_back({kind, p, h, HopField::Nym});
    }
  }
  for (auto f : kAllHopFields) {
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t h = 0; h < 3; ++h) strategies.push_back({FaultKind::TamperHop, p, h, f});
    }
  }
  std::size_t wins = 0;
  for (const auto& s : strategies) wins += run_policy_compliance_experiment(w.g, s, routes, policy, rng);
  o.detail << " policy-compliance game won " << wins << "/" << strategies.size() << ";";
  o.require(wins == 0, "policy-compliance game never won");

  auto sid = [](std::uint8_t tag) {
    SessionId s;
    s.nonce.fill(tag);
    s.timestamp = 1'700'000'000;
    return s;
  };
  PathHidingExperiment exp(w.g, policy);
  o.require(exp.oracle(sid(1), routes, rng).accepted(), "oracle session accepted");
  const RouteSpec left{{{"r0c0", "r0c1", "r0c2"}, {"r2c0", "r2c1", "r2c2"}}};
  const RouteSpec right{{{"r0c0", "r1c0", "r1c1", "r1c2", "r0c2"}, {"r2c0", "r2c1", "r2c2"}}};
  const RouteSpec left_long{{{"r0c0", "r0c1", "r1c1", "r1c2", "r0c2"}, {"r2c0", "r2c1", "r2c2"}}};

  using R = InvalidChallenge::Reason;
  std::map<R, bool> fired;
  auto expect_abort = [&](R want, const std::function<void()>& f) {
    try {
      f();
    } catch (const InvalidChallenge& e) {
      fired[want] = e.reason() == want;
      return;
    }
    fired[want] = false;
  };
  expect_abort(R::RepeatedSid, [&] { exp.challenge(sid(1), left_long, right, rng); });
  expect_abort(R::Loop, [&] {
    const RouteSpec loop{{{"r0c0", "r0c1", "r1c1", "r0c1", "r0c2"}, {"r2c0", "r2c1", "r2c2"}}};
    exp.challenge(sid(2), loop, right, rng);
  });
  expect_abort(R::NotDisjoint, [&] {
    const RouteSpec overlap{{{"r0c0", "r0c1", "r1c1", "r1c2", "r0c2"}, {"r2c0", "r1c0", "r1c1", "r2c1", "r2c2"}}};
    exp.challenge(sid(2), overlap, right, rng);
  });
  expect_abort(R::MismatchedShape, [&] { exp.challenge(sid(2), left, right, rng); });
  bool endpoint_rule = false;
  try {
    exp.challenge(sid(2), RouteSpec{{{"r0c0", "r0c1", "r0c2"}}}, RouteSpec{{{"r1c0", "r1c1", "r1c2"}}}, rng);
  } catch (const InvalidChallenge& e) {
    endpoint_rule = e.reason() == R::MismatchedShape;
  }
  {
    auto& liar = w.g.mutable_node("r1c1");
    const auto saved = liar.attrs;
    liar.attrs.values[0] = attribute_scalar("policy-violation");
    expect_abort(R::PolicyUnsatisfied, [&] { exp.challenge(sid(2), left_long, right, rng); });
    liar.attrs = saved;
  }
  const auto rep = exp.challenge(sid(3), left_long, right, rng);
  expect_abort(R::ActivatedBefore, [&] { exp.challenge(sid(4), left_long, right, rng); });

  std::size_t fired_count = 0;
  for (const auto& [reason, ok] : fired) fired_count += ok ? 1 : 0;
  o.detail << " abort rules fired " << fired_count << "/" << fired.size()
           << " (+entry/exit mismatch " << (endpoint_rule ? "yes" : "no") << ");"
           << " structure: shapes_match=" << rep.shapes_match << " topology_fields="
           << rep.topology_fields.size() << " leaked_ids=" << rep.leaked_identifiers.size()
           << " nyms_fresh=" << rep.nyms_fresh << " both_accepted=" << rep.both_accepted;
  o.require(fired_count == fired.size() && fired.size() == 6, "every abort rule fires");
  o.require(endpoint_rule, "entry/exit mismatch aborts");
  o.require(rep.clean(), "structural report clean");
  o.require(rep.topology_fields.empty(), "zero topology-bearing fields");
}

}  // namespace

int main() {
  run(1, "bandwidth exactness", bandwidth);
  run(2, "receiver and node operation counts", counts);
  run(3, "receiver runtime and linearity", runtime);
  run(4, "per-hop node cost", node_cost);
  run(5, "soundness fault matrix", fault_matrix);
  run(6, "completeness sweep", completeness);
  run(7, "experiment harness", harness);
  std::printf("summary: %d of 7 criteria failed\n", failures);
  return failures ? 1 : 0;
}
