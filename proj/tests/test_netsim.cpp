// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <functional>

#include "aqkd/netsim.hpp"

namespace aqkd::netsim {
namespace {

constexpr std::uint64_t kNow = 1'700'000'000;

std::vector<std::string> labels4() { return {"a", "b", "c", "d"}; }

Policy policy4() {
  Policy p("net", 4);
  p.require(0, "a").require(2, "c");
  return p;
}

// rows x cols grid; row r runs e<r> -> m<r>_1 .. -> x<r>, rungs between rows.
GraphSpec ladder(std::size_t rows, std::size_t cols) {
  GraphSpec s;
  auto id = [&](std::size_t r, std::size_t c) {
    if (c == 0) return "e" + std::to_string(r);
    if (c + 1 == cols) return "x" + std::to_string(r);
    return "m" + std::to_string(r) + "_" + std::to_string(c);
  };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) s.nodes.push_back({id(r, c), labels4()});
    s.entries.push_back(id(r, 0));
    s.exits.push_back(id(r, cols - 1));
    for (std::size_t c = 0; c + 1 < cols; ++c) s.edges.emplace_back(id(r, c), id(r, c + 1));
    if (r + 1 < rows) {
      for (std::size_t c = 0; c < cols; ++c) s.edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return s;
}

RouteSpec ladder_rows(std::size_t rows, std::size_t cols) {
  const auto spec = ladder(rows, cols);
  RouteSpec out;
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<std::string> p;
    for (std::size_t c = 0; c < cols; ++c) p.push_back(spec.nodes[i * cols + c].id);
    out.paths.push_back(p);
  }
  return out;
}

struct NetTest : ::testing::Test {
  SeededRng rng{91};
  PublicParams pp = PublicParams::derive(4);
  std::shared_ptr<Issuer> issuer = std::make_shared<Issuer>(pp, IssuerKeyPair::generate(pp, rng));
  NetworkGraph g = NetworkGraph::build(ladder(3, 4), issuer, rng);
  RouteSpec rows = ladder_rows(3, 4);
  Policy policy = policy4();
};

TEST(GraphSpec, ParseAndPrint) {
  const auto text =
      "# demo\nnode A attrs a,b\nnode B attrs a,b  # trailing\nedge A B\nentry A\nexit B\n";
  const auto s = GraphSpec::parse(text);
  ASSERT_EQ(s.nodes.size(), 2u);
  EXPECT_EQ(s.nodes[1].attr_labels, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(s.edges.size(), 1u);
  const auto again = GraphSpec::parse(s.to_text());
  EXPECT_EQ(again.to_text(), s.to_text());
  EXPECT_THROW((void)GraphSpec::parse("node A a,b\n"), ConfigError);
  EXPECT_THROW((void)GraphSpec::parse("edge A\n"), ConfigError);
  EXPECT_THROW((void)GraphSpec::parse("vertex A\n"), ConfigError);
}

TEST(GraphBuild, RejectsInconsistentSpecs) {
  SeededRng rng(92);
  const auto pp = PublicParams::derive(2);
  auto issuer = std::make_shared<Issuer>(pp, IssuerKeyPair::generate(pp, rng));
  auto build = [&](const char* text) { return NetworkGraph::build(GraphSpec::parse(text), issuer, rng); };
  EXPECT_THROW(build("node A attrs a,b\nnode A attrs a,b\n"), ConfigError);
  EXPECT_THROW(build("node A attrs a,b\nedge A A\n"), ConfigError);
  EXPECT_THROW(build("node A attrs a,b\nedge A B\n"), ConfigError);
  EXPECT_THROW(build("node A attrs a\n"), ConfigError);
  EXPECT_THROW(build("node A attrs a,b\nnode B attrs a,b\nedge A B\nedge B A\n"), ConfigError);
  EXPECT_THROW(build("node A attrs a,b\nentry Z\n"), ConfigError);
  const auto g = build("node A attrs a,b\nnode B attrs a,b\nedge A B\n");
  EXPECT_EQ(g.entries().size(), 2u);
  EXPECT_EQ(g.node("A").directory.count("B"), 1u);
  EXPECT_EQ(g.node("A").directory.at("B"), g.node("B").keys.pk);
  EXPECT_NO_THROW(check_node_record(g.params(), g.node("A"), g.issuer_pk()));
}

// ---- routing against exhaustive search ---------------------------------------

std::vector<std::vector<std::string>> simple_paths(const Adjacency& adj, const std::string& s,
                                                   const std::string& t) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> cur{s};
  std::function<void()> dfs = [&] {
    if (cur.back() == t) {
      out.push_back(cur);
      return;
    }
    for (const auto& n : adj.at(cur.back())) {
      if (std::find(cur.begin(), cur.end(), n) != cur.end()) continue;
      cur.push_back(n);
      dfs();
      cur.pop_back();
    }
  };
  dfs();
  return out;
}

// Largest family of paths whose `key` node sets are pairwise disjoint.
std::size_t max_packing(const std::vector<std::set<std::string>>& sets, std::size_t from,
                        std::set<std::string>& used) {
  std::size_t best = 0;
  for (std::size_t i = from; i < sets.size(); ++i) {
    bool clash = false;
    for (const auto& v : sets[i]) clash = clash || used.count(v);
    if (clash) continue;
    for (const auto& v : sets[i]) used.insert(v);
    // an interior-free path can only be used once
    best = std::max(best, 1 + max_packing(sets, i + 1, used));
    for (const auto& v : sets[i]) used.erase(v);
  }
  return best;
}

Adjacency random_adjacency(std::size_t n, double p, Rng& rng) {
  Adjacency adj;
  for (std::size_t i = 0; i < n; ++i) adj["v" + std::to_string(i)];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform(1000) < p * 1000) {
        adj["v" + std::to_string(i)].insert("v" + std::to_string(j));
        adj["v" + std::to_string(j)].insert("v" + std::to_string(i));
      }
    }
  }
  return adj;
}

TEST(Routing, FlowMatchesExhaustiveSearch) {
  SeededRng rng(93);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + rng.uniform(4);
    const auto adj = random_adjacency(n, 0.3 + 0.1 * (trial % 5), rng);
    const std::string s = "v0", t = "v" + std::to_string(n - 1);
    const auto paths = simple_paths(adj, s, t);
    std::vector<std::set<std::string>> interiors;
    bool direct = false;
    for (const auto& p : paths) {
      if (p.size() == 2) {
        direct = true;
        continue;
      }
      interiors.emplace_back(p.begin() + 1, p.end() - 1);
    }
    std::set<std::string> used;
    const std::size_t best = max_packing(interiors, 0, used) + (direct ? 1 : 0);
    for (std::size_t k = 1; k <= best; ++k) {
      const auto r = find_disjoint_paths(adj, s, t, k);
      EXPECT_EQ(r.paths.size(), k);
      EXPECT_EQ(check_disjoint_paths(adj, s, t, r), std::nullopt) << "trial " << trial;
    }
    EXPECT_THROW((void)find_disjoint_paths(adj, s, t, best + 1), NoSuchRoutes) << "trial " << trial;
  }
}

TEST(Routing, CheckerCatchesBadRouteSets) {
  Adjacency adj{{"s", {"a", "b"}}, {"a", {"s", "t", "b"}}, {"b", {"s", "t", "a"}}, {"t", {"a", "b"}}};
  EXPECT_EQ(check_disjoint_paths(adj, "s", "t", {{{"s", "a", "t"}, {"s", "b", "t"}}}), std::nullopt);
  EXPECT_NE(check_disjoint_paths(adj, "s", "t", {{{"s", "a", "t"}, {"s", "a", "b", "t"}}}), std::nullopt);
  EXPECT_NE(check_disjoint_paths(adj, "s", "t", {{{"s", "t"}}}), std::nullopt);
  EXPECT_NE(check_disjoint_paths(adj, "s", "t", {{{"s", "a", "a", "t"}}}), std::nullopt);
  EXPECT_NE(check_disjoint_paths(adj, "s", "t", {{{"a", "b", "t"}}}), std::nullopt);
}

TEST_F(NetTest, SessionRoutesMatchExhaustiveSearch) {
  SeededRng r(94);
  for (int trial = 0; trial < 15; ++trial) {
    const auto spec = random_graph_spec(6 + r.uniform(3), 0.25, labels4(), 2 + r.uniform(2), 2, r);
    auto graph = NetworkGraph::build(spec, issuer, r);
    std::vector<std::set<std::string>> sets;
    for (const auto& e : graph.entries()) {
      for (const auto& x : graph.exits()) {
        for (const auto& p : simple_paths(graph.adjacency(), e, x)) sets.emplace_back(p.begin(), p.end());
      }
    }
    std::set<std::string> used;
    const auto best = max_packing(sets, 0, used);
    for (std::size_t k = 1; k <= best; ++k) {
      const auto routes = find_session_routes(graph, k);
      EXPECT_EQ(check_session_routes(graph, routes), std::nullopt);
    }
    EXPECT_THROW((void)find_session_routes(graph, best + 1), NoSuchRoutes);
  }
}

TEST(RandomGraph, ConnectedWithSeparateEndpoints) {
  SeededRng rng(95);
  for (int i = 0; i < 20; ++i) {
    const auto s = random_graph_spec(5 + rng.uniform(20), 0.1, {"x"}, 3, 3, rng);
    std::set<std::string> entries(s.entries.begin(), s.entries.end());
    for (const auto& x : s.exits) EXPECT_FALSE(entries.count(x));
    Adjacency adj;
    for (const auto& n : s.nodes) adj[n.id];
    for (const auto& [a, b] : s.edges) {
      adj[a].insert(b);
      adj[b].insert(a);
    }
    std::set<std::string> seen{s.nodes[0].id};
    std::vector<std::string> todo{s.nodes[0].id};
    while (!todo.empty()) {
      auto v = todo.back();
      todo.pop_back();
      for (const auto& w : adj[v]) {
        if (seen.insert(w).second) todo.push_back(w);
      }
    }
    EXPECT_EQ(seen.size(), s.nodes.size());
  }
}

// ---- sessions and faults ------------------------------------------------------

TEST_F(NetTest, HonestSessionAccepted) {
  const auto rep = run_session(g, rows, policy, {}, rng);
  ASSERT_TRUE(rep.accepted());
  EXPECT_EQ(*rep.verdict->n_prime, 3u);
  EXPECT_EQ(rep.hop_counts.size(), 12u);
  EXPECT_EQ(rep.payload_bytes, 3 * closed_form_payload_bytes(4, 4, 2));
  EXPECT_EQ(audit_transcript(pp, rep.transcript, g.prepared_issuer(), policy).describe(), "n'=3");
  EXPECT_THROW((void)run_session(g, RouteSpec{{{"e0", "m1_1"}}}, policy, {}, rng), std::invalid_argument);
}

TEST_F(NetTest, SameSeedSameTranscript) {
  auto run = [&](std::uint64_t seed) {
    SeededRng r(seed);
    auto issuer2 = std::make_shared<Issuer>(pp, IssuerKeyPair::generate(pp, r));
    auto graph = NetworkGraph::build(ladder(2, 3), issuer2, r);
    return run_session(graph, ladder_rows(2, 3), policy, {}, r).transcript.finals;
  };
  EXPECT_EQ(run(5), run(5));
  EXPECT_NE(run(5), run(6));
}

RejectCode outcome(const SessionReport& r) {
  EXPECT_FALSE(r.accepted());
  return r.outcome().value_or(RejectCode::ProofInvalid);
}

TEST_F(NetTest, ShareNodeGivesDuplicatePseudonym) {
  const auto rep = run_session(g, rows, policy, FaultPlan::parse("share-node"), rng);
  EXPECT_EQ(outcome(rep), RejectCode::DuplicatePseudonym);
  EXPECT_EQ(rep.routes.paths[1].back(), rows.paths[0].back());
  EXPECT_EQ(run_session(g, RouteSpec{{rows.paths[0]}}, policy, {}, rng).accepted(), true);
  EXPECT_THROW((void)run_session(g, RouteSpec{{rows.paths[0]}}, policy,
                                 FaultPlan::parse("share-node"), rng),
               FaultNotApplicable);
}

TEST_F(NetTest, SkipAppendCaughtByNextNode) {
  for (std::size_t hop = 0; hop < 4; ++hop) {
    auto plan = FaultPlan::parse("skip-append");
    plan.hop = hop;
    const auto rep = run_session(g, rows, policy, plan, rng);
    EXPECT_EQ(outcome(rep), RejectCode::LinkProofInvalid);
    EXPECT_FALSE(rep.verdict.has_value());
  }
}

TEST_F(NetTest, UncertifiedAndPolicyViolatingNodesRejected) {
  for (const char* name : {"uncertified", "policy-violation"}) {
    for (std::size_t hop = 0; hop < 4; ++hop) {
      auto plan = FaultPlan::parse(name);
      plan.path = hop % 3;
      plan.hop = hop;
      const auto code = outcome(run_session(g, rows, policy, plan, rng));
      EXPECT_TRUE(code == RejectCode::ProofInvalid || code == RejectCode::LinkProofInvalid)
          << name << " hop " << hop << " got " << to_string(code);
    }
  }
  EXPECT_THROW((void)run_session(g, rows, Policy("open", 4), FaultPlan::parse("policy-violation"), rng),
               FaultNotApplicable);
}

TEST_F(NetTest, ReplayedSidRefusedAtEntry) {
  EXPECT_EQ(outcome(run_session(g, rows, policy, FaultPlan::parse("replay-sid"), rng)),
            RejectCode::DuplicateSession);
}

TEST_F(NetTest, TamperEveryField) {
  for (auto field : kAllHopFields) {
    for (std::size_t hop = 0; hop < 4; ++hop) {
      FaultPlan plan;
      plan.kind = FaultKind::TamperHop;
      plan.field = field;
      plan.path = hop % 3;
      plan.hop = hop;
      const auto code = outcome(run_session(g, rows, policy, plan, rng));
      EXPECT_TRUE(code == RejectCode::ProofInvalid || code == RejectCode::DecodeError)
          << to_string(field) << " got " << to_string(code);
    }
  }
  FaultPlan open;
  open.kind = FaultKind::TamperHop;
  open.field = HopField::ZHidden;
  Policy all("all", 4);
  for (std::size_t i = 0; i < 4; ++i) all.require(i, labels4()[i]);
  EXPECT_THROW((void)run_session(g, rows, all, open, rng), FaultNotApplicable);
}

TEST(FaultPlan, Parse) {
  EXPECT_EQ(FaultPlan::parse("none").kind, FaultKind::None);
  EXPECT_EQ(FaultPlan::parse("tamper").kind, FaultKind::TamperHop);
  EXPECT_EQ(FaultPlan::parse("tamper:z_beta").field, HopField::ZBeta);
  EXPECT_THROW((void)FaultPlan::parse("tamper:zz"), ConfigError);
  EXPECT_THROW((void)FaultPlan::parse("explode"), ConfigError);
}

// ---- experiments ----------------------------------------------------------------

TEST_F(NetTest, PolicyComplianceGameNeverWon) {
  std::vector<FaultPlan> plans;
  for (const char* name : {"none", "share-node", "skip-append", "uncertified", "policy-violation", "replay-sid"}) {
    plans.push_back(FaultPlan::parse(name));
  }
  for (auto f : kAllHopFields) {
    FaultPlan p;
    p.kind = FaultKind::TamperHop;
    p.field = f;
    plans.push_back(p);
  }
  for (const auto& p : plans) {
    EXPECT_EQ(run_policy_compliance_experiment(g, p, rows, policy, rng), 0) << to_string(p.kind);
  }
}

TEST_F(NetTest, WireDescriptionCoversEveryByte) {
  const auto rep = run_session(g, rows, policy, {}, rng);
  for (const auto& wire : rep.transcript.finals) {
    std::size_t at = 0;
    for (const auto& f : describe_wire(wire)) {
      EXPECT_EQ(f.offset, at) << f.name;
      at += f.size;
    }
    EXPECT_EQ(at, wire.size());
  }
}

SessionId sid_of(std::uint8_t tag) {
  SessionId s;
  s.nonce.fill(tag);
  s.timestamp = kNow;
  return s;
}

TEST_F(NetTest, PathHidingHarnessReportIsClean) {
  PathHidingExperiment exp(g, policy);
  EXPECT_TRUE(exp.oracle(sid_of(1), rows, rng).accepted());
  // same lengths and endpoints, different interior nodes
  const RouteSpec left{{{"e0", "e1", "m1_1", "m1_2", "x1", "x0"}, {"e2", "m2_1", "m2_2", "x2"}}};
  const RouteSpec right{{{"e0", "m0_1", "m1_1", "m1_2", "m0_2", "x0"}, {"e2", "m2_1", "m2_2", "x2"}}};
  const auto rep = exp.challenge(sid_of(2), left, right, rng);
  EXPECT_TRUE(rep.both_accepted);
  EXPECT_TRUE(rep.shapes_match);
  EXPECT_TRUE(rep.topology_fields.empty());
  EXPECT_TRUE(rep.leaked_identifiers.empty());
  EXPECT_TRUE(rep.nyms_fresh);
  EXPECT_TRUE(rep.clean());
}

using Reason = InvalidChallenge::Reason;

Reason reason_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InvalidChallenge& e) {
    return e.reason();
  }
  ADD_FAILURE() << "no InvalidChallenge";
  return Reason::NotARoute;
}

TEST_F(NetTest, PathHidingAbortRules) {
  PathHidingExperiment exp(g, policy);
  const RouteSpec a{{rows.paths[0]}};
  const RouteSpec b{{{"e0", "m0_1", "m1_1", "m1_2", "m0_2", "x0"}}};
  exp.oracle(sid_of(1), a, rng);
  EXPECT_EQ(reason_of([&] { exp.oracle(sid_of(1), a, rng); }), Reason::RepeatedSid);
  EXPECT_EQ(reason_of([&] { exp.challenge(sid_of(1), a, a, rng); }), Reason::RepeatedSid);
  const RouteSpec loop{{{"e0", "m0_1", "m1_1", "m0_1", "m0_2", "x0"}}};
  EXPECT_EQ(reason_of([&] { exp.challenge(sid_of(3), loop, loop, rng); }), Reason::Loop);
  const RouteSpec overlap{{rows.paths[0], {"e1", "m1_1", "m0_1", "m0_2", "m1_2", "x1"}}};
  EXPECT_EQ(reason_of([&] { exp.challenge(sid_of(3), overlap, overlap, rng); }), Reason::NotDisjoint);
  EXPECT_EQ(reason_of([&] { exp.challenge(sid_of(3), a, b, rng); }), Reason::MismatchedShape);
  const RouteSpec two{{rows.paths[0], rows.paths[1]}};
  EXPECT_EQ(reason_of([&] { exp.challenge(sid_of(3), a, two, rng); }), Reason::MismatchedShape);
  // same length, different entry and exit
  EXPECT_EQ(reason_of([&] { exp.challenge(sid_of(3), RouteSpec{{{"e0", "m0_1", "m0_2", "x0"}}},
                                          RouteSpec{{{"e1", "m1_1", "m1_2", "x1"}}}, rng); }),
            Reason::MismatchedShape);

  // a node whose attributes miss the policy makes any challenge through it invalid
  auto& bad = g.mutable_node("m1_1");
  bad.attrs.values[0] = attribute_scalar("nope");
  const RouteSpec via_bad{{{"e1", "m1_1", "m1_2", "x1"}}};
  const RouteSpec plain{{rows.paths[1]}};
  EXPECT_EQ(reason_of([&] { exp.challenge(sid_of(3), via_bad, plain, rng); }), Reason::PolicyUnsatisfied);

  EXPECT_EQ(reason_of([&] { exp.challenge(sid_of(3), RouteSpec{{{"e0", "x0"}}}, RouteSpec{{{"e0", "x0"}}}, rng); }),
            Reason::NotARoute);
  exp.challenge(sid_of(4), a, a, rng);
  EXPECT_EQ(reason_of([&] { exp.challenge(sid_of(5), a, a, rng); }), Reason::ActivatedBefore);
}

}  // namespace
}  // namespace aqkd::netsim
