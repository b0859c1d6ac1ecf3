// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <chrono>
#include <deque>

#include "aqkd/netsim.hpp"

namespace aqkd::netsim {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// Shortest walk from `from` to `to` avoiding `blocked` (endpoints excepted).
std::optional<std::vector<std::string>> bfs_walk(const Adjacency& adj, const std::string& from,
                                                 const std::string& to,
                                                 const std::set<std::string>& blocked) {
  std::map<std::string, std::string> parent;
  std::deque<std::string> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    if (u == to) break;
    for (const auto& v : adj.at(u)) {
      if (parent.count(v) || (v != to && blocked.count(v))) continue;
      parent[v] = u;
      queue.push_back(v);
    }
  }
  if (!parent.count(to)) return std::nullopt;
  std::vector<std::string> walk{to};
  while (walk.back() != from) walk.push_back(parent[walk.back()]);
  std::reverse(walk.begin(), walk.end());
  return walk;
}

using Slot = std::pair<std::size_t, std::size_t>;

struct Adversary {
  std::map<Slot, NodeRecord> replaced;
  std::set<Slot> ignore_policy;
  std::set<Slot> skip;
  std::set<std::string> noncompliant;
};

std::size_t clamp_index(std::size_t i, std::size_t size) { return std::min(i, size - 1); }

}  // namespace

std::string_view to_string(FaultKind kind) {
  switch (kind) {
    case FaultKind::None: return "none";
    case FaultKind::ShareNodeAcrossPaths: return "share-node";
    case FaultKind::SkipAppendAndRelay: return "skip-append";
    case FaultKind::UncertifiedNodeInject: return "uncertified";
    case FaultKind::PolicyViolatingAttrs: return "policy-violation";
    case FaultKind::ReplaySid: return "replay-sid";
    case FaultKind::TamperHop: return "tamper";
  }
  return "unknown";
}

std::string_view to_string(HopField field) {
  switch (field) {
    case HopField::Nym: return "nym";
    case HopField::RHat: return "r_hat";
    case HopField::S: return "s";
    case HopField::T: return "t";
    case HopField::Challenge: return "c";
    case HopField::ZSk: return "z_sk";
    case HopField::ZAlpha: return "z_alpha";
    case HopField::ZBeta: return "z_beta";
    case HopField::ZHidden: return "z_hidden";
  }
  return "unknown";
}

FaultPlan FaultPlan::parse(std::string_view name) {
  FaultPlan plan;
  auto colon = name.find(':');
  auto head = name.substr(0, colon);
  for (auto k : {FaultKind::None, FaultKind::ShareNodeAcrossPaths, FaultKind::SkipAppendAndRelay,
                 FaultKind::UncertifiedNodeInject, FaultKind::PolicyViolatingAttrs,
                 FaultKind::ReplaySid, FaultKind::TamperHop}) {
    if (head == to_string(k)) plan.kind = k;
  }
  if (head != to_string(plan.kind)) throw ConfigError("unknown fault '" + std::string(name) + "'");
  if (colon != std::string_view::npos) {
    if (plan.kind != FaultKind::TamperHop) throw ConfigError("only tamper takes a field");
    auto field = name.substr(colon + 1);
    bool found = false;
    for (auto f : kAllHopFields) {
      if (field == to_string(f)) {
        plan.field = f;
        found = true;
      }
    }
    if (!found) throw ConfigError("unknown hop field '" + std::string(field) + "'");
  }
  return plan;
}

std::optional<RejectCode> SessionReport::outcome() const {
  if (node_failure) return node_failure;
  if (!verdict) return RejectCode::PathCountMismatch;
  if (verdict->accepted()) return std::nullopt;
  return verdict->reason;
}

// ---- wire layout -------------------------------------------------------------

std::vector<WireField> describe_wire(ByteView wire) {
  std::vector<WireField> out;
  ByteReader in(wire);
  auto field = [&](std::string name, std::string kind, std::size_t size) {
    out.push_back({std::move(name), std::move(kind), in.offset(), size});
    in.take(size);
  };
  field("magic", "bytes", 4);
  field("version", "u8", 1);
  field("sid.nonce", "bytes", 16);
  field("sid.timestamp", "u64", 8);
  const auto policy_at = in.offset();
  const auto policy = Policy::decode(in);
  out.push_back({"policy", "bytes", policy_at, in.offset() - policy_at});
  const auto count_at = in.offset();
  const auto count = in.u16();
  out.push_back({"hop_count", "u16", count_at, 2});
  for (std::size_t j = 0; j < count; ++j) {
    field("hop.nym", "G1", kG1Bytes);
    field("hop.r_hat", "G2", kG2Bytes);
    field("hop.s", "G1", kG1Bytes);
    field("hop.t", "G1", kG1Bytes);
    field("hop.c", "Zp", kScalarBytes);
    field("hop.z_sk", "Zp", kScalarBytes);
    field("hop.z_alpha", "Zp", kScalarBytes);
    field("hop.z_beta", "Zp", kScalarBytes);
    for (std::size_t k = 0; k < policy.hidden_count(); ++k) field("hop.z_hidden", "Zp", kScalarBytes);
  }
  const auto flag_at = in.offset();
  const auto flag = in.u8();
  out.push_back({"link_present", "u8", flag_at, 1});
  if (flag == 1) {
    field("link.c", "Zp", kScalarBytes);
    field("link.z", "Zp", kScalarBytes);
  }
  in.expect_end();
  return out;
}

// ---- sessions ----------------------------------------------------------------

namespace {

Adversary mount(NetworkGraph& g, RouteSpec& routes, const Policy& policy, const FaultPlan& fault,
                Rng& rng) {
  Adversary adv;
  const auto& pp = g.params();
  auto slot = [&](std::size_t min_len) -> Slot {
    const auto p = clamp_index(fault.path, routes.paths.size());
    const auto& path = routes.paths[p];
    if (path.size() < min_len) throw FaultNotApplicable("target path too short");
    return {p, clamp_index(fault.hop, path.size() - (min_len > 1 ? 1 : 0))};
  };

  switch (fault.kind) {
    case FaultKind::None:
    case FaultKind::ReplaySid:
    case FaultKind::TamperHop:
      break;
    case FaultKind::ShareNodeAcrossPaths: {
      if (routes.paths.size() < 2 || routes.paths[0].size() < 2) {
        throw FaultNotApplicable("need two paths, the first with at least two hops");
      }
      const auto& p0 = routes.paths[0];
      const auto& shared = p0[1];
      std::set<std::string> blocked(p0.begin(), p0.end());
      blocked.insert(routes.paths[1].front());
      auto head = bfs_walk(g.adjacency(), routes.paths[1].front(), shared, blocked);
      if (!head) {
        blocked = {p0.front()};
        head = bfs_walk(g.adjacency(), routes.paths[1].front(), shared, blocked);
      }
      if (!head || routes.paths[1].front() == p0.front()) {
        throw FaultNotApplicable("cannot steer path 1 through " + shared);
      }
      std::vector<std::string> rewritten = *head;
      std::set<std::string> on(rewritten.begin(), rewritten.end());
      for (std::size_t j = 2; j < p0.size(); ++j) {
        if (on.count(p0[j])) throw FaultNotApplicable("rewritten path would loop");
        rewritten.push_back(p0[j]);
      }
      routes.paths[1] = std::move(rewritten);
      break;
    }
    case FaultKind::SkipAppendAndRelay: {
      auto s = slot(2);
      adv.skip.insert(s);
      adv.noncompliant.insert(routes.paths[s.first][s.second]);
      break;
    }
    case FaultKind::UncertifiedNodeInject: {
      auto s = slot(1);
      const auto& real = g.node(routes.paths[s.first][s.second]);
      const auto rogue_issuer = IssuerKeyPair::generate(pp, rng);
      NodeRecord rogue = real;
      rogue.keys = NodeKeyPair::generate(rng);
      rogue.cred = groth::sign(pp, rogue_issuer.sk, pedersen_message(rogue.keys.pk, rogue.attrs, pp),
                               rng);
      adv.replaced[s] = std::move(rogue);
      adv.noncompliant.insert(real.id);
      break;
    }
    case FaultKind::PolicyViolatingAttrs: {
      if (policy.required().empty()) throw FaultNotApplicable("policy constrains nothing");
      auto s = slot(1);
      NodeRecord liar = g.node(routes.paths[s.first][s.second]);
      const auto& [index, value] = *policy.required().begin();
      auto wrong = attribute_scalar("aqkd/policy-violation");
      if (wrong == value) wrong = wrong + Scalar::one();
      liar.attrs.values[index] = wrong;
      if (!liar.attrs.labels.empty()) liar.attrs.labels[index] = "aqkd/policy-violation";
      liar.cred = register_node(g.issuer(), liar.keys, liar.attrs, rng);
      adv.noncompliant.insert(liar.id);
      adv.replaced[s] = std::move(liar);
      adv.ignore_policy.insert(s);
      break;
    }
  }
  return adv;
}

struct ForwardResult {
  std::vector<HopMessage> finals;
  std::optional<ProtocolError> failure;
  std::string where;
};

ForwardResult forward_all(NetworkGraph& g, const RouteSpec& routes, std::vector<HopMessage> msgs,
                          const Adversary& adv, Rng& rng, std::uint64_t now,
                          SessionReport& report) {
  ForwardResult res;
  const auto& pp = g.params();
  for (std::size_t i = 0; i < routes.paths.size(); ++i) {
    auto m = std::move(msgs[i]);
    const auto& path = routes.paths[i];
    for (std::size_t j = 0; j < path.size(); ++j) {
      const Slot s{i, j};
      if (adv.skip.count(s)) continue;
      auto rit = adv.replaced.find(s);
      const NodeRecord& node = rit != adv.replaced.end() ? rit->second : g.node(path[j]);
      const auto pred = j == 0 ? std::nullopt : std::optional<std::string>(path[j - 1]);
      CounterScope scope;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        m = adv.ignore_policy.count(s)
                ? node_forward_ignoring_policy(pp, node, m, pred, g.issuer_pk(), g.guard(path[j]),
                                               now, rng)
                : node_forward(pp, node, m, pred, g.issuer_pk(), g.guard(path[j]), now, rng);
      } catch (const ProtocolError& e) {
        res.failure = e;
        res.where = "path " + std::to_string(i) + " hop " + std::to_string(j) + " (" + path[j] +
                    "): " + e.what();
        return res;
      }
      report.hop_ms.push_back(ms_since(t0));
      report.hop_counts.push_back(scope.counts());
      report.node_counts += scope.counts();
    }
    res.finals.push_back(std::move(m));
  }
  return res;
}

void flip_field_bit(Bytes& wire, std::size_t hop, HopField field, Rng& rng) {
  const auto layout = describe_wire(wire);
  const auto wanted = "hop." + std::string(to_string(field));
  std::vector<WireField> matches;
  std::size_t current = 0;
  bool in_hop = false;
  for (const auto& f : layout) {
    if (f.name == "hop.nym") {
      current = in_hop ? current + 1 : 0;
      in_hop = true;
    }
    if (in_hop && current == hop && f.name == wanted) matches.push_back(f);
  }
  if (matches.empty()) throw FaultNotApplicable("hop carries no " + wanted + " field");
  const auto& f = matches[rng.uniform(matches.size())];
  const auto byte = f.offset + rng.uniform(f.size);
  wire[byte] ^= static_cast<std::uint8_t>(1u << rng.uniform(8));
}

}  // namespace

SessionReport run_session(NetworkGraph& g, const RouteSpec& routes, const Policy& policy,
                          const FaultPlan& fault, Rng& rng, const SessionOptions& options) {
  if (auto err = check_session_routes(g, routes)) throw std::invalid_argument(*err);
  SessionReport report;
  report.routes = routes;
  auto adv = mount(g, report.routes, policy, fault, rng);
  report.noncompliant_nodes = adv.noncompliant;

  std::vector<std::string> entries;
  for (const auto& p : report.routes.paths) entries.push_back(p.front());
  auto initial = sender_init(entries.size(), policy, entries, rng, options.now);
  if (options.sid) {
    for (auto& m : initial) m.sid = *options.sid;
  }

  auto res = forward_all(g, report.routes, initial, adv, rng, options.now, report);
  if (!res.failure && fault.kind == FaultKind::ReplaySid) {
    report.hop_ms.clear();
    report.hop_counts.clear();
    report.node_counts = {};
    res = forward_all(g, report.routes, initial, adv, rng, options.now, report);
  }
  if (res.failure) {
    report.node_failure = res.failure->code();
    report.node_failure_detail = res.where;
    return report;
  }

  const auto receiver_keys = g.receiver_directory();
  for (std::size_t i = 0; i < res.finals.size(); ++i) {
    report.payload_bytes += payload_bytes(res.finals[i]);
    report.transcript.finals.push_back(serialize_hop_message(res.finals[i]));
    auto it = receiver_keys.find(report.routes.paths[i].back());
    report.transcript.exit_pks.push_back(it != receiver_keys.end() ? it->second : G1());
  }
  if (fault.kind == FaultKind::TamperHop) {
    const auto p = clamp_index(fault.path, report.routes.paths.size());
    const auto h = clamp_index(fault.hop, report.routes.paths[p].size());
    flip_field_bit(report.transcript.finals[p], h, fault.field, rng);
  }

  CounterScope scope;
  const auto t0 = std::chrono::steady_clock::now();
  report.verdict = audit_transcript(g.params(), report.transcript, g.prepared_issuer(), policy);
  report.receiver_ms = ms_since(t0);
  report.receiver_counts = scope.counts();
  return report;
}

ReceiverVerdict audit_transcript(const PublicParams& pp, const SessionTranscript& transcript,
                                 const PreparedIssuerKey& issuer, const Policy& policy) {
  std::vector<HopMessage> finals;
  finals.reserve(transcript.finals.size());
  for (std::size_t i = 0; i < transcript.finals.size(); ++i) {
    try {
      finals.push_back(deserialize_hop_message(transcript.finals[i]));
    } catch (const DecodeError& e) {
      auto v = ReceiverVerdict::reject(RejectCode::DecodeError, i);
      v.failures = {v.describe() + ": " + e.what()};
      return v;
    }
  }
  return receiver_verify(pp, finals, issuer, policy, transcript.exit_pks);
}

// ---- policy compliance -------------------------------------------------------

int run_policy_compliance_experiment(NetworkGraph& g, const FaultPlan& adversary,
                                     const RouteSpec& routes, const Policy& policy, Rng& rng) {
  SessionReport report;
  try {
    report = run_session(g, routes, policy, adversary, rng);
  } catch (const FaultNotApplicable&) {
    return 0;
  }
  if (!report.accepted()) return 0;

  bool violation = !report.noncompliant_nodes.empty();
  std::map<std::string, std::size_t> uses;
  for (const auto& path : report.routes.paths) {
    for (const auto& id : path) {
      ++uses[id];
      const auto& node = g.node(id);
      if (!policy.evaluate(node.attrs)) violation = true;
    }
  }
  const bool overlap =
      std::any_of(uses.begin(), uses.end(), [](const auto& kv) { return kv.second > 1; });
  const bool wrong_count = *report.verdict->n_prime != report.routes.paths.size();
  return (violation || overlap || wrong_count) ? 1 : 0;
}

// ---- path hiding -------------------------------------------------------------

PathHidingExperiment::PathHidingExperiment(NetworkGraph& g, Policy policy, std::uint64_t now)
    : g_(g), policy_(std::move(policy)), now_(now) {}

void PathHidingExperiment::validate_routes(const RouteSpec& r) const {
  using R = InvalidChallenge::Reason;
  if (r.paths.empty()) throw InvalidChallenge(R::NotARoute, "no paths");
  std::set<std::string> used;
  for (const auto& p : r.paths) {
    if (p.empty()) throw InvalidChallenge(R::NotARoute, "empty path");
    std::set<std::string> within;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (!g_.has_node(p[j])) throw InvalidChallenge(R::NotARoute, "unknown node " + p[j]);
      if (!within.insert(p[j]).second) throw InvalidChallenge(R::Loop, "loop through " + p[j]);
      if (j > 0 && !g_.adjacency().at(p[j - 1]).count(p[j])) {
        throw InvalidChallenge(R::NotARoute, p[j - 1] + " and " + p[j] + " not adjacent");
      }
    }
    if (!g_.entries().count(p.front()) || !g_.exits().count(p.back())) {
      throw InvalidChallenge(R::NotARoute, "path does not run from an entry to an exit");
    }
    for (const auto& id : p) {
      if (!used.insert(id).second) throw InvalidChallenge(R::NotDisjoint, id + " on two paths");
    }
  }
}

SessionReport PathHidingExperiment::oracle(const SessionId& sid, const RouteSpec& routes,
                                           Rng& rng) {
  if (!used_sids_.insert(sid.to_bytes()).second) {
    throw InvalidChallenge(InvalidChallenge::Reason::RepeatedSid, "sid already used");
  }
  validate_routes(routes);
  SessionOptions opt;
  opt.now = now_;
  opt.sid = sid;
  auto report = run_session(g_, routes, policy_, {}, rng, opt);
  for (const auto& wire : report.transcript.finals) {
    for (const auto& hop : deserialize_hop_message(wire).hops) seen_nyms_.push_back(hop.nym);
  }
  return report;
}

StructureReport PathHidingExperiment::challenge(const SessionId& sid, const RouteSpec& left,
                                                const RouteSpec& right, Rng& rng) {
  using R = InvalidChallenge::Reason;
  if (activated_) throw InvalidChallenge(R::ActivatedBefore, "challenge oracle already used");
  if (used_sids_.count(sid.to_bytes())) throw InvalidChallenge(R::RepeatedSid, "sid already used");
  validate_routes(left);
  validate_routes(right);
  if (left.paths.size() != right.paths.size()) {
    throw InvalidChallenge(R::MismatchedShape, "different numbers of paths");
  }
  for (std::size_t i = 0; i < left.paths.size(); ++i) {
    const auto& a = left.paths[i];
    const auto& b = right.paths[i];
    if (a.size() != b.size() || a.front() != b.front() || a.back() != b.back()) {
      throw InvalidChallenge(R::MismatchedShape,
                             "path " + std::to_string(i) + " differs in length or entry/exit");
    }
  }
  for (const auto* r : {&left, &right}) {
    for (const auto& p : r->paths) {
      for (const auto& id : p) {
        if (!policy_.evaluate(g_.node(id).attrs)) {
          throw InvalidChallenge(R::PolicyUnsatisfied, id + " does not satisfy the policy");
        }
      }
    }
  }
  activated_ = true;
  used_sids_.insert(sid.to_bytes());

  SessionOptions opt;
  opt.now = now_;
  opt.sid = sid;
  const auto saved = g_.snapshot_guards();
  auto l = run_session(g_, left, policy_, {}, rng, opt);
  g_.restore_guards(saved);
  auto r = run_session(g_, right, policy_, {}, rng, opt);

  StructureReport rep;
  rep.both_accepted = l.accepted() && r.accepted();
  for (const auto& w : l.transcript.finals) rep.left.push_back(describe_wire(w));
  for (const auto& w : r.transcript.finals) rep.right.push_back(describe_wire(w));
  rep.shapes_match = rep.left == rep.right;

  // whole name tokens, split on '.' and '_'
  static const std::set<std::string> kForbidden = {"node",     "id",       "path", "edge",
                                                   "neighbor", "topology", "pk",   "route"};
  for (const auto* side : {&rep.left, &rep.right}) {
    for (const auto& fields : *side) {
      for (const auto& f : fields) {
        std::string token;
        bool flagged = false;
        for (char ch : f.name + ".") {
          if (ch == '.' || ch == '_') {
            flagged = flagged || kForbidden.count(token);
            token.clear();
          } else {
            token += ch;
          }
        }
        if (flagged) rep.topology_fields.push_back(f.name);
      }
    }
  }

  std::vector<G1> keys;
  for (const auto& id : g_.node_ids()) {
    const auto& node = g_.node(id);
    keys.push_back(node.keys.pk);
    std::vector<Bytes> needles;
    const auto pk = node.keys.pk.to_bytes();
    needles.emplace_back(pk.begin(), pk.end());
    const auto cred = node.cred.to_bytes();
    needles.emplace_back(cred.begin(), cred.begin() + kG2Bytes);
    needles.emplace_back(cred.begin() + kG2Bytes, cred.begin() + kG2Bytes + kG1Bytes);
    needles.emplace_back(cred.begin() + kG2Bytes + kG1Bytes, cred.end());
    if (id.size() >= 6) needles.emplace_back(id.begin(), id.end());
    for (const auto* report : {&l, &r}) {
      for (const auto& wire : report->transcript.finals) {
        for (const auto& needle : needles) {
          if (std::search(wire.begin(), wire.end(), needle.begin(), needle.end()) != wire.end()) {
            rep.leaked_identifiers.push_back(id);
          }
        }
      }
    }
  }

  rep.nyms_fresh = true;
  for (const auto* report : {&l, &r}) {
    for (const auto& wire : report->transcript.finals) {
      for (const auto& hop : deserialize_hop_message(wire).hops) {
        for (const auto* pool : {&keys, &seen_nyms_}) {
          if (std::find(pool->begin(), pool->end(), hop.nym) != pool->end()) rep.nyms_fresh = false;
        }
      }
    }
  }
  return rep;
}

}  // namespace aqkd::netsim
