// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0
// Shared fixtures: a hand-wired chain of nodes driven through the protocol
// API directly, without the simulator.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "aqkd/protocol.hpp"
#include "aqkd/wire.hpp"

namespace aqkd::testing {

inline constexpr std::uint64_t kNow = 1'700'000'000;

inline std::vector<std::string> labels(std::size_t l) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < l; ++i) out.push_back("attr" + std::to_string(i));
  return out;
}

inline Policy first_d_policy(std::size_t l, std::size_t d) {
  Policy p("test", l);
  const auto ls = labels(l);
  for (std::size_t i = 0; i < d; ++i) p.require(i, ls[i]);
  return p;
}

struct Chain {
  PublicParams pp;
  std::shared_ptr<Issuer> issuer;
  PreparedIssuerKey prepared;
  Policy policy;
  std::vector<NodeRecord> nodes;
  std::vector<ReplayGuard> guards;

  const G2& issuer_pk() const { return issuer->keys().pk; }
};

// Nodes n0..n{count-1}, each adjacent to its predecessor and successor.
inline Chain make_chain(std::size_t count, std::size_t l, std::size_t d, Rng& rng) {
  Chain c{PublicParams::derive(l), nullptr, {}, first_d_policy(l, d), {}, {}};
  c.issuer = std::make_shared<Issuer>(c.pp, IssuerKeyPair::generate(c.pp, rng));
  c.prepared = PreparedIssuerKey::prepare(c.pp, c.issuer_pk());
  const auto attrs = AttributeVector::from_labels(labels(l));
  for (std::size_t i = 0; i < count; ++i) {
    NodeRecord n;
    n.id = "n" + std::to_string(i);
    n.keys = NodeKeyPair::generate(rng);
    n.attrs = attrs;
    n.cred = register_node(*c.issuer, n.keys, n.attrs, rng);
    c.nodes.push_back(std::move(n));
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0) c.nodes[i].directory[c.nodes[i - 1].id] = c.nodes[i - 1].keys.pk;
    if (i + 1 < count) c.nodes[i].directory[c.nodes[i + 1].id] = c.nodes[i + 1].keys.pk;
  }
  c.guards.resize(count);
  return c;
}

// Sends one message along nodes [0, count).
inline HopMessage run_chain(Chain& c, Rng& rng) {
  auto m = sender_init(1, c.policy, {c.nodes[0].id}, rng, kNow)[0];
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    std::optional<std::string> pred;
    if (i > 0) pred = c.nodes[i - 1].id;
    m = node_forward(c.pp, c.nodes[i], m, pred, c.issuer_pk(), c.guards[i], kNow, rng);
  }
  return m;
}

inline ReceiverVerdict verify_single(const Chain& c, const HopMessage& m) {
  return receiver_verify(c.pp, {m}, c.prepared, c.policy, std::vector<G1>{c.nodes.back().keys.pk});
}

}  // namespace aqkd::testing
