// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "aqkd/groth.hpp"
#include "test_util.hpp"

namespace aqkd {
namespace {

using testing::kNow;
using testing::make_chain;
using testing::run_chain;
using testing::verify_single;

template <typename F>
RejectCode code_of(F&& f) {
  try {
    f();
  } catch (const ProtocolError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no ProtocolError";
  return RejectCode::ProofInvalid;
}

TEST(Issuer, CertifiesProvenKeysOnce) {
  SeededRng rng(71);
  const auto pp = PublicParams::derive(3);
  Issuer issuer(pp, IssuerKeyPair::generate(pp, rng));
  const auto node = NodeKeyPair::generate(rng);
  const auto attrs = AttributeVector::from_labels({"a", "b", "c"});
  const auto did = issuer.begin_registration(rng);
  const auto proof = prove_registration(pp, node.sk, node.pk, did, rng);
  const auto cred = issuer.certify(node.pk, attrs, did, proof, rng);
  EXPECT_TRUE(groth::verify(pp, issuer.keys().pk, cred, pedersen_message(node.pk, attrs, pp)));
  EXPECT_EQ(code_of([&] { issuer.certify(node.pk, attrs, did, proof, rng); }),
            RejectCode::RegistrationProofInvalid);
}

TEST(Issuer, RefusesBadProofsAndShapes) {
  SeededRng rng(72);
  const auto pp = PublicParams::derive(2);
  Issuer issuer(pp, IssuerKeyPair::generate(pp, rng));
  const auto node = NodeKeyPair::generate(rng);
  const auto thief = NodeKeyPair::generate(rng);
  const auto attrs = AttributeVector::from_labels({"a", "b"});
  auto did = issuer.begin_registration(rng);
  EXPECT_EQ(code_of([&] {
              issuer.certify(node.pk, attrs, did, prove_registration(pp, thief.sk, node.pk, did, rng), rng);
            }),
            RejectCode::RegistrationProofInvalid);
  did = issuer.begin_registration(rng);
  EXPECT_EQ(code_of([&] {
              issuer.certify(node.pk, AttributeVector::from_labels({"a"}), did,
                             prove_registration(pp, node.sk, node.pk, did, rng), rng);
            }),
            RejectCode::RegistrationProofInvalid);
  std::array<std::uint8_t, 16> never{};
  EXPECT_EQ(code_of([&] {
              issuer.certify(node.pk, attrs, never, prove_registration(pp, node.sk, node.pk, never, rng), rng);
            }),
            RejectCode::RegistrationProofInvalid);
}

TEST(NodeRecord, CredentialCheck) {
  SeededRng rng(73);
  auto c = make_chain(1, 2, 1, rng);
  EXPECT_NO_THROW(check_node_record(c.pp, c.nodes[0], c.issuer_pk()));
  auto bad = c.nodes[0];
  bad.attrs.values[1] = attribute_scalar("upgrade");
  EXPECT_EQ(code_of([&] { check_node_record(c.pp, bad, c.issuer_pk()); }), RejectCode::InvalidCredential);
}

TEST(Sender, InitialMessages) {
  SeededRng rng(74);
  const auto policy = testing::first_d_policy(3, 1);
  const auto ms = sender_init(3, policy, {"a", "b", "c"}, rng, kNow);
  ASSERT_EQ(ms.size(), 3u);
  for (const auto& m : ms) {
    EXPECT_EQ(m.sid, ms[0].sid);
    EXPECT_EQ(m.sid.timestamp, kNow);
    EXPECT_TRUE(m.hops.empty());
    EXPECT_FALSE(m.link.has_value());
    EXPECT_EQ(m.policy, policy);
  }
  EXPECT_FALSE(sender_init(1, policy, {"a"}, rng, kNow)[0].sid == ms[0].sid);
  EXPECT_THROW((void)sender_init(2, policy, {"a"}, rng, kNow), std::invalid_argument);
  EXPECT_THROW((void)sender_init(0, policy, {}, rng, kNow), std::invalid_argument);
}

TEST(ReplayGuard, FreshnessAndDuplicates) {
  SeededRng rng(75);
  ReplayGuard guard(120);
  auto sid = SessionId::fresh(rng, kNow);
  guard.admit(sid, kNow);
  EXPECT_EQ(code_of([&] { guard.admit(sid, kNow + 5); }), RejectCode::DuplicateSession);
  auto old = SessionId::fresh(rng, kNow - 121);
  EXPECT_EQ(code_of([&] { guard.admit(old, kNow); }), RejectCode::StaleSession);
  auto future = SessionId::fresh(rng, kNow + 121);
  EXPECT_EQ(code_of([&] { guard.admit(future, kNow); }), RejectCode::StaleSession);
  guard.admit(SessionId::fresh(rng, kNow - 120), kNow);
  EXPECT_EQ(guard.tracked(), 2u);
  ReplayGuard copy = guard;
  EXPECT_EQ(code_of([&] { copy.admit(sid, kNow); }), RejectCode::DuplicateSession);
  // long after expiry the nonce is forgotten, and its timestamp is stale anyway
  guard.admit(SessionId::fresh(rng, kNow + 1000), kNow + 1000);
  EXPECT_EQ(guard.tracked(), 1u);
  EXPECT_EQ(code_of([&] { guard.admit(sid, kNow + 1000); }), RejectCode::StaleSession);
}

TEST(Forward, HonestChainAccepted) {
  SeededRng rng(76);
  auto c = make_chain(4, 4, 2, rng);
  const auto m = run_chain(c, rng);
  EXPECT_EQ(m.hops.size(), 4u);
  EXPECT_TRUE(m.link.has_value());
  const auto v = verify_single(c, m);
  EXPECT_TRUE(v.accepted()) << v.describe();
  EXPECT_EQ(v.describe(), "n'=1");
}

TEST(Forward, NodeRefusals) {
  SeededRng rng(77);
  auto c = make_chain(3, 4, 2, rng);
  const auto init = sender_init(1, c.policy, {"n0"}, rng, kNow)[0];
  const auto& pk = c.issuer_pk();
  const auto m0 = node_forward(c.pp, c.nodes[0], init, std::nullopt, pk, c.guards[0], kNow, rng);
  EXPECT_EQ(code_of([&] { node_forward(c.pp, c.nodes[0], init, std::nullopt, pk, c.guards[0], kNow, rng); }),
            RejectCode::DuplicateSession);
  EXPECT_EQ(code_of([&] { node_forward(c.pp, c.nodes[2], m0, std::string("n0"), pk, c.guards[2], kNow, rng); }),
            RejectCode::UnknownPredecessor);
  auto unlinked = m0;
  unlinked.link.reset();
  EXPECT_EQ(code_of([&] { node_forward(c.pp, c.nodes[1], unlinked, std::string("n0"), pk, c.guards[1], kNow, rng); }),
            RejectCode::LinkProofInvalid);
  auto wrong_link = m0;
  wrong_link.link->z = wrong_link.link->z + Scalar::one();
  EXPECT_EQ(code_of([&] { node_forward(c.pp, c.nodes[1], wrong_link, std::string("n0"), pk, c.guards[1], kNow, rng); }),
            RejectCode::LinkProofInvalid);
  // link was made for n0, not for the claimed sender n2
  EXPECT_EQ(code_of([&] { node_forward(c.pp, c.nodes[1], m0, std::string("n2"), pk, c.guards[1], kNow, rng); }),
            RejectCode::LinkProofInvalid);
  EXPECT_EQ(code_of([&] { node_forward(c.pp, c.nodes[1], m0, std::nullopt, pk, c.guards[1], kNow, rng); }),
            RejectCode::LinkProofInvalid);
  auto stale = sender_init(1, c.policy, {"n0"}, rng, kNow - 500)[0];
  EXPECT_EQ(code_of([&] { node_forward(c.pp, c.nodes[0], stale, std::nullopt, pk, c.guards[0], kNow, rng); }),
            RejectCode::StaleSession);
  auto liar = c.nodes[0];
  liar.attrs.values[0] = attribute_scalar("nope");
  auto fresh = sender_init(1, c.policy, {"n0"}, rng, kNow)[0];
  EXPECT_EQ(code_of([&] { node_forward(c.pp, liar, fresh, std::nullopt, pk, c.guards[0], kNow, rng); }),
            RejectCode::PolicyUnsatisfied);
}

TEST(Forward, PolicyIgnoringNodeIsCaughtByReceiver) {
  SeededRng rng(78);
  auto c = make_chain(3, 4, 2, rng);
  auto& liar = c.nodes[1];
  liar.attrs.values[0] = attribute_scalar("nope");
  liar.cred = register_node(*c.issuer, liar.keys, liar.attrs, rng);
  auto m = sender_init(1, c.policy, {"n0"}, rng, kNow)[0];
  m = node_forward(c.pp, c.nodes[0], m, std::nullopt, c.issuer_pk(), c.guards[0], kNow, rng);
  m = node_forward_ignoring_policy(c.pp, liar, m, std::string("n0"), c.issuer_pk(), c.guards[1], kNow, rng);
  m = node_forward(c.pp, c.nodes[2], m, std::string("n1"), c.issuer_pk(), c.guards[2], kNow, rng);
  const auto v = verify_single(c, m);
  ASSERT_FALSE(v.accepted());
  EXPECT_EQ(v.reason, RejectCode::ProofInvalid);
  EXPECT_EQ(v.hop, 1u);
}

struct ReceiverTest : ::testing::Test {
  SeededRng rng{79};
  testing::Chain c = make_chain(4, 3, 1, rng);
  HopMessage m = run_chain(c, rng);
  ReceiverVerdict check(const HopMessage& msg) { return verify_single(c, msg); }
};

TEST_F(ReceiverTest, ReorderedHopsRejected) {
  auto bad = m;
  std::swap(bad.hops[1], bad.hops[2]);
  const auto v = check(bad);
  ASSERT_FALSE(v.accepted());
  EXPECT_EQ(v.reason, RejectCode::ProofInvalid);
  EXPECT_EQ(v.hop, 1u);
}

TEST_F(ReceiverTest, StrippedHopBreaksLaterProofs) {
  for (std::size_t k = 0; k + 1 < m.hops.size(); ++k) {
    auto bad = m;
    bad.hops.erase(bad.hops.begin() + static_cast<long>(k));
    const auto v = check(bad);
    ASSERT_FALSE(v.accepted());
    EXPECT_EQ(v.reason, RejectCode::ProofInvalid);
    EXPECT_EQ(v.hop, k);
    EXPECT_GE(v.failures.size(), bad.hops.size() - k);
  }
  auto no_last = m;
  no_last.hops.pop_back();
  EXPECT_EQ(check(no_last).reason, RejectCode::LinkInvalid);
  auto empty = m;
  empty.hops.clear();
  EXPECT_FALSE(check(empty).accepted());
}

TEST_F(ReceiverTest, ExitKeyAndLinkChecked) {
  auto v = receiver_verify(c.pp, {m}, c.prepared, c.policy, std::vector<G1>{c.nodes[2].keys.pk});
  EXPECT_EQ(v.reason, RejectCode::LinkInvalid);
  auto no_link = m;
  no_link.link.reset();
  EXPECT_EQ(check(no_link).reason, RejectCode::LinkInvalid);
  Directory dir{{"n3", c.nodes[3].keys.pk}};
  EXPECT_TRUE(receiver_verify(c.pp, {m}, c.prepared, c.policy, {std::string("n3")}, dir).accepted());
  EXPECT_EQ(receiver_verify(c.pp, {m}, c.prepared, c.policy, {std::string("zz")}, dir).reason,
            RejectCode::LinkInvalid);
}

TEST_F(ReceiverTest, SessionLevelChecks) {
  const std::vector<G1> exits{c.nodes[3].keys.pk};
  EXPECT_EQ(receiver_verify(c.pp, {}, c.prepared, c.policy, std::vector<G1>{}).reason,
            RejectCode::PathCountMismatch);
  EXPECT_EQ(receiver_verify(c.pp, {m}, c.prepared, c.policy, std::vector<G1>{}).reason,
            RejectCode::PathCountMismatch);
  auto other_policy = testing::first_d_policy(3, 2);
  EXPECT_EQ(receiver_verify(c.pp, {m}, c.prepared, other_policy, exits).reason, RejectCode::PolicyMismatch);
  auto resid = m;
  resid.sid.timestamp += 1;
  const auto v = receiver_verify(c.pp, {m, resid}, c.prepared, c.policy,
                                 std::vector<G1>{exits[0], exits[0]});
  EXPECT_EQ(v.reason, RejectCode::SidMismatch);
  EXPECT_EQ(v.path, 1u);
}

TEST_F(ReceiverTest, SamePathTwiceIsDuplicatePseudonym) {
  const std::vector<G1> exits{c.nodes[3].keys.pk, c.nodes[3].keys.pk};
  const auto v = receiver_verify(c.pp, {m, m}, c.prepared, c.policy, exits);
  ASSERT_FALSE(v.accepted());
  EXPECT_EQ(v.reason, RejectCode::DuplicatePseudonym);
  EXPECT_EQ(v.path, 0u);
  EXPECT_EQ(v.other_path, 1u);
  EXPECT_EQ(v.hop, v.other_hop);
}

TEST_F(ReceiverTest, WrongIssuerRejected) {
  const auto rogue = IssuerKeyPair::generate(c.pp, rng);
  const auto v = receiver_verify(c.pp, {m}, PreparedIssuerKey::prepare(c.pp, rogue.pk), c.policy,
                                 std::vector<G1>{c.nodes[3].keys.pk});
  EXPECT_EQ(v.reason, RejectCode::ProofInvalid);
}

// Receiver totals for one path of n hops and node costs per hop.
TEST(Counts, MatchOperationTable) {
  SeededRng rng(80);
  for (auto [n, l, d] : {std::tuple<std::size_t, std::size_t, std::size_t>{5, 4, 2}, {3, 6, 0}, {4, 5, 5}}) {
    auto c = make_chain(n, l, d, rng);
    auto m = sender_init(1, c.policy, {"n0"}, rng, kNow)[0];
    for (std::size_t i = 0; i < n; ++i) {
      std::optional<std::string> pred;
      if (i > 0) pred = c.nodes[i - 1].id;
      CounterScope scope;
      m = node_forward(c.pp, c.nodes[i], m, pred, c.issuer_pk(), c.guards[i], kNow, rng);
      const std::uint64_t g1 = (l - d) + (i == 0 ? 9 : 13);
      EXPECT_EQ(scope.counts(), (OpCounters{g1, 1, 2, 3})) << "hop " << i;
    }
    CounterScope scope;
    EXPECT_TRUE(verify_single(c, m).accepted());
    EXPECT_EQ(scope.counts(), (OpCounters{(l + 3) * n + 4, 0, 4 * n, 4 * n}));
  }
}

}  // namespace
}  // namespace aqkd
