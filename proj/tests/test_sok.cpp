// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "aqkd/errors.hpp"
#include "aqkd/groth.hpp"
#include "aqkd/pseudonym.hpp"
#include "aqkd/sok.hpp"

namespace aqkd {
namespace {

TEST(Registration, CompleteAndBoundToNonce) {
  SeededRng rng(51);
  const auto pp = PublicParams::derive(2);
  const auto k = NodeKeyPair::generate(rng);
  const Bytes did(16, 3);
  const auto proof = prove_registration(pp, k.sk, k.pk, did, rng);
  EXPECT_TRUE(verify_registration(pp, k.pk, did, proof));
  EXPECT_FALSE(verify_registration(pp, k.pk, Bytes(16, 4), proof));
  EXPECT_FALSE(verify_registration(pp, NodeKeyPair::generate(rng).pk, did, proof));
  auto bad = proof;
  bad.z = bad.z + Scalar::one();
  EXPECT_FALSE(verify_registration(pp, k.pk, did, bad));
  EXPECT_EQ(SchnorrProof::from_bytes(proof.to_bytes()), proof);
}

TEST(Registration, WrongSecretFails) {
  SeededRng rng(52);
  const auto pp = PublicParams::derive(2);
  const auto k = NodeKeyPair::generate(rng);
  const auto other = NodeKeyPair::generate(rng);
  const Bytes did(16, 3);
  EXPECT_FALSE(verify_registration(pp, k.pk, did, prove_registration(pp, other.sk, k.pk, did, rng)));
}

TEST(Link, CompleteAndContextBound) {
  SeededRng rng(53);
  const auto pp = PublicParams::derive(2);
  const auto k = NodeKeyPair::generate(rng);
  const Bytes sid(24, 9);
  const auto nym = nym_gen(k.sk, session_scope(sid)).nym;
  const auto ctx = as_bytes("context");
  const auto proof = prove_link(pp, k.sk, sid, nym, k.pk, ctx, rng);
  EXPECT_TRUE(verify_link(pp, proof, sid, nym, k.pk, ctx));
  EXPECT_FALSE(verify_link(pp, proof, sid, nym, k.pk, as_bytes("contexT")));
  EXPECT_FALSE(verify_link(pp, proof, Bytes(24, 8), nym, k.pk, ctx));
  EXPECT_FALSE(verify_link(pp, proof, sid, nym * G1::generator(), k.pk, ctx));
  EXPECT_FALSE(verify_link(pp, proof, sid, nym, NodeKeyPair::generate(rng).pk, ctx));
  auto bad = proof;
  bad.c = bad.c + Scalar::one();
  EXPECT_FALSE(verify_link(pp, bad, sid, nym, k.pk, ctx));
}

TEST(Link, NymOfAnotherKeyFails) {
  SeededRng rng(54);
  const auto pp = PublicParams::derive(2);
  const auto k = NodeKeyPair::generate(rng);
  const auto other = NodeKeyPair::generate(rng);
  const Bytes sid(24, 9);
  const auto wrong_nym = nym_gen(other.sk, session_scope(sid)).nym;
  const auto proof = prove_link(pp, k.sk, sid, wrong_nym, k.pk, {}, rng);
  EXPECT_FALSE(verify_link(pp, proof, sid, wrong_nym, k.pk, {}));
}

TEST(Link, VerifierCost) {
  SeededRng rng(55);
  const auto pp = PublicParams::derive(2);
  const auto k = NodeKeyPair::generate(rng);
  const Bytes sid(24, 1);
  const auto nym = nym_gen(k.sk, session_scope(sid)).nym;
  const auto proof = prove_link(pp, k.sk, sid, nym, k.pk, {}, rng);
  CounterScope scope;
  EXPECT_TRUE(verify_link(pp, proof, sid, nym, k.pk, {}));
  EXPECT_EQ(scope.counts(), (OpCounters{4, 0, 0, 0}));
}

struct CredentialTest : ::testing::TestWithParam<std::pair<std::size_t, std::size_t>> {
  SeededRng rng{56};
  std::size_t l = GetParam().first;
  std::size_t d = GetParam().second;
  PublicParams pp = PublicParams::derive(l);
  IssuerKeyPair issuer = IssuerKeyPair::generate(pp, rng);
  PreparedIssuerKey prepared = PreparedIssuerKey::prepare(pp, issuer.pk);
  NodeKeyPair node = NodeKeyPair::generate(rng);
  AttributeVector attrs;
  Policy policy;
  GrothSignature cred;
  Bytes sid = Bytes(24, 5);
  G1 nym;
  Bytes ctx = {1, 2, 3};

  void SetUp() override {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < l; ++i) labels.push_back("v" + std::to_string(i));
    attrs = AttributeVector::from_labels(labels);
    policy = Policy("pol", l);
    // odd positions from the top first, so hidden and disclosed interleave
    std::vector<std::size_t> order;
    for (std::size_t i = l; i-- > 0;) {
      if ((l - 1 - i) % 2 == 0) order.push_back(i);
    }
    for (std::size_t i = 0; i < l; ++i) {
      if ((l - 1 - i) % 2 == 1) order.push_back(i);
    }
    for (std::size_t k = 0; k < d; ++k) policy.require(order[k], labels[order[k]]);
    cred = groth::sign(pp, issuer.sk, pedersen_message(node.pk, attrs, pp), rng);
    nym = nym_gen(node.sk, session_scope(sid)).nym;
  }

  CredentialProof prove() {
    return prove_credential(pp, node.sk, attrs, cred, policy, sid, nym, ctx, issuer.pk, rng);
  }
  bool verify(const CredentialProof& p) {
    return verify_credential(pp, p, policy, sid, nym, ctx, prepared);
  }
};

TEST_P(CredentialTest, HonestProofVerifies) {
  ASSERT_EQ(policy.disclosed_count(), d);
  const auto p = prove();
  EXPECT_EQ(p.z_hidden.size(), l - d);
  EXPECT_TRUE(verify(p));
  EXPECT_TRUE(verify(prove()));
}

TEST_P(CredentialTest, BlindedCredentialIsFreshEachTime) {
  const auto a = prove();
  const auto b = prove();
  EXPECT_FALSE(a.blinded.s == b.blinded.s);
  EXPECT_FALSE(a.blinded.r_hat == b.blinded.r_hat);
  EXPECT_FALSE(a.blinded.s == cred.s);
}

TEST_P(CredentialTest, EveryResponseAndCommitmentIsBound) {
  const auto p = prove();
  const auto bump = [](Scalar& s) { s = s + Scalar::one(); };
  std::vector<CredentialProof> bad(8 + p.z_hidden.size(), p);
  bad[0].blinded.r_hat = bad[0].blinded.r_hat * G2::generator();
  bad[1].blinded.s = bad[1].blinded.s * G1::generator();
  bad[2].blinded.t = bad[2].blinded.t * G1::generator();
  bump(bad[3].c);
  bump(bad[4].z_sk);
  bump(bad[5].z_alpha);
  bump(bad[6].z_beta);
  bad[7].blinded = prove().blinded;  // commitments from another run
  for (std::size_t i = 0; i < p.z_hidden.size(); ++i) bump(bad[8 + i].z_hidden[i]);
  for (std::size_t i = 0; i < bad.size(); ++i) EXPECT_FALSE(verify(bad[i])) << "mutation " << i;
}

TEST_P(CredentialTest, BoundToStatement) {
  const auto p = prove();
  EXPECT_FALSE(verify_credential(pp, p, policy, Bytes(24, 6), nym, ctx, prepared));
  EXPECT_FALSE(verify_credential(pp, p, policy, sid, nym * G1::generator(), ctx, prepared));
  EXPECT_FALSE(verify_credential(pp, p, policy, sid, nym, Bytes{1, 2, 4}, prepared));
  const auto other = IssuerKeyPair::generate(pp, rng);
  EXPECT_FALSE(verify_credential(pp, p, policy, sid, nym, ctx, PreparedIssuerKey::prepare(pp, other.pk)));
  Policy renamed("other", l);
  for (const auto& [i, v] : policy.required()) renamed.require(i, v);
  EXPECT_FALSE(verify_credential(pp, p, renamed, sid, nym, ctx, prepared));
  if (d > 0) {
    Policy changed = policy;
    changed.require(policy.required().begin()->first, "forged");
    EXPECT_FALSE(verify_credential(pp, p, changed, sid, nym, ctx, prepared));
  }
}

TEST_P(CredentialTest, PolicyPreconditionAndCheatingProver) {
  if (d == 0) GTEST_SKIP() << "nothing disclosed";
  auto wrong = attrs;
  wrong.values[policy.required().begin()->first] = attribute_scalar("forged");
  const auto wrong_cred = groth::sign(pp, issuer.sk, pedersen_message(node.pk, wrong, pp), rng);
  try {
    (void)prove_credential(pp, node.sk, wrong, wrong_cred, policy, sid, nym, ctx, issuer.pk, rng);
    FAIL();
  } catch (const ProofError& e) {
    EXPECT_EQ(e.kind(), ProofError::Kind::PolicyUnsatisfied);
  }
  const auto cheat =
      prove_credential_unchecked(pp, node.sk, wrong, wrong_cred, policy, sid, nym, ctx, issuer.pk, rng);
  EXPECT_FALSE(verify(cheat));
}

TEST_P(CredentialTest, CredentialForOtherAttributesFails) {
  auto claimed = attrs;
  const auto hidden = policy.hidden_indices();
  if (hidden.empty()) GTEST_SKIP() << "no hidden attributes";
  claimed.values[hidden[0]] = attribute_scalar("not-certified");
  const auto p = prove_credential(pp, node.sk, claimed, cred, policy, sid, nym, ctx, issuer.pk, rng);
  EXPECT_FALSE(verify(p));
}

TEST_P(CredentialTest, WireRoundTripAndSize) {
  const auto p = prove();
  ByteWriter w;
  p.write(w);
  EXPECT_EQ(w.size(), p.encoded_size());
  EXPECT_EQ(w.size(), 96 + 2 * 48 + (4 + (l - d)) * 32);
  ByteReader in(w.bytes());
  EXPECT_EQ(CredentialProof::read(in, l - d), p);
  in.expect_end();
}

TEST_P(CredentialTest, OperationCounts) {
  OpCounters prover, verifier;
  CredentialProof p;
  {
    CounterScope scope;
    p = prove();
    prover = scope.counts();
  }
  {
    CounterScope scope;
    EXPECT_TRUE(verify(p));
    verifier = scope.counts();
  }
  EXPECT_EQ(prover, (OpCounters{(l - d) + 6, 1, 2, 3}));
  EXPECT_EQ(verifier, (OpCounters{l + 3, 0, 4, 4}));
}

INSTANTIATE_TEST_SUITE_P(Shapes, CredentialTest,
                         ::testing::Values(std::make_pair(1u, 0u), std::make_pair(1u, 1u),
                                           std::make_pair(4u, 2u), std::make_pair(5u, 0u),
                                           std::make_pair(5u, 5u), std::make_pair(10u, 5u)));

TEST(Credential, RejectsMalformedInputs) {
  SeededRng rng(57);
  const auto pp = PublicParams::derive(2);
  const auto issuer = IssuerKeyPair::generate(pp, rng);
  const auto node = NodeKeyPair::generate(rng);
  const auto attrs = AttributeVector::from_labels({"a", "b"});
  auto cred = groth::sign(pp, issuer.sk, pedersen_message(node.pk, attrs, pp), rng);
  const Policy policy("p", 2);
  const Bytes sid(24, 1);
  const auto nym = nym_gen(node.sk, session_scope(sid)).nym;
  EXPECT_THROW((void)prove_credential(pp, node.sk, AttributeVector::from_labels({"a"}), cred, policy,
                                      sid, nym, {}, issuer.pk, rng),
               ProofError);
  cred.r_hat = G2::identity();
  EXPECT_THROW(
      (void)prove_credential(pp, node.sk, attrs, cred, policy, sid, nym, {}, issuer.pk, rng),
      ProofError);
}

}  // namespace
}  // namespace aqkd
