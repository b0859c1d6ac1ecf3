// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "aqkd/params.hpp"
#include "aqkd/pseudonym.hpp"

namespace aqkd {
namespace {

TEST(Pseudonym, DeterministicPerScope) {
  SeededRng rng(31);
  const auto k = NodeKeyPair::generate(rng);
  const auto scope = session_scope(Bytes(24, 7));
  EXPECT_EQ(nym_gen(k.sk, scope).nym, nym_gen(k.sk, scope).nym);
  EXPECT_EQ(nym_gen(k.sk, scope).nym, scope_base(scope).pow(k.sk));
  EXPECT_EQ(nym_gen(k.sk, scope).scope, scope);
}

TEST(Pseudonym, DistinctAcrossScopesAndKeys) {
  SeededRng rng(32);
  const auto a = NodeKeyPair::generate(rng);
  const auto b = NodeKeyPair::generate(rng);
  const auto s1 = session_scope(Bytes(24, 1));
  const auto s2 = session_scope(Bytes(24, 2));
  EXPECT_FALSE(nym_gen(a.sk, s1).nym == nym_gen(a.sk, s2).nym);
  EXPECT_FALSE(nym_gen(a.sk, s1).nym == nym_gen(b.sk, s1).nym);
}

TEST(Pseudonym, PublicKeyIsTheSetupScopeNym) {
  SeededRng rng(33);
  const auto k = NodeKeyPair::generate(rng);
  EXPECT_EQ(k.pk, nym_gen(k.sk, as_bytes(kSetupScope)).nym);
  EXPECT_EQ(k.pk, PublicParams::derive(2).h_setup.pow(k.sk));
  EXPECT_EQ(NodeKeyPair::from_secret(k.sk).pk, k.pk);
}

TEST(Pseudonym, SessionScopeLayout) {
  const Bytes sid(24, 0xab);
  const auto s = session_scope(sid);
  ASSERT_EQ(s.size(), kSessionScopePrefix.size() + 24);
  EXPECT_EQ(std::string(s.begin(), s.begin() + kSessionScopePrefix.size()), kSessionScopePrefix);
  EXPECT_EQ(s.back(), 0xab);
}

TEST(Pseudonym, ZeroKeyRejected) {
  EXPECT_THROW((void)nym_gen(Scalar::zero(), as_bytes("x")), std::invalid_argument);
}

TEST(Params, DerivationIsDeterministicAndIndependent) {
  const auto a = PublicParams::derive(4);
  const auto b = PublicParams::derive(4);
  EXPECT_EQ(a.y, b.y);
  ASSERT_EQ(a.h.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(a.h[i], b.h[i]);
    for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(a.h[i] == a.h[j]);
    EXPECT_FALSE(a.h[i] == a.y);
  }
  EXPECT_EQ(PublicParams::derive(6).h[3], a.h[3]);
  EXPECT_EQ(a.e_y_ghat, pairing(a.y, a.g_hat));
  EXPECT_EQ(a.e_setup_ghat, pairing(a.h_setup, a.g_hat));
  EXPECT_THROW((void)PublicParams::derive(0), std::invalid_argument);
}

}  // namespace
}  // namespace aqkd
