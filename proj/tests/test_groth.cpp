// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "aqkd/errors.hpp"
#include "aqkd/groth.hpp"

namespace aqkd {
namespace {

struct GrothTest : ::testing::Test {
  SeededRng rng{21};
  PublicParams pp = PublicParams::derive(3);
  IssuerKeyPair keys = IssuerKeyPair::generate(pp, rng);
  G1 msg = G1::generator().pow(Scalar::random(rng));
};

TEST_F(GrothTest, SignThenVerify) {
  for (int i = 0; i < 5; ++i) {
    const auto m = G1::generator().pow(Scalar::random(rng));
    EXPECT_TRUE(groth::verify(pp, keys.pk, groth::sign(pp, keys.sk, m, rng), m));
  }
}

// Verification equations written out with single pairings.
TEST_F(GrothTest, SignatureSatisfiesBothEquationsDirectly) {
  const auto sig = groth::sign(pp, keys.sk, msg, rng);
  EXPECT_EQ(pairing(sig.s, sig.r_hat), pairing(pp.y, pp.g_hat) * pairing(pp.g, keys.pk));
  EXPECT_EQ(pairing(sig.t, sig.r_hat), pairing(pp.y, keys.pk) * pairing(msg, pp.g_hat));
}

TEST_F(GrothTest, RejectsWrongMessageKeyOrComponents) {
  const auto sig = groth::sign(pp, keys.sk, msg, rng);
  const auto other = IssuerKeyPair::generate(pp, rng);
  EXPECT_FALSE(groth::verify(pp, other.pk, sig, msg));
  EXPECT_FALSE(groth::verify(pp, keys.pk, sig, msg * G1::generator()));
  auto bad = sig;
  bad.s = bad.s * G1::generator();
  EXPECT_FALSE(groth::verify(pp, keys.pk, bad, msg));
  bad = sig;
  bad.t = bad.t * G1::generator();
  EXPECT_FALSE(groth::verify(pp, keys.pk, bad, msg));
  bad = sig;
  bad.r_hat = bad.r_hat * G2::generator();
  EXPECT_FALSE(groth::verify(pp, keys.pk, bad, msg));
  bad = sig;
  bad.r_hat = G2::identity();
  bad.s = G1::identity();
  bad.t = G1::identity();
  EXPECT_FALSE(groth::verify(pp, keys.pk, bad, msg));
}

TEST_F(GrothTest, RerandomizedSignatureVerifiesAndDiffers) {
  const auto sig = groth::sign(pp, keys.sk, msg, rng);
  const auto re = groth::rerandomize(sig, rng);
  EXPECT_FALSE(re == sig);
  EXPECT_TRUE(groth::verify(pp, keys.pk, re, msg));
  EXPECT_TRUE(groth::verify(pp, keys.pk, groth::rerandomize(re, rng), msg));
}

TEST_F(GrothTest, SerializationRoundTrip) {
  const auto sig = groth::sign(pp, keys.sk, msg, rng);
  const auto bytes = sig.to_bytes();
  EXPECT_EQ(bytes.size(), 192u);
  EXPECT_EQ(GrothSignature::from_bytes(bytes), sig);
  EXPECT_THROW((void)GrothSignature::from_bytes(ByteView(bytes).first(191)), DecodeError);
}

TEST_F(GrothTest, KeyFromSecretIsDeterministic) {
  const auto k = IssuerKeyPair::from_secret(pp, keys.sk);
  EXPECT_EQ(k.pk, keys.pk);
  EXPECT_EQ(k.pk, pp.g_hat.pow(keys.sk));
}

}  // namespace
}  // namespace aqkd
