// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <blst.h>

#include "aqkd/errors.hpp"
#include "aqkd/group.hpp"

namespace aqkd {
namespace {

Bytes u128_be(unsigned __int128 v) {
  Bytes out(16);
  for (int i = 15; i >= 0; --i) {
    out[i] = static_cast<std::uint8_t>(v);
    v >>= 8;
  }
  return out;
}

TEST(Scalar, ModulusIsTheBls12381GroupOrder) {
  EXPECT_EQ(to_hex(Scalar::modulus_bytes()),
            "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001");
}

TEST(Scalar, ArithmeticMatchesWideIntegers) {
  SeededRng rng(7);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t a = rng.next_u64();
    const std::uint64_t b = rng.next_u64();
    const auto prod = static_cast<unsigned __int128>(a) * b;
    const auto sum = static_cast<unsigned __int128>(a) + b;
    EXPECT_EQ(Scalar::from_u64(a) * Scalar::from_u64(b), Scalar::from_bytes_reduced(u128_be(prod)));
    EXPECT_EQ(Scalar::from_u64(a) + Scalar::from_u64(b), Scalar::from_bytes_reduced(u128_be(sum)));
  }
}

TEST(Scalar, ModulusReducesToZeroAndIsRejectedAsCanonical) {
  const auto p = Scalar::modulus_bytes();
  EXPECT_TRUE(Scalar::from_bytes_reduced(p).is_zero());
  try {
    (void)Scalar::from_bytes(p);
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.kind(), DecodeErrorKind::NonCanonical);
  }
  auto pm1 = p;
  pm1[31] -= 1;
  EXPECT_EQ(Scalar::from_bytes(pm1) + Scalar::one(), Scalar::zero());
  EXPECT_THROW((void)Scalar::from_bytes(Bytes(31)), DecodeError);
}

TEST(Scalar, InverseAndNegation) {
  SeededRng rng(8);
  for (int i = 0; i < 50; ++i) {
    const auto x = Scalar::random_nonzero(rng);
    EXPECT_EQ(x * x.inverse(), Scalar::one());
    EXPECT_TRUE((x + -x).is_zero());
    EXPECT_EQ(Scalar::from_bytes(x.to_bytes()), x);
  }
  EXPECT_THROW((void)Scalar::zero().inverse(), std::domain_error);
}

TEST(Scalar, BlindingAvoidsZeroAndOne) {
  SeededRng rng(9);
  for (int i = 0; i < 100; ++i) {
    const auto b = Scalar::random_blinding(rng);
    EXPECT_FALSE(b.is_zero());
    EXPECT_FALSE(b == Scalar::one());
  }
}

TEST(G1, GeneratorEncodingIsStandard) {
  EXPECT_EQ(to_hex(G1::generator().to_bytes()),
            "97f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171bac586c55e83ff97a1aeffb3af00adb22c6bb");
  EXPECT_EQ(to_hex(G2::generator().to_bytes()),
            "93e02b6052719f607dacd3a088274f65596bd0d09920b61ab5da61bbdc7f5049334cf11213945d57e5ac7d055d042b7e"
            "024aa2b2f08f0a91260805272dc51051c6e47ad4fa403b02b4510b647ae3d1770bac0326a805bbefd48056c8c121bdb8");
}

// Double-and-add over the group law, independent of the backend's scalar mul.
G1 ladder(const G1& base, std::uint64_t k) {
  G1 acc;
  G1 run = base;
  while (k) {
    if (k & 1) acc = acc * run;
    run = run * run;
    k >>= 1;
  }
  return acc;
}

TEST(G1, PowAgreesWithDoubleAndAdd) {
  SeededRng rng(10);
  const auto g = G1::generator();
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t k = rng.next_u64();
    EXPECT_EQ(g.pow(Scalar::from_u64(k)), ladder(g, k));
  }
  EXPECT_TRUE(g.pow(Scalar::zero()).is_identity());
  auto order_minus_one = Scalar::zero() - Scalar::one();
  EXPECT_EQ(g.pow(order_minus_one), g.inverse());
}

TEST(G1, MultiPowMatchesProductOfPows) {
  SeededRng rng(11);
  for (std::size_t n : {1u, 2u, 3u, 4u, 7u, 20u}) {
    std::vector<G1> bases;
    std::vector<Scalar> exps;
    G1 expect;
    for (std::size_t i = 0; i < n; ++i) {
      bases.push_back(G1::generator().pow(Scalar::random(rng)));
      exps.push_back(Scalar::random(rng));
      expect = expect * bases.back().pow(exps.back());
    }
    CounterScope scope;
    EXPECT_EQ(G1::multi_pow(bases, exps), expect);
    EXPECT_EQ(scope.counts().g1_exp, n);
  }
}

TEST(G1, RoundTripAndIdentityEncoding) {
  SeededRng rng(12);
  for (int i = 0; i < 20; ++i) {
    const auto p = G1::generator().pow(Scalar::random(rng));
    EXPECT_EQ(G1::from_bytes(p.to_bytes()), p);
  }
  const auto id = G1::identity().to_bytes();
  EXPECT_EQ(id[0], 0xc0);
  EXPECT_TRUE(G1::from_bytes(id).is_identity());
}

// Finds an x with x^3 + 4 a square (or not) and returns the compressed point.
std::array<std::uint8_t, 48> raw_point(bool want_on_curve) {
  for (std::uint64_t x = 1;; ++x) {
    std::uint64_t limbs[6] = {x, 0, 0, 0, 0, 0};
    blst_p1_affine p{};
    blst_fp_from_uint64(&p.x, limbs);
    blst_fp rhs, four;
    std::uint64_t four_l[6] = {4, 0, 0, 0, 0, 0};
    blst_fp_from_uint64(&four, four_l);
    blst_fp_sqr(&rhs, &p.x);
    blst_fp_mul(&rhs, &rhs, &p.x);
    blst_fp_add(&rhs, &rhs, &four);
    const bool square = blst_fp_sqrt(&p.y, &rhs);
    if (square != want_on_curve) continue;
    if (!square) p.y = p.x;
    std::array<std::uint8_t, 48> out{};
    blst_p1_affine_compress(out.data(), &p);
    return out;
  }
}

TEST(G1, DecodeRejectsOffCurveAndOffSubgroupPoints) {
  try {
    (void)G1::from_bytes(raw_point(false));
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.kind(), DecodeErrorKind::NotOnCurve);
  }
  try {
    (void)G1::from_bytes(raw_point(true));
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.kind(), DecodeErrorKind::NotInSubgroup);
  }
}

TEST(G1, DecodeRejectsBadFlagsAndLengths) {
  auto enc = G1::generator().to_bytes();
  enc[0] &= 0x7f;  // uncompressed flag on a 48-byte buffer
  EXPECT_THROW((void)G1::from_bytes(enc), DecodeError);
  try {
    (void)G1::from_bytes(Bytes(47));
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.kind(), DecodeErrorKind::BadLength);
  }
  auto inf = G1::identity().to_bytes();
  inf[47] = 1;  // identity with junk
  EXPECT_THROW((void)G1::from_bytes(inf), DecodeError);
}

TEST(G1, ReaderShiftsOffsets) {
  Bytes buf(10, 0);
  auto bad = raw_point(false);
  buf.insert(buf.end(), bad.begin(), bad.end());
  ByteReader in(buf, 100);
  (void)in.take(10);
  try {
    (void)read_g1(in);
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.offset(), 110u);
  }
}

TEST(G2, RoundTripAndArithmetic) {
  SeededRng rng(13);
  const auto a = Scalar::random(rng);
  const auto b = Scalar::random(rng);
  const auto h = G2::generator();
  EXPECT_EQ(h.pow(a) * h.pow(b), h.pow(a + b));
  EXPECT_EQ(G2::from_bytes(h.pow(a).to_bytes()), h.pow(a));
  EXPECT_TRUE((h * h.inverse()).is_identity());
  auto enc = h.to_bytes();
  enc[95] ^= 1;
  EXPECT_THROW((void)G2::from_bytes(enc), DecodeError);
}

TEST(Pairing, Bilinear) {
  SeededRng rng(14);
  const auto a = Scalar::random_nonzero(rng);
  const auto b = Scalar::random_nonzero(rng);
  const auto g = G1::generator();
  const auto h = G2::generator();
  const auto e = pairing(g, h);
  EXPECT_FALSE(e.is_one());
  EXPECT_EQ(pairing(g.pow(a), h.pow(b)), e.pow(a * b));
  EXPECT_EQ(pairing(g.pow(a), h), pairing(g, h.pow(a)));
  EXPECT_TRUE(pairing(G1::identity(), h).is_one());
  EXPECT_EQ(e * e.inverse(), Gt::one());
}

TEST(Pairing, MultiPairingIsProductAndCounted) {
  SeededRng rng(15);
  std::vector<std::pair<G1, G2>> terms;
  Gt expect;
  for (int i = 0; i < 3; ++i) {
    terms.emplace_back(G1::generator().pow(Scalar::random(rng)),
                       G2::generator().pow(Scalar::random(rng)));
    expect = expect * pairing(terms.back().first, terms.back().second);
  }
  terms.emplace_back(G1::identity(), G2::generator());
  CounterScope scope;
  EXPECT_EQ(multi_pairing(terms), expect);
  EXPECT_EQ(scope.counts().pairings, 4u);
}

TEST(Gt, PowMatchesRepeatedMultiplication) {
  const auto e = pairing(G1::generator(), G2::generator());
  Gt acc;
  for (std::uint64_t k = 0; k < 40; ++k) {
    EXPECT_EQ(e.pow(Scalar::from_u64(k)), acc);
    acc = acc * e;
  }
  EXPECT_EQ(e.pow(Scalar::zero() - Scalar::one()), e.inverse());
}

TEST(Counters, NestedScopesMerge) {
  CounterScope outer;
  {
    CounterScope inner;
    (void)G1::generator().pow(Scalar::from_u64(3));
    (void)G2::generator().pow(Scalar::from_u64(3));
    EXPECT_EQ(inner.counts().g1_exp, 1u);
    EXPECT_EQ(inner.counts().g2_exp, 1u);
  }
  (void)pairing(G1::generator(), G2::generator()).pow(Scalar::from_u64(5));
  EXPECT_EQ(outer.counts(), (OpCounters{1, 1, 1, 1}));
}

TEST(Hash, HashToG1MatchesRfc9380Vector) {
  const auto p = hash_to_g1("QUUX-V01-CS02-with-BLS12381G1_XMD:SHA-256_SSWU_RO_", {});
  EXPECT_EQ(to_hex(p.to_bytes()),
            "852926add2207b76ca4fa57a8734416c8dc95e24501772c814278700eed6d1e4e8cf62d9c09db0fac349612b759e79a1");
  EXPECT_THROW((void)hash_to_g1("", {}), std::invalid_argument);
}

TEST(Hash, DomainSeparation) {
  const auto m = as_bytes("msg");
  EXPECT_FALSE(hash_to_g1("A", m) == hash_to_g1("B", m));
  EXPECT_FALSE(hash_to_scalar("A", m) == hash_to_scalar("B", m));
  EXPECT_EQ(hash_to_scalar("A", m), hash_to_scalar("A", m));
}

TEST(Hash, Sha256KnownAnswer) {
  EXPECT_EQ(to_hex(sha256(as_bytes("abc"))),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Rng, SeededStreamsAreDeterministicAndDistinct) {
  SeededRng a(1), b(1), c(2), d(1, 1);
  const auto x = a.next_u64();
  EXPECT_EQ(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
  EXPECT_NE(x, d.next_u64());
  for (int i = 0; i < 1000; ++i) EXPECT_LT(a.uniform(7), 7u);
}

}  // namespace
}  // namespace aqkd
