// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

// Type-3 bilinear group arithmetic on BLS12-381.
//
// Group operations use multiplicative notation to match the usual protocol
// descriptions: `a * b` is the group operation and `a.pow(x)` is
// exponentiation by a scalar. Every pow() and pairing evaluation is tallied
// by the active CounterScope.
//
// Encodings: Scalar 32 bytes big-endian, G1 48 bytes compressed, G2 96 bytes
// compressed (Zcash flag layout). GT elements only ever feed transcripts.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

#include "aqkd/bytes.hpp"
#include "aqkd/counters.hpp"
#include "aqkd/rng.hpp"

namespace aqkd {

inline constexpr std::size_t kScalarBytes = 32;
inline constexpr std::size_t kG1Bytes = 48;
inline constexpr std::size_t kG2Bytes = 96;
inline constexpr std::size_t kGtTranscriptBytes = 576;

std::array<std::uint8_t, 32> sha256(ByteView data);

// Element of Z_p, p the prime order of the BLS12-381 groups.
class Scalar {
 public:
  Scalar();  // zero

  static Scalar zero() { return Scalar(); }
  static Scalar one();
  static Scalar from_u64(std::uint64_t v);
  // Exactly 32 bytes, value < p; otherwise BadLength / NonCanonical.
  static Scalar from_bytes(ByteView bytes);
  // Any length; interpreted big-endian and reduced mod p.
  static Scalar from_bytes_reduced(ByteView bytes);
  static Scalar random(Rng& rng);
  static Scalar random_nonzero(Rng& rng);
  // Uniform over Z_p^* \ {1}.
  static Scalar random_blinding(Rng& rng);

  std::array<std::uint8_t, kScalarBytes> to_bytes() const;
  bool is_zero() const;
  // Throws std::domain_error on zero.
  Scalar inverse() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  bool operator==(const Scalar& o) const;

  // Group order p, big-endian.
  static std::array<std::uint8_t, kScalarBytes> modulus_bytes();

 private:
  friend struct GroupAccess;
  alignas(8) std::array<std::uint64_t, 4> limbs_{};
};

class G1 {
 public:
  G1();  // identity

  static G1 identity() { return G1(); }
  static G1 generator();
  static G1 from_bytes(ByteView bytes);
  // Product of bases[i]^exps[i]; counts one G1 exponentiation per base.
  static G1 multi_pow(std::span<const G1> bases, std::span<const Scalar> exps);

  std::array<std::uint8_t, kG1Bytes> to_bytes() const;
  bool is_identity() const;
  bool in_subgroup() const;

  G1 pow(const Scalar& e) const;
  G1 inverse() const;
  G1 operator*(const G1& o) const;
  G1& operator*=(const G1& o) { return *this = *this * o; }
  bool operator==(const G1& o) const;

 private:
  friend struct GroupAccess;
  alignas(8) std::array<std::uint64_t, 18> raw_{};
};

class G2 {
 public:
  G2();  // identity

  static G2 identity() { return G2(); }
  static G2 generator();
  static G2 from_bytes(ByteView bytes);

  std::array<std::uint8_t, kG2Bytes> to_bytes() const;
  bool is_identity() const;

  G2 pow(const Scalar& e) const;
  G2 inverse() const;
  G2 operator*(const G2& o) const;
  bool operator==(const G2& o) const;

 private:
  friend struct GroupAccess;
  alignas(8) std::array<std::uint64_t, 36> raw_{};
};

// Target group element. Only produced by pairings and operations on their
// outputs, so it always lies in the order-p cyclotomic subgroup.
class Gt {
 public:
  Gt();  // one

  static Gt one() { return Gt(); }

  Gt pow(const Scalar& e) const;
  Gt inverse() const;
  Gt operator*(const Gt& o) const;
  Gt& operator*=(const Gt& o) { return *this = *this * o; }
  bool operator==(const Gt& o) const;
  bool is_one() const;

  // Canonical 576-byte form for hashing into Fiat-Shamir transcripts.
  std::array<std::uint8_t, kGtTranscriptBytes> transcript_bytes() const;

 private:
  friend struct GroupAccess;
  alignas(8) std::array<std::uint64_t, 72> raw_{};
};

Gt pairing(const G1& a, const G2& b);
// Product of e(a_i, b_i) with a shared final exponentiation; counts one
// pairing per input pair.
Gt multi_pairing(std::span<const std::pair<G1, G2>> terms);

// Hash to G1 per RFC 9380 (BLS12381G1_XMD:SHA-256_SSWU_RO_) with the given
// domain separation tag. Throws std::invalid_argument on an empty tag.
G1 hash_to_g1(std::string_view domain_tag, ByteView input);
// expand_message_xmd to 48 bytes, reduced mod p.
Scalar hash_to_scalar(std::string_view domain_tag, ByteView transcript);

// Reader helpers; decode failures carry the absolute offset of the field.
Scalar read_scalar(ByteReader& in);
G1 read_g1(ByteReader& in);
G2 read_g2(ByteReader& in);

}  // namespace aqkd
