// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

// Groth's structure-preserving signature on one G1 element, with public
// re-randomization.
//
//   sign:   R^ = G^^r,  S = (Y * G^sk)^(1/r),  T = (Y^sk * msg)^(1/r)
//   verify: e(S, R^) = e(Y, G^) e(G, pk)  and  e(T, R^) = e(Y, pk) e(msg, G^)

#pragma once

#include <array>

#include "aqkd/params.hpp"

namespace aqkd {

inline constexpr std::size_t kSignatureBytes = kG2Bytes + 2 * kG1Bytes;

struct IssuerKeyPair {
  Scalar sk;
  G2 pk;

  static IssuerKeyPair generate(const PublicParams& pp, Rng& rng);
  static IssuerKeyPair from_secret(const PublicParams& pp, const Scalar& sk);
};

struct GrothSignature {
  G2 r_hat;
  G1 s;
  G1 t;

  // R^ || S || T, 192 bytes.
  std::array<std::uint8_t, kSignatureBytes> to_bytes() const;
  static GrothSignature from_bytes(ByteView bytes);
  static GrothSignature read(ByteReader& in);

  bool operator==(const GrothSignature&) const = default;
};

namespace groth {

// Throws std::invalid_argument when sk is zero.
GrothSignature sign(const PublicParams& pp, const Scalar& sk, const G1& msg, Rng& rng);
GrothSignature rerandomize(const GrothSignature& sig, Rng& rng);
bool verify(const PublicParams& pp, const G2& pk, const GrothSignature& sig, const G1& msg);

}  // namespace groth

}  // namespace aqkd
