// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include "aqkd/groth.hpp"

#include <algorithm>
#include <stdexcept>

namespace aqkd {

IssuerKeyPair IssuerKeyPair::generate(const PublicParams& pp, Rng& rng) {
  return from_secret(pp, Scalar::random_nonzero(rng));
}

IssuerKeyPair IssuerKeyPair::from_secret(const PublicParams& pp, const Scalar& sk) {
  if (sk.is_zero()) throw std::invalid_argument("issuer secret must be non-zero");
  return {sk, pp.g_hat.pow(sk)};
}

std::array<std::uint8_t, kSignatureBytes> GrothSignature::to_bytes() const {
  std::array<std::uint8_t, kSignatureBytes> out{};
  const auto a = r_hat.to_bytes();
  const auto b = s.to_bytes();
  const auto c = t.to_bytes();
  auto it = std::copy(a.begin(), a.end(), out.begin());
  it = std::copy(b.begin(), b.end(), it);
  std::copy(c.begin(), c.end(), it);
  return out;
}

GrothSignature GrothSignature::read(ByteReader& in) {
  GrothSignature sig;
  sig.r_hat = read_g2(in);
  sig.s = read_g1(in);
  sig.t = read_g1(in);
  return sig;
}

GrothSignature GrothSignature::from_bytes(ByteView bytes) {
  ByteReader in(bytes);
  auto sig = read(in);
  in.expect_end();
  return sig;
}

namespace groth {

GrothSignature sign(const PublicParams& pp, const Scalar& sk, const G1& msg, Rng& rng) {
  if (sk.is_zero()) throw std::invalid_argument("issuer secret must be non-zero");
  const auto r = Scalar::random_blinding(rng);
  const auto r_inv = r.inverse();
  GrothSignature sig;
  sig.r_hat = pp.g_hat.pow(r);
  sig.s = (pp.y * pp.g.pow(sk)).pow(r_inv);
  sig.t = (pp.y.pow(sk) * msg).pow(r_inv);
  return sig;
}

GrothSignature rerandomize(const GrothSignature& sig, Rng& rng) {
  const auto r = Scalar::random_blinding(rng);
  const auto r_inv = r.inverse();
  return {sig.r_hat.pow(r), sig.s.pow(r_inv), sig.t.pow(r_inv)};
}

bool verify(const PublicParams& pp, const G2& pk, const GrothSignature& sig, const G1& msg) {
  if (sig.r_hat.is_identity()) return false;
  const std::pair<G1, G2> first[] = {
      {sig.s, sig.r_hat}, {pp.y.inverse(), pp.g_hat}, {pp.g.inverse(), pk}};
  if (!multi_pairing(first).is_one()) return false;
  const std::pair<G1, G2> second[] = {
      {sig.t, sig.r_hat}, {pp.y.inverse(), pk}, {msg.inverse(), pp.g_hat}};
  return multi_pairing(second).is_one();
}

}  // namespace groth

}  // namespace aqkd
