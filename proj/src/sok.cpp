// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include "aqkd/sok.hpp"

#include <algorithm>

#include "aqkd/pseudonym.hpp"

namespace aqkd {

namespace {

G1 sid_base(ByteView sid) { return scope_base(session_scope(sid)); }

Scalar registration_challenge(const G1& pk, const G1& t, ByteView did) {
  ByteWriter w;
  w.raw(pk.to_bytes());
  w.raw(t.to_bytes());
  w.raw(did);
  return hash_to_scalar(kRegistrationTag, w.bytes());
}

Scalar link_challenge(ByteView sid, ByteView ctx, const G1& nym, const G1& pk, const G1& t1,
                      const G1& t2) {
  ByteWriter w;
  w.raw(sid);
  w.raw(ctx);
  w.raw(nym.to_bytes());
  w.raw(pk.to_bytes());
  w.raw(t1.to_bytes());
  w.raw(t2.to_bytes());
  return hash_to_scalar(kLinkTag, w.bytes());
}

Scalar credential_challenge(const G2& issuer_pk, ByteView sid, const Policy& policy, ByteView ctx,
                            const G1& nym, const BlindedCredential& b, const Gt& t1, const Gt& t2,
                            const G1& t3) {
  ByteWriter w;
  w.raw(issuer_pk.to_bytes());
  w.raw(sid);
  w.raw(policy.encode());
  w.raw(ctx);
  w.raw(nym.to_bytes());
  w.raw(b.r_hat.to_bytes());
  w.raw(b.s.to_bytes());
  w.raw(b.t.to_bytes());
  w.raw(t1.transcript_bytes());
  w.raw(t2.transcript_bytes());
  w.raw(t3.to_bytes());
  return hash_to_scalar(kCredentialTag, w.bytes());
}

CredentialProof prove_impl(const PublicParams& pp, const Scalar& sk, const AttributeVector& attrs,
                           const GrothSignature& cred, const Policy& policy, ByteView sid,
                           const G1& nym, ByteView ctx, const G2& issuer_pk, Rng& rng) {
  if (attrs.size() != pp.attr_count || policy.attr_count() != pp.attr_count) {
    throw ProofError(ProofError::Kind::InvalidCredential, "attribute length mismatch");
  }
  if (cred.r_hat.is_identity()) {
    throw ProofError(ProofError::Kind::InvalidCredential, "credential has identity R");
  }
  const auto hidden = policy.hidden_indices();
  auto blinding = blind_credential(cred, rng);

  const auto r_sk = Scalar::random(rng);
  const auto r_alpha = Scalar::random(rng);
  const auto r_beta = Scalar::random(rng);
  std::vector<Scalar> r_hidden;
  r_hidden.reserve(hidden.size());
  for (std::size_t k = 0; k < hidden.size(); ++k) r_hidden.push_back(Scalar::random(rng));

  const auto& b = blinding.blinded;
  const auto p_s = pairing(b.s, b.r_hat);
  const auto p_t = pairing(b.t, b.r_hat);

  std::vector<G1> bases{pp.h_setup};
  std::vector<Scalar> exps{-r_sk};
  for (std::size_t k = 0; k < hidden.size(); ++k) {
    bases.push_back(pp.h[hidden[k]]);
    exps.push_back(-r_hidden[k]);
  }
  const auto w = G1::multi_pow(bases, exps);

  const auto t1 = p_s.pow(r_alpha);
  const auto t2 = p_t.pow(r_beta) * pairing(w, pp.g_hat);
  const auto t3 = sid_base(sid).pow(r_sk);

  CredentialProof proof;
  proof.blinded = b;
  proof.c = credential_challenge(issuer_pk, sid, policy, ctx, nym, b, t1, t2, t3);
  proof.z_sk = r_sk + proof.c * sk;
  proof.z_alpha = r_alpha + proof.c * blinding.alpha;
  proof.z_beta = r_beta + proof.c * blinding.beta;
  proof.z_hidden.reserve(hidden.size());
  for (std::size_t k = 0; k < hidden.size(); ++k) {
    proof.z_hidden.push_back(r_hidden[k] + proof.c * attrs.values[hidden[k]]);
  }
  return proof;
}

}  // namespace

std::array<std::uint8_t, 2 * kScalarBytes> SchnorrProof::to_bytes() const {
  std::array<std::uint8_t, 2 * kScalarBytes> out{};
  const auto a = c.to_bytes();
  const auto b = z.to_bytes();
  std::copy(b.begin(), b.end(), std::copy(a.begin(), a.end(), out.begin()));
  return out;
}

SchnorrProof SchnorrProof::read(ByteReader& in) {
  SchnorrProof p;
  p.c = read_scalar(in);
  p.z = read_scalar(in);
  return p;
}

SchnorrProof SchnorrProof::from_bytes(ByteView bytes) {
  ByteReader in(bytes);
  auto p = read(in);
  in.expect_end();
  return p;
}

RegistrationProof prove_registration(const PublicParams& pp, const Scalar& sk, const G1& pk,
                                     ByteView did, Rng& rng) {
  const auto r = Scalar::random(rng);
  const auto t = pp.h_setup.pow(r);
  const auto c = registration_challenge(pk, t, did);
  return {c, r + c * sk};
}

bool verify_registration(const PublicParams& pp, const G1& pk, ByteView did,
                         const RegistrationProof& proof) {
  if (pk.is_identity()) return false;
  const auto t = pp.h_setup.pow(proof.z) * pk.pow(-proof.c);
  return registration_challenge(pk, t, did) == proof.c;
}

LinkProof prove_link(const PublicParams& pp, const Scalar& sk, ByteView sid, const G1& nym,
                     const G1& pk, ByteView ctx, Rng& rng) {
  const auto r = Scalar::random(rng);
  const auto t1 = sid_base(sid).pow(r);
  const auto t2 = pp.h_setup.pow(r);
  const auto c = link_challenge(sid, ctx, nym, pk, t1, t2);
  return {c, r + c * sk};
}

bool verify_link(const PublicParams& pp, const LinkProof& proof, ByteView sid, const G1& nym,
                 const G1& pk, ByteView ctx) {
  const auto minus_c = -proof.c;
  const auto t1 = sid_base(sid).pow(proof.z) * nym.pow(minus_c);
  const auto t2 = pp.h_setup.pow(proof.z) * pk.pow(minus_c);
  return link_challenge(sid, ctx, nym, pk, t1, t2) == proof.c;
}

Blinding blind_credential(const GrothSignature& cred, Rng& rng) {
  const auto r = Scalar::random_blinding(rng);
  const auto alpha = Scalar::random_blinding(rng);
  const auto beta = Scalar::random_blinding(rng);
  const auto r_inv = r.inverse();
  const auto s1 = cred.s.pow(r_inv);
  const auto t1 = cred.t.pow(r_inv);
  Blinding out;
  out.blinded.r_hat = cred.r_hat.pow(r);
  out.blinded.s = s1.pow(alpha.inverse());
  out.blinded.t = t1.pow(beta.inverse());
  out.alpha = alpha;
  out.beta = beta;
  return out;
}

void CredentialProof::write(ByteWriter& out) const {
  out.raw(blinded.r_hat.to_bytes());
  out.raw(blinded.s.to_bytes());
  out.raw(blinded.t.to_bytes());
  out.raw(c.to_bytes());
  out.raw(z_sk.to_bytes());
  out.raw(z_alpha.to_bytes());
  out.raw(z_beta.to_bytes());
  for (const auto& z : z_hidden) out.raw(z.to_bytes());
}

CredentialProof CredentialProof::read(ByteReader& in, std::size_t hidden_count) {
  CredentialProof p;
  p.blinded.r_hat = read_g2(in);
  p.blinded.s = read_g1(in);
  p.blinded.t = read_g1(in);
  p.c = read_scalar(in);
  p.z_sk = read_scalar(in);
  p.z_alpha = read_scalar(in);
  p.z_beta = read_scalar(in);
  p.z_hidden.reserve(hidden_count);
  for (std::size_t k = 0; k < hidden_count; ++k) p.z_hidden.push_back(read_scalar(in));
  return p;
}

std::size_t CredentialProof::encoded_size() const {
  return kG2Bytes + 2 * kG1Bytes + (4 + z_hidden.size()) * kScalarBytes;
}

PreparedIssuerKey PreparedIssuerKey::prepare(const PublicParams& pp, const G2& pk) {
  return {pk, pp.e_y_ghat * pairing(pp.g, pk)};
}

CredentialProof prove_credential(const PublicParams& pp, const Scalar& sk,
                                 const AttributeVector& attrs, const GrothSignature& cred,
                                 const Policy& policy, ByteView sid, const G1& nym, ByteView ctx,
                                 const G2& issuer_pk, Rng& rng) {
  if (!policy.evaluate(attrs)) {
    throw ProofError(ProofError::Kind::PolicyUnsatisfied, "attributes do not satisfy policy");
  }
  return prove_impl(pp, sk, attrs, cred, policy, sid, nym, ctx, issuer_pk, rng);
}

CredentialProof prove_credential_unchecked(const PublicParams& pp, const Scalar& sk,
                                           const AttributeVector& attrs,
                                           const GrothSignature& cred, const Policy& policy,
                                           ByteView sid, const G1& nym, ByteView ctx,
                                           const G2& issuer_pk, Rng& rng) {
  return prove_impl(pp, sk, attrs, cred, policy, sid, nym, ctx, issuer_pk, rng);
}

bool verify_credential(const PublicParams& pp, const CredentialProof& proof, const Policy& policy,
                       ByteView sid, const G1& nym, ByteView ctx, const PreparedIssuerKey& issuer) {
  if (policy.attr_count() != pp.attr_count) return false;
  if (proof.z_hidden.size() != policy.hidden_count()) return false;
  const auto& b = proof.blinded;
  if (b.r_hat.is_identity() || nym.is_identity()) return false;

  const auto minus_c = -proof.c;
  const auto p_s = pairing(b.s, b.r_hat);
  const auto p_t = pairing(b.t, b.r_hat);

  // F = prod_hidden H_i^{-z_i} * prod_disclosed H_i^{-c a_i}
  std::vector<G1> bases;
  std::vector<Scalar> exps;
  bases.reserve(pp.attr_count);
  exps.reserve(pp.attr_count);
  std::size_t k = 0;
  for (std::size_t i = 0; i < pp.attr_count; ++i) {
    bases.push_back(pp.h[i]);
    auto it = policy.required().find(static_cast<std::uint16_t>(i));
    if (it == policy.required().end()) {
      exps.push_back(-proof.z_hidden[k++]);
    } else {
      exps.push_back(minus_c * it->second);
    }
  }
  const auto f = G1::multi_pow(bases, exps);
  const auto y_c = pp.y.pow(minus_c);

  const auto t1 = p_s.pow(proof.z_alpha) * issuer.k1.pow(minus_c);
  const std::pair<G1, G2> folded[] = {{y_c, issuer.pk}, {f, pp.g_hat}};
  const auto t2 = p_t.pow(proof.z_beta) * pp.e_setup_ghat.pow(-proof.z_sk) * multi_pairing(folded);
  const auto t3 = sid_base(sid).pow(proof.z_sk) * nym.pow(minus_c);

  return credential_challenge(issuer.pk, sid, policy, ctx, nym, b, t1, t2, t3) == proof.c;
}

}  // namespace aqkd
