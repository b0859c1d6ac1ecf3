// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

// Fiat-Shamir signatures of knowledge:
//   registration  PoK{sk : pk = H(setup)^sk}, bound to the issuer nonce
//   link          PoK{sk : nym = H(sid)^sk and pk = H(setup)^sk}
//   credential    possession of a blinded Groth credential on
//                 pk * prod H_i^{a_i}, with the policy's attributes disclosed
//                 and nym = H(sid)^sk
//
// The credential proof treats e(S'',R''), e(T'',R''), e(H(setup),G^) and
// e(H_i,G^) as bases of a GT-valued homomorphism and proves a preimage.
// Hidden-attribute commitments are folded in G1 before pairing with G^.

#pragma once

#include <array>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "aqkd/groth.hpp"
#include "aqkd/policy.hpp"

namespace aqkd {

inline constexpr std::string_view kRegistrationTag = "AQKD/v1/reg";
inline constexpr std::string_view kCredentialTag = "AQKD/v1/cred";
inline constexpr std::string_view kLinkTag = "AQKD/v1/link";

// (c, z) pair shared by the two Schnorr-style proofs. 64 bytes on the wire.
struct SchnorrProof {
  Scalar c;
  Scalar z;

  std::array<std::uint8_t, 2 * kScalarBytes> to_bytes() const;
  static SchnorrProof from_bytes(ByteView bytes);
  static SchnorrProof read(ByteReader& in);
  bool operator==(const SchnorrProof&) const = default;
};

using RegistrationProof = SchnorrProof;
using LinkProof = SchnorrProof;

RegistrationProof prove_registration(const PublicParams& pp, const Scalar& sk, const G1& pk,
                                     ByteView did, Rng& rng);
bool verify_registration(const PublicParams& pp, const G1& pk, ByteView did,
                         const RegistrationProof& proof);

// `sid` is the 24-byte session id encoding.
LinkProof prove_link(const PublicParams& pp, const Scalar& sk, ByteView sid, const G1& nym,
                     const G1& pk, ByteView ctx, Rng& rng);
bool verify_link(const PublicParams& pp, const LinkProof& proof, ByteView sid, const G1& nym,
                 const G1& pk, ByteView ctx);

struct BlindedCredential {
  G2 r_hat;
  G1 s;
  G1 t;
  bool operator==(const BlindedCredential&) const = default;
};

struct Blinding {
  BlindedCredential blinded;
  Scalar alpha;
  Scalar beta;
};

// Re-randomizes with r' and then raises S', T' to 1/alpha, 1/beta.
Blinding blind_credential(const GrothSignature& cred, Rng& rng);

struct CredentialProof {
  BlindedCredential blinded;
  Scalar c;
  Scalar z_sk;
  Scalar z_alpha;
  Scalar z_beta;
  std::vector<Scalar> z_hidden;  // ascending hidden index order

  // R'' || S'' || T'' || c || z_sk || z_alpha || z_beta || z_hidden.
  void write(ByteWriter& out) const;
  static CredentialProof read(ByteReader& in, std::size_t hidden_count);
  std::size_t encoded_size() const;
  bool operator==(const CredentialProof&) const = default;
};

// Issuer key with its verification constant e(Y,G^) e(G,pk) precomputed.
struct PreparedIssuerKey {
  G2 pk;
  Gt k1;

  static PreparedIssuerKey prepare(const PublicParams& pp, const G2& pk);
};

class ProofError : public std::runtime_error {
 public:
  enum class Kind { PolicyUnsatisfied, InvalidCredential };
  ProofError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Throws ProofError{PolicyUnsatisfied} if attrs do not meet the policy and
// ProofError{InvalidCredential} on a malformed credential or length mismatch.
// The credential itself is assumed checked when it was issued.
CredentialProof prove_credential(const PublicParams& pp, const Scalar& sk,
                                 const AttributeVector& attrs, const GrothSignature& cred,
                                 const Policy& policy, ByteView sid, const G1& nym, ByteView ctx,
                                 const G2& issuer_pk, Rng& rng);

// Same computation without the policy precondition. Simulates a prover that
// ignores the rules; the result does not verify unless the attributes happen
// to satisfy the policy.
CredentialProof prove_credential_unchecked(const PublicParams& pp, const Scalar& sk,
                                           const AttributeVector& attrs,
                                           const GrothSignature& cred, const Policy& policy,
                                           ByteView sid, const G1& nym, ByteView ctx,
                                           const G2& issuer_pk, Rng& rng);

bool verify_credential(const PublicParams& pp, const CredentialProof& proof, const Policy& policy,
                       ByteView sid, const G1& nym, ByteView ctx, const PreparedIssuerKey& issuer);

}  // namespace aqkd
