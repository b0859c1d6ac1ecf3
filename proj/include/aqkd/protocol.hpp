// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

// Protocol roles: issuer registration, sender initiation, node forwarding
// and receiver verification.

#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "aqkd/pseudonym.hpp"
#include "aqkd/wire.hpp"

namespace aqkd {

enum class RejectCode {
  // receiver verdicts
  ProofInvalid,
  LinkInvalid,
  DuplicatePseudonym,
  PolicyMismatch,
  SidMismatch,
  PathCountMismatch,
  DecodeError,
  // node-side refusals
  LinkProofInvalid,
  UnknownPredecessor,
  StaleSession,
  DuplicateSession,
  PolicyUnsatisfied,
  // registration
  RegistrationProofInvalid,
  InvalidCredential,
};

std::string_view to_string(RejectCode code);

class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(RejectCode code, const std::string& what);
  RejectCode code() const noexcept { return code_; }

 private:
  RejectCode code_;
};

using Directory = std::map<std::string, G1>;

// ---- issuer ----------------------------------------------------------------

class Issuer {
 public:
  Issuer(PublicParams pp, IssuerKeyPair keys);

  const PublicParams& params() const { return pp_; }
  const IssuerKeyPair& keys() const { return keys_; }

  // Fresh 16-byte registration nonce. Each nonce is accepted once.
  std::array<std::uint8_t, 16> begin_registration(Rng& rng);
  // Verifies the proof against (pk, did) and signs pedersen_message(pk, attrs).
  // Throws ProtocolError{RegistrationProofInvalid}.
  GrothSignature certify(const G1& pk, const AttributeVector& attrs,
                         const std::array<std::uint8_t, 16>& did, const RegistrationProof& proof,
                         Rng& rng);

 private:
  PublicParams pp_;
  IssuerKeyPair keys_;
  std::mutex mu_;
  std::set<std::array<std::uint8_t, 16>> pending_;
};

// Full honest registration round trip.
GrothSignature register_node(Issuer& issuer, const NodeKeyPair& node, const AttributeVector& attrs,
                             Rng& rng);

// ---- sender ------------------------------------------------------------------

// One empty message per path, all carrying the same fresh sid.
// Throws std::invalid_argument unless entry_nodes.size() == n_paths >= 1.
std::vector<HopMessage> sender_init(std::size_t n_paths, const Policy& policy,
                                    const std::vector<std::string>& entry_nodes, Rng& rng,
                                    std::uint64_t now);

// ---- nodes -------------------------------------------------------------------

struct NodeRecord {
  std::string id;
  NodeKeyPair keys;
  AttributeVector attrs;
  GrothSignature cred;
  Directory directory;  // physical neighbors
};

// Throws ProtocolError{InvalidCredential} unless the credential verifies.
void check_node_record(const PublicParams& pp, const NodeRecord& node, const G2& issuer_pk);

// Entry-node freshness state: timestamps within +-window seconds, nonces
// remembered until they could no longer pass the window. Thread-safe.
class ReplayGuard {
 public:
  explicit ReplayGuard(std::uint64_t window_seconds = 120) : window_(window_seconds) {}
  ReplayGuard(const ReplayGuard& other);
  ReplayGuard& operator=(const ReplayGuard& other);

  // Throws ProtocolError{StaleSession | DuplicateSession}.
  void admit(const SessionId& sid, std::uint64_t now);
  std::size_t tracked() const;

 private:
  std::uint64_t window_;
  mutable std::mutex mu_;
  std::map<std::array<std::uint8_t, 16>, std::uint64_t> seen_;  // nonce -> expiry
};

// Predecessor is std::nullopt when the message arrives from the sender.
// Throws ProtocolError with LinkProofInvalid, UnknownPredecessor,
// StaleSession, DuplicateSession or PolicyUnsatisfied.
HopMessage node_forward(const PublicParams& pp, const NodeRecord& node, const HopMessage& incoming,
                        const std::optional<std::string>& predecessor, const G2& issuer_pk,
                        ReplayGuard& guard, std::uint64_t now, Rng& rng);

// Misbehaving variant for simulations: skips the policy precondition and
// proves with whatever attributes the node holds.
HopMessage node_forward_ignoring_policy(const PublicParams& pp, const NodeRecord& node,
                                        const HopMessage& incoming,
                                        const std::optional<std::string>& predecessor,
                                        const G2& issuer_pk, ReplayGuard& guard,
                                        std::uint64_t now, Rng& rng);

// ---- receiver ----------------------------------------------------------------

struct ReceiverVerdict {
  std::optional<std::size_t> n_prime;
  RejectCode reason = RejectCode::ProofInvalid;
  std::size_t path = 0;
  std::size_t hop = 0;
  std::size_t other_path = 0;
  std::size_t other_hop = 0;
  std::vector<std::string> failures;  // every failed check, in check order

  bool accepted() const { return n_prime.has_value(); }
  std::string describe() const;

  static ReceiverVerdict accept(std::size_t n);
  static ReceiverVerdict reject(RejectCode reason, std::size_t path = 0, std::size_t hop = 0);
};

// Checks, in order: path count, sid and policy agreement, every credential
// proof path by path, every terminal link proof against its exit key, and
// pairwise distinctness of all pseudonyms. The first failure decides.
ReceiverVerdict receiver_verify(const PublicParams& pp, const std::vector<HopMessage>& finals,
                                const PreparedIssuerKey& issuer, const Policy& policy,
                                const std::vector<G1>& exit_pks);
// Resolves exit node ids through the receiver's directory first; an unknown
// exit yields LinkInvalid for that path.
ReceiverVerdict receiver_verify(const PublicParams& pp, const std::vector<HopMessage>& finals,
                                const PreparedIssuerKey& issuer, const Policy& policy,
                                const std::vector<std::string>& exit_nodes,
                                const Directory& directory);

}  // namespace aqkd
