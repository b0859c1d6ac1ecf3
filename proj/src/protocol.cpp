// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include "aqkd/protocol.hpp"

#include <unordered_map>

namespace aqkd {

std::string_view to_string(RejectCode code) {
  switch (code) {
    case RejectCode::ProofInvalid: return "ProofInvalid";
    case RejectCode::LinkInvalid: return "LinkInvalid";
    case RejectCode::DuplicatePseudonym: return "DuplicatePseudonym";
    case RejectCode::PolicyMismatch: return "PolicyMismatch";
    case RejectCode::SidMismatch: return "SidMismatch";
    case RejectCode::PathCountMismatch: return "PathCountMismatch";
    case RejectCode::DecodeError: return "DecodeError";
    case RejectCode::LinkProofInvalid: return "LinkProofInvalid";
    case RejectCode::UnknownPredecessor: return "UnknownPredecessor";
    case RejectCode::StaleSession: return "StaleSession";
    case RejectCode::DuplicateSession: return "DuplicateSession";
    case RejectCode::PolicyUnsatisfied: return "PolicyUnsatisfied";
    case RejectCode::RegistrationProofInvalid: return "RegistrationProofInvalid";
    case RejectCode::InvalidCredential: return "InvalidCredential";
  }
  return "Unknown";
}

ProtocolError::ProtocolError(RejectCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

// ---- issuer ----------------------------------------------------------------

Issuer::Issuer(PublicParams pp, IssuerKeyPair keys) : pp_(std::move(pp)), keys_(keys) {}

std::array<std::uint8_t, 16> Issuer::begin_registration(Rng& rng) {
  std::array<std::uint8_t, 16> did{};
  rng.fill(did);
  std::lock_guard lock(mu_);
  pending_.insert(did);
  return did;
}

GrothSignature Issuer::certify(const G1& pk, const AttributeVector& attrs,
                               const std::array<std::uint8_t, 16>& did,
                               const RegistrationProof& proof, Rng& rng) {
  {
    std::lock_guard lock(mu_);
    if (pending_.erase(did) == 0) {
      throw ProtocolError(RejectCode::RegistrationProofInvalid, "unknown or reused nonce");
    }
  }
  if (!verify_registration(pp_, pk, did, proof)) {
    throw ProtocolError(RejectCode::RegistrationProofInvalid, "proof of key possession failed");
  }
  if (attrs.size() != pp_.attr_count) {
    throw ProtocolError(RejectCode::RegistrationProofInvalid, "attribute count mismatch");
  }
  return groth::sign(pp_, keys_.sk, pedersen_message(pk, attrs, pp_), rng);
}

GrothSignature register_node(Issuer& issuer, const NodeKeyPair& node, const AttributeVector& attrs,
                             Rng& rng) {
  const auto did = issuer.begin_registration(rng);
  const auto proof = prove_registration(issuer.params(), node.sk, node.pk, did, rng);
  return issuer.certify(node.pk, attrs, did, proof, rng);
}

// ---- sender ------------------------------------------------------------------

std::vector<HopMessage> sender_init(std::size_t n_paths, const Policy& policy,
                                    const std::vector<std::string>& entry_nodes, Rng& rng,
                                    std::uint64_t now) {
  if (n_paths == 0 || entry_nodes.size() != n_paths) {
    throw std::invalid_argument("need one entry node per path and at least one path");
  }
  const auto sid = SessionId::fresh(rng, now);
  std::vector<HopMessage> out(n_paths);
  for (auto& m : out) {
    m.sid = sid;
    m.policy = policy;
  }
  return out;
}

// ---- nodes -------------------------------------------------------------------

void check_node_record(const PublicParams& pp, const NodeRecord& node, const G2& issuer_pk) {
  if (node.attrs.size() != pp.attr_count ||
      !groth::verify(pp, issuer_pk, node.cred, pedersen_message(node.keys.pk, node.attrs, pp))) {
    throw ProtocolError(RejectCode::InvalidCredential, "credential of node " + node.id);
  }
}

ReplayGuard::ReplayGuard(const ReplayGuard& other) {
  std::lock_guard lock(other.mu_);
  window_ = other.window_;
  seen_ = other.seen_;
}

ReplayGuard& ReplayGuard::operator=(const ReplayGuard& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mu_, other.mu_);
  window_ = other.window_;
  seen_ = other.seen_;
  return *this;
}

void ReplayGuard::admit(const SessionId& sid, std::uint64_t now) {
  const auto ts = sid.timestamp;
  const bool fresh = ts <= now ? now - ts <= window_ : ts - now <= window_;
  if (!fresh) throw ProtocolError(RejectCode::StaleSession, "timestamp outside freshness window");
  std::lock_guard lock(mu_);
  std::erase_if(seen_, [now](const auto& kv) { return kv.second < now; });
  if (!seen_.emplace(sid.nonce, ts + window_).second) {
    throw ProtocolError(RejectCode::DuplicateSession, "session nonce already seen");
  }
}

std::size_t ReplayGuard::tracked() const {
  std::lock_guard lock(mu_);
  return seen_.size();
}

namespace {

HopMessage forward_impl(const PublicParams& pp, const NodeRecord& node, const HopMessage& incoming,
                        const std::optional<std::string>& predecessor, const G2& issuer_pk,
                        ReplayGuard& guard, std::uint64_t now, Rng& rng, bool enforce_policy) {
  const auto sid = incoming.sid.to_bytes();
  if (predecessor) {
    auto it = node.directory.find(*predecessor);
    if (it == node.directory.end()) {
      throw ProtocolError(RejectCode::UnknownPredecessor, *predecessor + " is not a neighbor");
    }
    if (incoming.hops.empty() || !incoming.link) {
      throw ProtocolError(RejectCode::LinkProofInvalid, "message carries no link proof");
    }
    const ContextBuilder ctx(incoming);
    const auto j = incoming.hops.size() - 1;
    if (!verify_link(pp, *incoming.link, sid, incoming.hops[j].nym, it->second,
                     ctx.link_context(j))) {
      throw ProtocolError(RejectCode::LinkProofInvalid, "link proof from " + *predecessor);
    }
  } else {
    if (!incoming.hops.empty() || incoming.link) {
      throw ProtocolError(RejectCode::LinkProofInvalid, "sender message must be empty");
    }
    guard.admit(incoming.sid, now);
  }
  if (incoming.policy.attr_count() != pp.attr_count ||
      (enforce_policy && !incoming.policy.evaluate(node.attrs))) {
    throw ProtocolError(RejectCode::PolicyUnsatisfied, node.id + " does not meet the policy");
  }

  const auto nym = nym_gen(node.keys.sk, session_scope(sid)).nym;
  HopMessage out = incoming;
  const auto j = incoming.hops.size();
  const auto proof_ctx = ContextBuilder(incoming).proof_context(issuer_pk, j);
  auto proof = enforce_policy
                   ? prove_credential(pp, node.keys.sk, node.attrs, node.cred, incoming.policy,
                                      sid, nym, proof_ctx, issuer_pk, rng)
                   : prove_credential_unchecked(pp, node.keys.sk, node.attrs, node.cred,
                                                incoming.policy, sid, nym, proof_ctx, issuer_pk,
                                                rng);
  out.hops.push_back({nym, std::move(proof)});
  out.link = prove_link(pp, node.keys.sk, sid, nym, node.keys.pk,
                        ContextBuilder(out).link_context(j), rng);
  return out;
}

}  // namespace

HopMessage node_forward(const PublicParams& pp, const NodeRecord& node, const HopMessage& incoming,
                        const std::optional<std::string>& predecessor, const G2& issuer_pk,
                        ReplayGuard& guard, std::uint64_t now, Rng& rng) {
  return forward_impl(pp, node, incoming, predecessor, issuer_pk, guard, now, rng, true);
}

HopMessage node_forward_ignoring_policy(const PublicParams& pp, const NodeRecord& node,
                                        const HopMessage& incoming,
                                        const std::optional<std::string>& predecessor,
                                        const G2& issuer_pk, ReplayGuard& guard,
                                        std::uint64_t now, Rng& rng) {
  return forward_impl(pp, node, incoming, predecessor, issuer_pk, guard, now, rng, false);
}

// ---- receiver ----------------------------------------------------------------

std::string ReceiverVerdict::describe() const {
  if (accepted()) return "n'=" + std::to_string(*n_prime);
  std::string s = "reject " + std::string(to_string(reason)) + " path=" + std::to_string(path);
  if (reason == RejectCode::ProofInvalid) s += " hop=" + std::to_string(hop);
  if (reason == RejectCode::DuplicatePseudonym) {
    s += " hop=" + std::to_string(hop) + " vs path=" + std::to_string(other_path) +
         " hop=" + std::to_string(other_hop);
  }
  return s;
}

ReceiverVerdict ReceiverVerdict::accept(std::size_t n) {
  ReceiverVerdict v;
  v.n_prime = n;
  return v;
}

ReceiverVerdict ReceiverVerdict::reject(RejectCode reason, std::size_t path, std::size_t hop) {
  ReceiverVerdict v;
  v.reason = reason;
  v.path = path;
  v.hop = hop;
  v.failures.push_back(v.describe());
  return v;
}

namespace {

ReceiverVerdict verify_impl(const PublicParams& pp, const std::vector<HopMessage>& finals,
                            const PreparedIssuerKey& issuer, const Policy& policy,
                            const std::vector<std::optional<G1>>& exit_pks) {
  if (finals.empty() || finals.size() != exit_pks.size()) {
    return ReceiverVerdict::reject(RejectCode::PathCountMismatch);
  }
  if (policy.attr_count() != pp.attr_count) return ReceiverVerdict::reject(RejectCode::PolicyMismatch);
  for (std::size_t i = 0; i < finals.size(); ++i) {
    if (!(finals[i].sid == finals[0].sid)) return ReceiverVerdict::reject(RejectCode::SidMismatch, i);
    if (!(finals[i].policy == policy)) return ReceiverVerdict::reject(RejectCode::PolicyMismatch, i);
  }

  std::optional<ReceiverVerdict> first;
  std::vector<std::string> failures;
  auto fail = [&](ReceiverVerdict v) {
    failures.push_back(v.describe());
    if (!first) first = std::move(v);
  };

  const auto sid = finals[0].sid.to_bytes();
  for (std::size_t i = 0; i < finals.size(); ++i) {
    const auto& msg = finals[i];
    if (msg.hops.empty()) {
      fail(ReceiverVerdict::reject(RejectCode::ProofInvalid, i, 0));
      continue;
    }
    const ContextBuilder ctx(msg);
    for (std::size_t j = 0; j < msg.hops.size(); ++j) {
      const auto& hop = msg.hops[j];
      if (!verify_credential(pp, hop.proof, policy, sid, hop.nym,
                             ctx.proof_context(issuer.pk, j), issuer)) {
        fail(ReceiverVerdict::reject(RejectCode::ProofInvalid, i, j));
      }
    }
  }
  for (std::size_t i = 0; i < finals.size(); ++i) {
    const auto& msg = finals[i];
    if (msg.hops.empty()) continue;
    const auto j = msg.hops.size() - 1;
    if (!msg.link || !exit_pks[i] ||
        !verify_link(pp, *msg.link, sid, msg.hops[j].nym, *exit_pks[i],
                     ContextBuilder(msg).link_context(j))) {
      fail(ReceiverVerdict::reject(RejectCode::LinkInvalid, i, j));
    }
  }

  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 0; i < finals.size(); ++i) {
    for (std::size_t j = 0; j < finals[i].hops.size(); ++j) {
      const auto enc = finals[i].hops[j].nym.to_bytes();
      auto [it, inserted] = seen.emplace(std::string(enc.begin(), enc.end()), std::pair{i, j});
      if (!inserted) {
        auto v = ReceiverVerdict::reject(RejectCode::DuplicatePseudonym, it->second.first,
                                         it->second.second);
        v.other_path = i;
        v.other_hop = j;
        v.failures = {v.describe()};
        fail(std::move(v));
      }
    }
  }

  if (first) {
    first->failures = std::move(failures);
    return *first;
  }
  return ReceiverVerdict::accept(finals.size());
}

}  // namespace

ReceiverVerdict receiver_verify(const PublicParams& pp, const std::vector<HopMessage>& finals,
                                const PreparedIssuerKey& issuer, const Policy& policy,
                                const std::vector<G1>& exit_pks) {
  std::vector<std::optional<G1>> keys(exit_pks.begin(), exit_pks.end());
  return verify_impl(pp, finals, issuer, policy, keys);
}

ReceiverVerdict receiver_verify(const PublicParams& pp, const std::vector<HopMessage>& finals,
                                const PreparedIssuerKey& issuer, const Policy& policy,
                                const std::vector<std::string>& exit_nodes,
                                const Directory& directory) {
  std::vector<std::optional<G1>> keys;
  for (const auto& id : exit_nodes) {
    auto it = directory.find(id);
    keys.push_back(it == directory.end() ? std::nullopt : std::optional<G1>(it->second));
  }
  return verify_impl(pp, finals, issuer, policy, keys);
}

}  // namespace aqkd
