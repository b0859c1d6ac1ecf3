// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

// Hop message wire format (big-endian):
//
//   "AQKD" || u8 version=1 || sid (16-byte nonce || u64 timestamp)
//   || policy encoding || u16 hop count
//   || per hop: nym 48 || R'' 96 || S'' 48 || T'' 48 || c || z_sk || z_alpha
//               || z_beta || (l-d) hidden responses, 32 bytes each
//   || u8 link present || [c 32 || z 32]

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "aqkd/sok.hpp"

namespace aqkd {

inline constexpr std::array<std::uint8_t, 4> kWireMagic = {'A', 'Q', 'K', 'D'};
inline constexpr std::uint8_t kWireVersion = 1;
inline constexpr std::size_t kSessionIdBytes = 24;

struct SessionId {
  std::array<std::uint8_t, 16> nonce{};
  std::uint64_t timestamp = 0;

  static SessionId fresh(Rng& rng, std::uint64_t now);
  std::array<std::uint8_t, kSessionIdBytes> to_bytes() const;
  static SessionId read(ByteReader& in);
  bool operator==(const SessionId&) const = default;
};

struct HopEntry {
  G1 nym;
  CredentialProof proof;
  bool operator==(const HopEntry&) const = default;
};

struct HopMessage {
  SessionId sid;
  Policy policy;
  std::vector<HopEntry> hops;
  std::optional<LinkProof> link;  // absent only as emitted by the sender
  bool operator==(const HopMessage&) const = default;
};

Bytes serialize_hop_message(const HopMessage& msg);
// Applies every element decode check; errors carry absolute byte offsets.
HopMessage deserialize_hop_message(ByteView bytes);
HopMessage read_hop_message(ByteReader& in);

void write_hop_entry(ByteWriter& out, const HopEntry& hop);

// Serialized prefixes that proofs bind to. prefix(j) is the wire encoding of
// the message truncated to its first j hops, without the link field.
class ContextBuilder {
 public:
  explicit ContextBuilder(const HopMessage& msg);
  Bytes prefix(std::size_t j) const;
  // Context of the credential proof at hop j: issuer pk || prefix(j).
  Bytes proof_context(const G2& issuer_pk, std::size_t j) const;
  // Context of the link proof produced by hop j: prefix(j + 1).
  Bytes link_context(std::size_t j) const { return prefix(j + 1); }

 private:
  Bytes header_;
  std::vector<Bytes> hops_;
};

// Bytes of the receiver-facing payload metric: per hop three G1, one G2 and
// 4 + (l-d) scalars, plus 64 for the link proof when present.
std::size_t payload_bytes(const HopMessage& msg);
// 3n*48 + n*96 + ((4 + (l-d)) n + 2) * 32
std::size_t closed_form_payload_bytes(std::size_t n, std::size_t attr_count, std::size_t disclosed);

}  // namespace aqkd
