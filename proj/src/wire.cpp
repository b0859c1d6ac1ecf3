// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include "aqkd/wire.hpp"

#include <algorithm>

namespace aqkd {

SessionId SessionId::fresh(Rng& rng, std::uint64_t now) {
  SessionId sid;
  rng.fill(sid.nonce);
  sid.timestamp = now;
  return sid;
}

std::array<std::uint8_t, kSessionIdBytes> SessionId::to_bytes() const {
  std::array<std::uint8_t, kSessionIdBytes> out{};
  std::copy(nonce.begin(), nonce.end(), out.begin());
  for (int i = 0; i < 8; ++i) out[16 + i] = static_cast<std::uint8_t>(timestamp >> (56 - 8 * i));
  return out;
}

SessionId SessionId::read(ByteReader& in) {
  SessionId sid;
  sid.nonce = in.fixed<16>();
  sid.timestamp = in.u64();
  return sid;
}

namespace {

void write_header(ByteWriter& w, const HopMessage& msg) {
  w.raw(kWireMagic);
  w.u8(kWireVersion);
  w.raw(msg.sid.to_bytes());
  w.raw(msg.policy.encode());
}

}  // namespace

void write_hop_entry(ByteWriter& out, const HopEntry& hop) {
  out.raw(hop.nym.to_bytes());
  hop.proof.write(out);
}

Bytes serialize_hop_message(const HopMessage& msg) {
  if (msg.hops.size() > 0xffff) throw std::length_error("too many hops");
  ByteWriter w;
  write_header(w, msg);
  w.u16(static_cast<std::uint16_t>(msg.hops.size()));
  for (const auto& hop : msg.hops) write_hop_entry(w, hop);
  w.u8(msg.link ? 1 : 0);
  if (msg.link) w.raw(msg.link->to_bytes());
  return std::move(w).take();
}

HopMessage read_hop_message(ByteReader& in) {
  const auto magic_at = in.offset();
  if (in.fixed<4>() != kWireMagic) {
    throw DecodeError(DecodeErrorKind::NonCanonical, magic_at, "bad magic");
  }
  const auto version_at = in.offset();
  if (in.u8() != kWireVersion) {
    throw DecodeError(DecodeErrorKind::NonCanonical, version_at, "unsupported version");
  }
  HopMessage msg;
  msg.sid = SessionId::read(in);
  msg.policy = Policy::decode(in);
  const auto hidden = msg.policy.hidden_count();
  const auto count = in.u16();
  msg.hops.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    HopEntry hop;
    hop.nym = read_g1(in);
    hop.proof = CredentialProof::read(in, hidden);
    msg.hops.push_back(std::move(hop));
  }
  const auto flag_at = in.offset();
  const auto flag = in.u8();
  if (flag > 1) throw DecodeError(DecodeErrorKind::NonCanonical, flag_at, "bad link flag");
  if (flag == 1) msg.link = SchnorrProof::read(in);
  return msg;
}

HopMessage deserialize_hop_message(ByteView bytes) {
  ByteReader in(bytes);
  auto msg = read_hop_message(in);
  in.expect_end();
  return msg;
}

ContextBuilder::ContextBuilder(const HopMessage& msg) {
  ByteWriter h;
  write_header(h, msg);
  header_ = std::move(h).take();
  hops_.reserve(msg.hops.size());
  for (const auto& hop : msg.hops) {
    ByteWriter w;
    write_hop_entry(w, hop);
    hops_.push_back(std::move(w).take());
  }
}

Bytes ContextBuilder::prefix(std::size_t j) const {
  if (j > hops_.size()) throw std::out_of_range("context prefix beyond hop list");
  ByteWriter w;
  w.raw(header_);
  w.u16(static_cast<std::uint16_t>(j));
  for (std::size_t k = 0; k < j; ++k) w.raw(hops_[k]);
  return std::move(w).take();
}

Bytes ContextBuilder::proof_context(const G2& issuer_pk, std::size_t j) const {
  ByteWriter w;
  w.raw(issuer_pk.to_bytes());
  w.raw(prefix(j));
  return std::move(w).take();
}

std::size_t payload_bytes(const HopMessage& msg) {
  std::size_t total = 0;
  for (const auto& hop : msg.hops) total += kG1Bytes + hop.proof.encoded_size();
  if (msg.link) total += 2 * kScalarBytes;
  return total;
}

std::size_t closed_form_payload_bytes(std::size_t n, std::size_t attr_count,
                                      std::size_t disclosed) {
  return 3 * n * kG1Bytes + n * kG2Bytes +
         ((4 + (attr_count - disclosed)) * n + 2) * kScalarBytes;
}

}  // namespace aqkd
