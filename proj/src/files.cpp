// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include "aqkd/files.hpp"

#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

namespace aqkd::files {

using netsim::ConfigError;

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

std::string read_text(const std::string& path) {
  auto b = read_file(path);
  return std::string(b.begin(), b.end());
}

void write_file(const std::string& path, ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("short write to " + path);
}

void write_text(const std::string& path, const std::string& text) { write_file(path, as_bytes(text)); }

namespace {

// "key value" lines after a fixed header line.
std::map<std::string, std::string> key_values(const std::string& text, const std::string& header) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != header) throw ConfigError("expected header '" + header + "'");
  std::map<std::string, std::string> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto sp = line.find(' ');
    if (sp == std::string::npos) throw ConfigError("malformed line '" + line + "'");
    out[line.substr(0, sp)] = line.substr(sp + 1);
  }
  return out;
}

const std::string& field(const std::map<std::string, std::string>& kv, const std::string& k) {
  auto it = kv.find(k);
  if (it == kv.end()) throw ConfigError("missing field '" + k + "'");
  return it->second;
}

Bytes hex_field(const std::map<std::string, std::string>& kv, const std::string& k) {
  try {
    return from_hex(field(kv, k));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("field '" + k + "': " + e.what());
  }
}

}  // namespace

std::string issuer_key_text(const IssuerKeyPair& keys) {
  return "aqkd-issuer-key 1\nsk " + to_hex(keys.sk.to_bytes()) + "\npk " + to_hex(keys.pk.to_bytes()) +
         "\n";
}

std::string issuer_pub_text(const G2& pk) { return "aqkd-issuer-pub 1\npk " + to_hex(pk.to_bytes()) + "\n"; }

IssuerKeyPair parse_issuer_key(const std::string& text, const PublicParams& pp) {
  auto kv = key_values(text, "aqkd-issuer-key 1");
  auto keys = IssuerKeyPair::from_secret(pp, Scalar::from_bytes(hex_field(kv, "sk")));
  if (!(G2::from_bytes(hex_field(kv, "pk")) == keys.pk)) throw ConfigError("issuer pk does not match sk");
  return keys;
}

G2 parse_issuer_pub(const std::string& text) {
  return G2::from_bytes(hex_field(key_values(text, "aqkd-issuer-pub 1"), "pk"));
}

std::string node_key_text(const NodeKeyFile& key) {
  return "aqkd-node-key 1\nid " + key.id + "\nsk " + to_hex(key.keys.sk.to_bytes()) + "\npk " +
         to_hex(key.keys.pk.to_bytes()) + "\n";
}

NodeKeyFile parse_node_key(const std::string& text) {
  auto kv = key_values(text, "aqkd-node-key 1");
  NodeKeyFile out;
  out.id = field(kv, "id");
  const auto sk = Scalar::from_bytes(hex_field(kv, "sk"));
  if (sk.is_zero()) throw ConfigError("node secret is zero");
  out.keys = NodeKeyPair::from_secret(sk);
  if (!(G1::from_bytes(hex_field(kv, "pk")) == out.keys.pk)) throw ConfigError("node pk does not match sk");
  return out;
}

Policy parse_policy(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string id;
  std::size_t attrs = 0;
  std::vector<std::pair<std::size_t, std::string>> reqs;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "id") {
      if (!(ls >> id)) throw ConfigError("policy: 'id' needs a value");
    } else if (key == "attrs") {
      if (!(ls >> attrs)) throw ConfigError("policy: 'attrs' needs a count");
    } else if (key == "require") {
      std::size_t index = 0;
      std::string label;
      if (!(ls >> index >> label)) throw ConfigError("policy: expected 'require <index> <label>'");
      reqs.emplace_back(index, label);
    } else {
      throw ConfigError("policy: unknown directive '" + key + "'");
    }
  }
  if (attrs == 0) throw ConfigError("policy: missing 'attrs <count>'");
  try {
    Policy p(id, attrs);
    for (const auto& [index, label] : reqs) {
      if (label.rfind("0x", 0) == 0) {
        p.require(index, Scalar::from_bytes(from_hex(label.substr(2))));
      } else {
        p.require(index, label);
      }
    }
    return p;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("policy: ") + e.what());
  } catch (const DecodeError& e) {
    throw ConfigError(std::string("policy: ") + e.what());
  }
}

std::string policy_text(const Policy& policy) {
  std::string out = "id " + policy.id() + "\nattrs " + std::to_string(policy.attr_count()) + "\n";
  for (const auto& [index, value] : policy.required()) {
    out += "require " + std::to_string(index) + " 0x" + to_hex(value.to_bytes()) + "\n";
  }
  return out;
}

netsim::RouteSpec parse_routes(const std::string& text) {
  netsim::RouteSpec routes;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (auto& c : line) {
      if (c == ',') c = ' ';
    }
    std::istringstream ls(line);
    std::vector<std::string> path;
    for (std::string id; ls >> id;) path.push_back(id);
    if (!path.empty()) routes.paths.push_back(std::move(path));
  }
  if (routes.paths.empty()) throw ConfigError("routes file lists no paths");
  return routes;
}

Bytes CredentialStore::encode() const {
  ByteWriter w;
  w.raw("AQKC");
  w.u8(1);
  w.u16(static_cast<std::uint16_t>(attr_count));
  w.u32(static_cast<std::uint32_t>(entries.size()));
  for (const auto& e : entries) {
    if (e.attrs.size() != attr_count) throw std::invalid_argument("store entry has wrong length");
    w.prefixed(as_bytes(e.id));
    w.raw(e.pk.to_bytes());
    for (const auto& a : e.attrs.values) w.raw(a.to_bytes());
    w.raw(e.cred.to_bytes());
  }
  return std::move(w).take();
}

CredentialStore CredentialStore::decode(ByteView bytes) {
  ByteReader in(bytes);
  if (in.fixed<4>() != std::array<std::uint8_t, 4>{'A', 'Q', 'K', 'C'} || in.u8() != 1) {
    throw DecodeError(DecodeErrorKind::NonCanonical, 0, "not a credential store");
  }
  CredentialStore store;
  store.attr_count = in.u16();
  const auto count = in.u32();
  for (std::uint32_t k = 0; k < count; ++k) {
    StoreEntry e;
    auto id = in.prefixed();
    e.id.assign(id.begin(), id.end());
    e.pk = read_g1(in);
    for (std::size_t i = 0; i < store.attr_count; ++i) e.attrs.values.push_back(read_scalar(in));
    e.cred = GrothSignature::read(in);
    store.entries.push_back(std::move(e));
  }
  in.expect_end();
  return store;
}

Bytes encode_transcript(const netsim::SessionTranscript& t) {
  ByteWriter w;
  w.raw("AQKT");
  w.u8(1);
  w.u16(static_cast<std::uint16_t>(t.finals.size()));
  for (std::size_t i = 0; i < t.finals.size(); ++i) {
    w.raw(t.exit_pks.at(i).to_bytes());
    w.u32(static_cast<std::uint32_t>(t.finals[i].size()));
    w.raw(t.finals[i]);
  }
  return std::move(w).take();
}

netsim::SessionTranscript decode_transcript(ByteView bytes) {
  ByteReader in(bytes);
  if (in.fixed<4>() != std::array<std::uint8_t, 4>{'A', 'Q', 'K', 'T'}) {
    throw DecodeError(DecodeErrorKind::NonCanonical, 0, "not a transcript");
  }
  if (in.u8() != 1) throw DecodeError(DecodeErrorKind::NonCanonical, 4, "unsupported transcript version");
  netsim::SessionTranscript t;
  const auto paths = in.u16();
  for (std::size_t i = 0; i < paths; ++i) {
    t.exit_pks.push_back(read_g1(in));
    const auto len = in.u32();
    const auto at = in.offset();
    auto wire = in.take(len);
    try {
      (void)deserialize_hop_message(wire);
    } catch (const DecodeError& e) {
      throw e.shifted(at);
    }
    t.finals.emplace_back(wire.begin(), wire.end());
  }
  in.expect_end();
  return t;
}

}  // namespace aqkd::files
