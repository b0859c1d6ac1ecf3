// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

// On-disk formats used by the command-line tool.
//
//   issuer key     text: "aqkd-issuer-key 1" / "sk <hex>" / "pk <hex>"
//   issuer public  text: "aqkd-issuer-pub 1" / "pk <hex>"
//   node key       text: "aqkd-node-key 1" / "id <id>" / "sk <hex>" / "pk <hex>"
//   policy         text: "id <x>" / "attrs <l>" / "require <index> <label>";
//                  a label of the form 0x<64 hex digits> is a raw attribute value
//   routes         text: one path per line, node ids separated by spaces
//   credential store  "AQKC" || u8 1 || u16 l || u32 count || entries of
//                     u16-prefixed id || pk 48 || l x 32 attrs || cred 192
//   transcript     "AQKT" || u8 1 || u16 paths || per path exit pk 48 ||
//                  u32 length || hop message

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "aqkd/netsim.hpp"

namespace aqkd::files {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Bytes read_file(const std::string& path);
std::string read_text(const std::string& path);
void write_file(const std::string& path, ByteView data);
void write_text(const std::string& path, const std::string& text);

// Text parsers throw netsim::ConfigError on malformed content.
std::string issuer_key_text(const IssuerKeyPair& keys);
std::string issuer_pub_text(const G2& pk);
IssuerKeyPair parse_issuer_key(const std::string& text, const PublicParams& pp);
G2 parse_issuer_pub(const std::string& text);

struct NodeKeyFile {
  std::string id;
  NodeKeyPair keys;
};
std::string node_key_text(const NodeKeyFile& key);
NodeKeyFile parse_node_key(const std::string& text);

Policy parse_policy(const std::string& text);
std::string policy_text(const Policy& policy);

netsim::RouteSpec parse_routes(const std::string& text);

struct StoreEntry {
  std::string id;
  G1 pk;
  AttributeVector attrs;
  GrothSignature cred;
};
struct CredentialStore {
  std::size_t attr_count = 0;
  std::vector<StoreEntry> entries;

  Bytes encode() const;
  static CredentialStore decode(ByteView bytes);
};

Bytes encode_transcript(const netsim::SessionTranscript& t);
netsim::SessionTranscript decode_transcript(ByteView bytes);

}  // namespace aqkd::files
