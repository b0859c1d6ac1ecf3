// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>

#include "aqkd/errors.hpp"
#include "aqkd/files.hpp"

namespace aqkd::files {
namespace {

using netsim::ConfigError;

TEST(KeyFiles, IssuerRoundTrip) {
  SeededRng rng(101);
  const auto pp = PublicParams::derive(1);
  const auto keys = IssuerKeyPair::generate(pp, rng);
  const auto parsed = parse_issuer_key(issuer_key_text(keys), pp);
  EXPECT_EQ(parsed.sk, keys.sk);
  EXPECT_EQ(parsed.pk, keys.pk);
  EXPECT_EQ(parse_issuer_pub(issuer_pub_text(keys.pk)), keys.pk);
  auto text = issuer_key_text(keys);
  text.replace(text.find("pk ") + 3, 2, text.substr(text.find("pk ") + 3, 2) == "a0" ? "b0" : "a0");
  EXPECT_ANY_THROW((void)parse_issuer_key(text, pp));
  EXPECT_THROW((void)parse_issuer_pub("aqkd-issuer-key 1\n"), ConfigError);
}

TEST(KeyFiles, NodeRoundTrip) {
  SeededRng rng(102);
  const NodeKeyFile key{"alpha", NodeKeyPair::generate(rng)};
  const auto parsed = parse_node_key(node_key_text(key));
  EXPECT_EQ(parsed.id, "alpha");
  EXPECT_EQ(parsed.keys.sk, key.keys.sk);
  EXPECT_EQ(parsed.keys.pk, key.keys.pk);
  EXPECT_THROW((void)parse_node_key("aqkd-node-key 1\nid x\n"), ConfigError);
}

TEST(PolicyFile, ParseAndPrint) {
  const auto p = parse_policy("# comment\nid demo\nattrs 3\nrequire 1 blue\n");
  Policy expect("demo", 3);
  expect.require(1, "blue");
  EXPECT_EQ(p, expect);
  EXPECT_EQ(parse_policy(policy_text(p)), p);
  EXPECT_THROW((void)parse_policy("id x\n"), ConfigError);
  EXPECT_THROW((void)parse_policy("attrs 2\nrequire 2 a\n"), ConfigError);
  EXPECT_THROW((void)parse_policy("attrs 2\nrequire 0 0xzz\n"), ConfigError);
  EXPECT_THROW((void)parse_policy("attrs 2\nwhatever\n"), ConfigError);
}

TEST(RoutesFile, SpacesAndCommas) {
  const auto r = parse_routes("a b c\n\n# skip\nd,e , f\n");
  ASSERT_EQ(r.paths.size(), 2u);
  EXPECT_EQ(r.paths[1], (std::vector<std::string>{"d", "e", "f"}));
  EXPECT_THROW((void)parse_routes("# nothing\n"), ConfigError);
}

TEST(Store, RoundTrip) {
  SeededRng rng(103);
  const auto pp = PublicParams::derive(2);
  Issuer issuer(pp, IssuerKeyPair::generate(pp, rng));
  CredentialStore store;
  store.attr_count = 2;
  for (const char* id : {"a", "bb"}) {
    const auto k = NodeKeyPair::generate(rng);
    const auto attrs = AttributeVector::from_labels({"x", id});
    store.entries.push_back({id, k.pk, attrs, register_node(issuer, k, attrs, rng)});
  }
  const auto enc = store.encode();
  const auto back = CredentialStore::decode(enc);
  ASSERT_EQ(back.entries.size(), 2u);
  EXPECT_EQ(back.entries[1].id, "bb");
  EXPECT_EQ(back.entries[1].cred, store.entries[1].cred);
  EXPECT_EQ(back.entries[1].attrs.values, store.entries[1].attrs.values);
  EXPECT_THROW((void)CredentialStore::decode(ByteView(enc).first(enc.size() - 1)), DecodeError);
}

TEST(Transcript, RoundTripAndOffsets) {
  SeededRng rng(104);
  const auto pp = PublicParams::derive(2);
  auto issuer = std::make_shared<Issuer>(pp, IssuerKeyPair::generate(pp, rng));
  auto g = netsim::NetworkGraph::build(
      netsim::GraphSpec::parse("node A attrs x,y\nnode B attrs x,y\nedge A B\nentry A\nexit B\n"), issuer,
      rng);
  const auto rep = netsim::run_session(g, {{{"A", "B"}}}, Policy("p", 2), {}, rng);
  ASSERT_TRUE(rep.accepted());
  const auto enc = encode_transcript(rep.transcript);
  const auto back = decode_transcript(enc);
  EXPECT_EQ(back.finals, rep.transcript.finals);
  EXPECT_EQ(back.exit_pks, rep.transcript.exit_pks);
  // header 7, exit pk 48, length 4, then the wire message whose magic is at 0
  auto bad = enc;
  bad[7 + 48 + 4] = 'Z';
  try {
    (void)decode_transcript(bad);
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.offset(), 59u);
  }
}

TEST(Io, MissingFileIsIoError) {
  EXPECT_THROW((void)read_file("/nonexistent/file"), IoError);
  EXPECT_THROW(write_text("/nonexistent/dir/file", "x"), IoError);
  const auto path = std::filesystem::temp_directory_path() / "aqkd_io_test.bin";
  write_file(path.string(), Bytes{1, 2, 3});
  EXPECT_EQ(read_file(path.string()), (Bytes{1, 2, 3}));
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace aqkd::files
