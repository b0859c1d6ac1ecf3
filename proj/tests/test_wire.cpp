// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "aqkd/errors.hpp"
#include "test_util.hpp"

namespace aqkd {
namespace {

using testing::make_chain;
using testing::run_chain;

struct WireTest : ::testing::Test {
  SeededRng rng{61};
  testing::Chain chain = make_chain(3, 4, 2, rng);
  HopMessage msg = run_chain(chain, rng);
};

TEST_F(WireTest, RoundTrip) {
  const auto bytes = serialize_hop_message(msg);
  EXPECT_EQ(deserialize_hop_message(bytes), msg);
  auto no_link = msg;
  no_link.link.reset();
  EXPECT_EQ(deserialize_hop_message(serialize_hop_message(no_link)), no_link);
  const auto empty = sender_init(1, chain.policy, {"n0"}, rng, testing::kNow)[0];
  EXPECT_EQ(deserialize_hop_message(serialize_hop_message(empty)), empty);
}

TEST_F(WireTest, EveryTruncationIsBadLength) {
  const auto bytes = serialize_hop_message(msg);
  for (std::size_t n = 0; n < bytes.size(); ++n) {
    try {
      (void)deserialize_hop_message(ByteView(bytes).first(n));
      ADD_FAILURE() << "prefix of " << n << " bytes decoded";
    } catch (const DecodeError& e) {
      EXPECT_EQ(e.kind(), DecodeErrorKind::BadLength) << n;
      EXPECT_LE(e.offset(), n);
    }
  }
  auto longer = bytes;
  longer.push_back(0);
  try {
    (void)deserialize_hop_message(longer);
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.offset(), bytes.size());
  }
}

TEST_F(WireTest, HeaderChecks) {
  auto bytes = serialize_hop_message(msg);
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW((void)deserialize_hop_message(bad), DecodeError);
  bad = bytes;
  bad[4] = 2;
  try {
    (void)deserialize_hop_message(bad);
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
  bad = bytes;
  bad[bytes.size() - 65] = 2;  // link flag
  EXPECT_THROW((void)deserialize_hop_message(bad), DecodeError);
}

// Flipping any single bit either fails to decode or changes the message.
TEST_F(WireTest, EncodingIsInjectiveUnderBitFlips) {
  const auto bytes = serialize_hop_message(msg);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    auto bad = bytes;
    bad[i] ^= static_cast<std::uint8_t>(1u << (i % 8));
    try {
      EXPECT_FALSE(deserialize_hop_message(bad) == msg) << "byte " << i;
    } catch (const DecodeError&) {
    }
  }
}

TEST_F(WireTest, ErrorOffsetsPointAtTheField) {
  const auto bytes = serialize_hop_message(msg);
  // first hop's nym follows magic, version, sid, policy and hop count
  const std::size_t nym_at = 4 + 1 + 24 + chain.policy.encode().size() + 2;
  auto bad = bytes;
  for (std::size_t k = 1; k < 48; ++k) bad[nym_at + k] = 0xff;
  try {
    (void)deserialize_hop_message(bad);
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.offset(), nym_at);
  }
}

TEST_F(WireTest, ContextPrefixesAreTruncatedEncodings) {
  const ContextBuilder ctx(msg);
  for (std::size_t j = 0; j <= msg.hops.size(); ++j) {
    auto cut = msg;
    cut.hops.resize(j);
    cut.link.reset();
    const auto full = serialize_hop_message(cut);
    const auto prefix = ctx.prefix(j);
    // the hop count in the prefix is j, and only the link flag byte follows
    ASSERT_EQ(prefix.size() + 1, full.size());
    EXPECT_TRUE(std::equal(prefix.begin(), prefix.end(), full.begin()));
    EXPECT_EQ(full.back(), 0);
  }
  EXPECT_EQ(ctx.link_context(1), ctx.prefix(2));
  const auto pc = ctx.proof_context(chain.issuer_pk(), 1);
  const auto pk = chain.issuer_pk().to_bytes();
  EXPECT_TRUE(std::equal(pk.begin(), pk.end(), pc.begin()));
  EXPECT_THROW((void)ctx.prefix(4), std::out_of_range);
}

TEST_F(WireTest, SessionIdLayout) {
  SessionId sid;
  sid.nonce.fill(0x11);
  sid.timestamp = 0x0102030405060708ULL;
  const auto b = sid.to_bytes();
  EXPECT_EQ(b[16], 0x01);
  EXPECT_EQ(b[23], 0x08);
  ByteReader in(b);
  EXPECT_EQ(SessionId::read(in), sid);
}

TEST(Payload, ClosedFormMatchesHandCount) {
  for (std::size_t n : {1u, 7u, 100u}) {
    for (auto [l, d] : {std::pair<std::size_t, std::size_t>{20, 10}, {10, 5}, {3, 0}, {3, 3}}) {
      const std::size_t hand = 3 * n * 48 + n * 96 + ((4 + (l - d)) * n + 2) * 32;
      EXPECT_EQ(closed_form_payload_bytes(n, l, d), hand);
    }
  }
  EXPECT_EQ(closed_form_payload_bytes(100, 20, 10), 68864u);
}

TEST(Payload, HundredHopMessageIs68864Bytes) {
  SeededRng rng(62);
  auto chain = make_chain(2, 20, 10, rng);
  const auto two = run_chain(chain, rng);
  HopMessage big = two;
  big.hops.clear();
  for (std::size_t i = 0; i < 100; ++i) big.hops.push_back(two.hops[i % 2]);
  EXPECT_EQ(payload_bytes(big), 68864u);
  const auto wire = serialize_hop_message(big);
  // payload plus framing: magic, version, sid, policy, hop count, link flag
  EXPECT_EQ(wire.size(), 68864u + 4 + 1 + 24 + chain.policy.encode().size() + 2 + 1);
  EXPECT_EQ(deserialize_hop_message(wire), big);
}

}  // namespace
}  // namespace aqkd
