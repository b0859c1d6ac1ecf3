// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "aqkd/errors.hpp"
#include "aqkd/params.hpp"
#include "aqkd/policy.hpp"

namespace aqkd {
namespace {

Policy sample() {
  Policy p("p", 5);
  p.require(0, "red").require(3, "blue");
  return p;
}

TEST(Policy, EvaluateChecksOnlyRequiredIndices) {
  const auto p = sample();
  auto attrs = AttributeVector::from_labels({"red", "x", "y", "blue", "z"});
  EXPECT_TRUE(p.evaluate(attrs));
  attrs.values[1] = attribute_scalar("other");
  EXPECT_TRUE(p.evaluate(attrs));
  attrs.values[3] = attribute_scalar("green");
  EXPECT_FALSE(p.evaluate(attrs));
  EXPECT_FALSE(p.evaluate(AttributeVector::from_labels({"red", "x", "y", "blue"})));
}

TEST(Policy, HiddenAndDisclosedPartition) {
  const auto p = sample();
  EXPECT_EQ(p.disclosed_count(), 2u);
  EXPECT_EQ(p.hidden_count(), 3u);
  EXPECT_EQ(p.hidden_indices(), (std::vector<std::size_t>{1, 2, 4}));
  EXPECT_TRUE(p.is_disclosed(3));
  EXPECT_FALSE(p.is_disclosed(4));
  EXPECT_FALSE(p.is_disclosed(70000));
}

TEST(Policy, EncodeDecodeRoundTrip) {
  const auto p = sample();
  const auto enc = p.encode();
  // u16 id length || id || u16 l || u16 d || d x (u16 index || 32-byte value)
  EXPECT_EQ(enc.size(), 2 + 1 + 2 + 2 + 2 * 34u);
  EXPECT_EQ(Policy::decode(enc), p);
  EXPECT_EQ(Policy::decode(Policy("", 1).encode()), Policy("", 1));
}

TEST(Policy, DecodeRejectsNonCanonicalForms) {
  auto enc = sample().encode();
  auto swapped = enc;
  // second index (offset 7 + 34) set below the first
  swapped[7 + 34] = 0;
  swapped[7 + 35] = 0;
  try {
    (void)Policy::decode(swapped);
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.kind(), DecodeErrorKind::NonCanonical);
    EXPECT_EQ(e.offset(), 41u);
  }
  auto out_of_range = enc;
  out_of_range[8] = 9;
  EXPECT_THROW((void)Policy::decode(out_of_range), DecodeError);
  auto zero_l = enc;
  zero_l[3] = 0;
  zero_l[4] = 0;
  EXPECT_THROW((void)Policy::decode(zero_l), DecodeError);
  auto trailing = enc;
  trailing.push_back(0);
  EXPECT_THROW((void)Policy::decode(trailing), DecodeError);
  EXPECT_THROW((void)Policy::decode(ByteView(enc).first(enc.size() - 1)), DecodeError);
}

TEST(Policy, ConstructionGuards) {
  EXPECT_THROW(Policy("x", 0), std::invalid_argument);
  Policy p("x", 2);
  EXPECT_THROW(p.require(2, "a"), std::invalid_argument);
}

TEST(Attributes, LabelHashingIsStable) {
  EXPECT_EQ(attribute_scalar("a"), attribute_scalar("a"));
  EXPECT_FALSE(attribute_scalar("a") == attribute_scalar("b"));
  const auto v = AttributeVector::from_labels({"a", "b"});
  EXPECT_EQ(v.values[1], attribute_scalar("b"));
  EXPECT_EQ(v.labels.size(), 2u);
}

TEST(Attributes, PedersenMessageMatchesProductOfPowers) {
  SeededRng rng(41);
  const auto pp = PublicParams::derive(4);
  const auto pk = G1::generator().pow(Scalar::random(rng));
  const auto attrs = AttributeVector::from_labels({"a", "b", "c", "d"});
  G1 expect = pk;
  for (std::size_t i = 0; i < 4; ++i) expect = expect * pp.h[i].pow(attrs.values[i]);
  EXPECT_EQ(pedersen_message(pk, attrs, pp), expect);
  EXPECT_THROW((void)pedersen_message(pk, AttributeVector::from_labels({"a"}), pp),
               std::invalid_argument);
}

}  // namespace
}  // namespace aqkd
