// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

// Attribute vectors and disclosure policies. A policy pins the value of a
// set D of attribute indices (0-based); a presentation discloses exactly
// those and hides the rest.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "aqkd/params.hpp"

namespace aqkd {

// hash_to_scalar under "AQKD/v1/attr".
Scalar attribute_scalar(std::string_view label);

struct AttributeVector {
  std::vector<Scalar> values;
  std::vector<std::string> labels;  // optional; empty or one per value

  static AttributeVector from_labels(std::vector<std::string> labels);
  static AttributeVector from_values(std::vector<Scalar> values);
  std::size_t size() const { return values.size(); }
};

class Policy {
 public:
  Policy() = default;
  // Throws std::invalid_argument if attr_count is zero or too large, or the
  // id is longer than 65535 bytes.
  Policy(std::string id, std::size_t attr_count);

  // Requires attribute `index` to equal `value`; index must be < attr_count.
  Policy& require(std::size_t index, const Scalar& value);
  Policy& require(std::size_t index, std::string_view label) {
    return require(index, attribute_scalar(label));
  }

  const std::string& id() const { return id_; }
  std::size_t attr_count() const { return attr_count_; }
  const std::map<std::uint16_t, Scalar>& required() const { return required_; }
  std::size_t disclosed_count() const { return required_.size(); }
  std::size_t hidden_count() const { return attr_count_ - required_.size(); }
  bool is_disclosed(std::size_t index) const;
  std::vector<std::size_t> hidden_indices() const;

  bool evaluate(const AttributeVector& attrs) const;

  // u16-prefixed id || u16 l || u16 d || d x (u16 index || 32-byte value).
  Bytes encode() const;
  static Policy decode(ByteReader& in);
  static Policy decode(ByteView bytes);

  bool operator==(const Policy&) const = default;

 private:
  std::string id_;
  std::size_t attr_count_ = 0;
  std::map<std::uint16_t, Scalar> required_;
};

// pk * prod H_i^{a_i}. Throws std::invalid_argument on a length mismatch.
G1 pedersen_message(const G1& pk, const AttributeVector& attrs, const PublicParams& pp);

}  // namespace aqkd
