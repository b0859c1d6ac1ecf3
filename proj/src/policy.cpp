// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include "aqkd/policy.hpp"

#include <stdexcept>

namespace aqkd {

Scalar attribute_scalar(std::string_view label) {
  return hash_to_scalar("AQKD/v1/attr", as_bytes(label));
}

AttributeVector AttributeVector::from_labels(std::vector<std::string> labels) {
  AttributeVector out;
  out.values.reserve(labels.size());
  for (const auto& l : labels) out.values.push_back(attribute_scalar(l));
  out.labels = std::move(labels);
  return out;
}

AttributeVector AttributeVector::from_values(std::vector<Scalar> values) {
  AttributeVector out;
  out.values = std::move(values);
  return out;
}

Policy::Policy(std::string id, std::size_t attr_count) : id_(std::move(id)), attr_count_(attr_count) {
  if (attr_count == 0 || attr_count > 0xffff) {
    throw std::invalid_argument("policy attribute count must be in [1, 65535]");
  }
  if (id_.size() > 0xffff) throw std::invalid_argument("policy id too long");
}

Policy& Policy::require(std::size_t index, const Scalar& value) {
  if (index >= attr_count_) {
    throw std::invalid_argument("policy index " + std::to_string(index) + " out of range");
  }
  required_[static_cast<std::uint16_t>(index)] = value;
  return *this;
}

bool Policy::is_disclosed(std::size_t index) const {
  return index <= 0xffff && required_.count(static_cast<std::uint16_t>(index)) != 0;
}

std::vector<std::size_t> Policy::hidden_indices() const {
  std::vector<std::size_t> out;
  out.reserve(hidden_count());
  for (std::size_t i = 0; i < attr_count_; ++i) {
    if (!is_disclosed(i)) out.push_back(i);
  }
  return out;
}

bool Policy::evaluate(const AttributeVector& attrs) const {
  if (attrs.size() != attr_count_) return false;
  for (const auto& [index, value] : required_) {
    if (!(attrs.values[index] == value)) return false;
  }
  return true;
}

Bytes Policy::encode() const {
  ByteWriter w;
  w.prefixed(as_bytes(id_));
  w.u16(static_cast<std::uint16_t>(attr_count_));
  w.u16(static_cast<std::uint16_t>(required_.size()));
  for (const auto& [index, value] : required_) {
    w.u16(index);
    w.raw(value.to_bytes());
  }
  return std::move(w).take();
}

Policy Policy::decode(ByteReader& in) {
  auto id = in.prefixed();
  const auto count_at = in.offset();
  const auto attr_count = in.u16();
  if (attr_count == 0) {
    throw DecodeError(DecodeErrorKind::NonCanonical, count_at, "policy attribute count is zero");
  }
  Policy p(std::string(id.begin(), id.end()), attr_count);
  const auto d_at = in.offset();
  const auto d = in.u16();
  if (d > attr_count) {
    throw DecodeError(DecodeErrorKind::NonCanonical, d_at, "disclosed count exceeds attribute count");
  }
  int previous = -1;
  for (std::size_t k = 0; k < d; ++k) {
    const auto at = in.offset();
    const auto index = in.u16();
    if (index >= attr_count || static_cast<int>(index) <= previous) {
      throw DecodeError(DecodeErrorKind::NonCanonical, at, "policy indices must ascend within range");
    }
    previous = index;
    p.required_[index] = read_scalar(in);
  }
  return p;
}

Policy Policy::decode(ByteView bytes) {
  ByteReader in(bytes);
  auto p = decode(in);
  in.expect_end();
  return p;
}

G1 pedersen_message(const G1& pk, const AttributeVector& attrs, const PublicParams& pp) {
  if (attrs.size() != pp.attr_count) {
    throw std::invalid_argument("attribute vector length differs from parameter length");
  }
  return pk * G1::multi_pow(pp.h, attrs.values);
}

}  // namespace aqkd
