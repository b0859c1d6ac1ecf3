// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include "aqkd/bytes.hpp"

#include <algorithm>
#include <stdexcept>

namespace aqkd {

std::string_view to_string(DecodeErrorKind kind) {
  switch (kind) {
    case DecodeErrorKind::BadLength: return "BadLength";
    case DecodeErrorKind::NotOnCurve: return "NotOnCurve";
    case DecodeErrorKind::NotInSubgroup: return "NotInSubgroup";
    case DecodeErrorKind::NonCanonical: return "NonCanonical";
  }
  return "Unknown";
}

DecodeError::DecodeError(DecodeErrorKind kind, std::size_t offset, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + " at offset " + std::to_string(offset) +
                         (what.empty() ? "" : ": " + what)),
      kind_(kind),
      offset_(offset),
      detail_(what) {}

DecodeError DecodeError::shifted(std::size_t base) const {
  return DecodeError(kind_, offset_ + base, detail_);
}

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

namespace {
int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("hex string has odd length");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = nibble(hex[2 * i]);
    int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex digit");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

void ByteWriter::u16(std::uint16_t v) {
  u8(static_cast<std::uint8_t>(v >> 8));
  u8(static_cast<std::uint8_t>(v));
}

void ByteWriter::u32(std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) u8(static_cast<std::uint8_t>(v >> s));
}

void ByteWriter::u64(std::uint64_t v) {
  for (int s = 56; s >= 0; s -= 8) u8(static_cast<std::uint8_t>(v >> s));
}

void ByteWriter::prefixed(ByteView v) {
  if (v.size() > 0xffff) throw std::length_error("length-prefixed field exceeds 65535 bytes");
  u16(static_cast<std::uint16_t>(v.size()));
  raw(v);
}

ByteView ByteReader::take(std::size_t n) {
  if (n > remaining()) {
    throw DecodeError(DecodeErrorKind::BadLength, offset(),
                      "need " + std::to_string(n) + " bytes, have " + std::to_string(remaining()));
  }
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::uint8_t ByteReader::u8() { return take(1)[0]; }

std::uint16_t ByteReader::u16() {
  auto v = take(2);
  return static_cast<std::uint16_t>((v[0] << 8) | v[1]);
}

std::uint32_t ByteReader::u32() {
  auto v = take(4);
  std::uint32_t out = 0;
  for (auto b : v) out = (out << 8) | b;
  return out;
}

std::uint64_t ByteReader::u64() {
  auto v = take(8);
  std::uint64_t out = 0;
  for (auto b : v) out = (out << 8) | b;
  return out;
}

Bytes ByteReader::prefixed() {
  auto n = u16();
  auto v = take(n);
  return Bytes(v.begin(), v.end());
}

void ByteReader::expect_end() const {
  if (remaining() != 0) {
    throw DecodeError(DecodeErrorKind::BadLength, offset(),
                      std::to_string(remaining()) + " trailing bytes");
  }
}

}  // namespace aqkd
