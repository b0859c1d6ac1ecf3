// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aqkd/errors.hpp"

namespace aqkd {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

std::string to_hex(ByteView bytes);
// Throws std::invalid_argument on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

// Big-endian append-only writer.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u16(std::uint16_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void raw(ByteView v) { buf_.insert(buf_.end(), v.begin(), v.end()); }
  void raw(std::string_view v) { raw(as_bytes(v)); }
  // u16 length prefix followed by the bytes.
  void prefixed(ByteView v);

  std::size_t size() const { return buf_.size(); }
  const Bytes& bytes() const& { return buf_; }
  Bytes take() && { return std::move(buf_); }

 private:
  Bytes buf_;
};

// Bounds-checked big-endian reader. Running past the end raises
// DecodeError{BadLength} carrying the offset of the short field.
class ByteReader {
 public:
  explicit ByteReader(ByteView data, std::size_t base_offset = 0)
      : data_(data), base_(base_offset) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  ByteView take(std::size_t n);
  Bytes prefixed();

  template <std::size_t N>
  std::array<std::uint8_t, N> fixed() {
    auto v = take(N);
    std::array<std::uint8_t, N> out{};
    std::copy(v.begin(), v.end(), out.begin());
    return out;
  }

  // Absolute offset of the next unread byte.
  std::size_t offset() const { return base_ + pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }
  void expect_end() const;

 private:
  ByteView data_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

}  // namespace aqkd
