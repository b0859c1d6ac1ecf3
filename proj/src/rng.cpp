// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include "aqkd/rng.hpp"

#include <random>
#include <stdexcept>

#include "aqkd/bytes.hpp"
#include "aqkd/group.hpp"

namespace aqkd {

std::uint64_t Rng::next_u64() {
  std::array<std::uint8_t, 8> b{};
  fill(b);
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform: bound must be non-zero");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    auto v = next_u64();
    if (v < limit) return v % bound;
  }
}

SeededRng::SeededRng(std::uint64_t seed) : SeededRng(seed, 0) {}

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream) {
  ByteWriter w;
  w.raw("AQKD/v1/rng");
  w.u64(seed);
  w.u64(stream);
  key_ = sha256(w.bytes());
}

void SeededRng::refill() {
  ByteWriter w;
  w.raw(key_);
  w.u64(counter_++);
  block_ = sha256(w.bytes());
  used_ = 0;
}

void SeededRng::fill(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    if (used_ == block_.size()) refill();
    b = block_[used_++];
  }
}

void SystemRng::fill(std::span<std::uint8_t> out) {
  std::random_device rd;
  for (std::size_t i = 0; i < out.size(); i += 4) {
    auto v = rd();
    for (std::size_t j = 0; j < 4 && i + j < out.size(); ++j) {
      out[i + j] = static_cast<std::uint8_t>(v >> (8 * j));
    }
  }
}

}  // namespace aqkd
