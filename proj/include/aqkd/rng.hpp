// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace aqkd {

// Source of all protocol randomness. Implementations are not thread-safe;
// give each thread its own instance.
class Rng {
 public:
  virtual ~Rng() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  std::uint64_t next_u64();
  // Uniform in [0, bound). bound must be non-zero.
  std::uint64_t uniform(std::uint64_t bound);
};

// Deterministic SHA-256 counter-mode generator. Two instances built from the
// same seed produce identical streams.
class SeededRng final : public Rng {
 public:
  explicit SeededRng(std::uint64_t seed);
  SeededRng(std::uint64_t seed, std::uint64_t stream);

  void fill(std::span<std::uint8_t> out) override;

 private:
  void refill();

  std::array<std::uint8_t, 32> key_{};
  std::uint64_t counter_ = 0;
  std::array<std::uint8_t, 32> block_{};
  std::size_t used_ = 32;
};

// Operating-system entropy.
class SystemRng final : public Rng {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

}  // namespace aqkd
