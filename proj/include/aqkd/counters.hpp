// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

namespace aqkd {

// Tally of full-length exponentiations and pairing evaluations. Group
// operations, Z_p arithmetic and hash evaluations are not counted.
struct OpCounters {
  std::uint64_t g1_exp = 0;
  std::uint64_t g2_exp = 0;
  std::uint64_t gt_exp = 0;
  std::uint64_t pairings = 0;

  OpCounters& operator+=(const OpCounters& o) {
    g1_exp += o.g1_exp;
    g2_exp += o.g2_exp;
    gt_exp += o.gt_exp;
    pairings += o.pairings;
    return *this;
  }
  friend OpCounters operator+(OpCounters a, const OpCounters& b) { return a += b; }
  friend bool operator==(const OpCounters&, const OpCounters&) = default;

  std::string to_string() const;
};

// Measurement scope. While alive, every counted operation executed on the
// constructing thread is added to this scope; on destruction the tally is
// merged into the enclosing scope of the same thread, if any. Scopes must be
// destroyed in reverse order of construction on the thread that created them.
// Work spread over several threads is measured with one scope per thread and
// merged explicitly with `absorb`.
class CounterScope {
 public:
  CounterScope();
  ~CounterScope();
  CounterScope(const CounterScope&) = delete;
  CounterScope& operator=(const CounterScope&) = delete;

  const OpCounters& counts() const { return counts_; }
  void absorb(const OpCounters& other) { counts_ += other; }

 private:
  OpCounters counts_;
  CounterScope* parent_;
};

namespace detail {
void count_g1_exp(std::uint64_t n = 1);
void count_g2_exp(std::uint64_t n = 1);
void count_gt_exp(std::uint64_t n = 1);
void count_pairings(std::uint64_t n = 1);
}  // namespace detail

}  // namespace aqkd
