// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include "aqkd/counters.hpp"

namespace aqkd {

namespace {
thread_local CounterScope* g_active = nullptr;
}

std::string OpCounters::to_string() const {
  return "G1-exp=" + std::to_string(g1_exp) + " G2-exp=" + std::to_string(g2_exp) +
         " GT-exp=" + std::to_string(gt_exp) + " pairings=" + std::to_string(pairings);
}

CounterScope::CounterScope() : parent_(g_active) { g_active = this; }

CounterScope::~CounterScope() {
  g_active = parent_;
  if (parent_ != nullptr) parent_->counts_ += counts_;
}

namespace detail {
void count_g1_exp(std::uint64_t n) {
  if (g_active) g_active->absorb({n, 0, 0, 0});
}
void count_g2_exp(std::uint64_t n) {
  if (g_active) g_active->absorb({0, n, 0, 0});
}
void count_gt_exp(std::uint64_t n) {
  if (g_active) g_active->absorb({0, 0, n, 0});
}
void count_pairings(std::uint64_t n) {
  if (g_active) g_active->absorb({0, 0, 0, n});
}
}  // namespace detail

}  // namespace aqkd
