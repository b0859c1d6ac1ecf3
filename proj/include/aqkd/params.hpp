// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "aqkd/group.hpp"

namespace aqkd {

// Public parameters for attribute vectors of length `attr_count`.
// Y and the attribute bases are hashed from fixed labels, so anyone can
// re-derive them: Y from "AQKD/v1/Y", H_i from "AQKD/v1/H/<i>" (0-based).
struct PublicParams {
  std::size_t attr_count = 0;
  G1 g;
  G2 g_hat;
  G1 y;
  std::vector<G1> h;
  G1 h_setup;  // base of the setup-scope pseudonym, i.e. of node public keys

  // Cached pairings, computed once at derivation.
  Gt e_y_ghat;      // e(Y, G^)
  Gt e_setup_ghat;  // e(H(setup), G^)

  // Throws std::invalid_argument if attr_count is zero or above 65535.
  static PublicParams derive(std::size_t attr_count);
};

}  // namespace aqkd
