// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

// Scope-exclusive pseudonyms nym = H(scope)^sk. A node's public key is its
// pseudonym under the setup scope.

#pragma once

#include <string_view>

#include "aqkd/bytes.hpp"
#include "aqkd/group.hpp"

namespace aqkd {

inline constexpr std::string_view kSetupScope = "AQKD/v1/setup";
inline constexpr std::string_view kSessionScopePrefix = "AQKD/v1/sid/";
inline constexpr std::string_view kNymTag = "AQKD/v1/nym";

// H(scope), hashed over the full scope string.
G1 scope_base(ByteView scope);

// "AQKD/v1/sid/" || sid.
Bytes session_scope(ByteView sid);

struct Pseudonym {
  G1 nym;
  Bytes scope;
};

// Throws std::invalid_argument when sk is zero.
Pseudonym nym_gen(const Scalar& sk, ByteView scope);

struct NodeKeyPair {
  Scalar sk;
  G1 pk;

  static NodeKeyPair generate(Rng& rng);
  static NodeKeyPair from_secret(const Scalar& sk);
};

}  // namespace aqkd
