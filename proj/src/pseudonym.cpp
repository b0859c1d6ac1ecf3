// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include "aqkd/pseudonym.hpp"

#include <algorithm>
#include <stdexcept>

namespace aqkd {

G1 scope_base(ByteView scope) { return hash_to_g1(kNymTag, scope); }

Bytes session_scope(ByteView sid) {
  Bytes out(kSessionScopePrefix.size() + sid.size());
  std::copy(kSessionScopePrefix.begin(), kSessionScopePrefix.end(), out.begin());
  std::copy(sid.begin(), sid.end(), out.begin() + kSessionScopePrefix.size());
  return out;
}

Pseudonym nym_gen(const Scalar& sk, ByteView scope) {
  if (sk.is_zero()) throw std::invalid_argument("pseudonym secret must be non-zero");
  return {scope_base(scope).pow(sk), Bytes(scope.begin(), scope.end())};
}

NodeKeyPair NodeKeyPair::generate(Rng& rng) { return from_secret(Scalar::random_nonzero(rng)); }

NodeKeyPair NodeKeyPair::from_secret(const Scalar& sk) {
  return {sk, nym_gen(sk, as_bytes(kSetupScope)).nym};
}

}  // namespace aqkd
