// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include "aqkd/params.hpp"

#include <stdexcept>
#include <string>

#include "aqkd/pseudonym.hpp"

namespace aqkd {

PublicParams PublicParams::derive(std::size_t attr_count) {
  if (attr_count == 0 || attr_count > 0xffff) {
    throw std::invalid_argument("attribute count must be in [1, 65535]");
  }
  constexpr std::string_view kParamTag = "AQKD/v1/params";
  PublicParams pp;
  pp.attr_count = attr_count;
  pp.g = G1::generator();
  pp.g_hat = G2::generator();
  pp.y = hash_to_g1(kParamTag, as_bytes("AQKD/v1/Y"));
  pp.h.reserve(attr_count);
  for (std::size_t i = 0; i < attr_count; ++i) {
    const auto label = "AQKD/v1/H/" + std::to_string(i);
    pp.h.push_back(hash_to_g1(kParamTag, as_bytes(label)));
  }
  pp.h_setup = scope_base(as_bytes(kSetupScope));
  pp.e_y_ghat = pairing(pp.y, pp.g_hat);
  pp.e_setup_ghat = pairing(pp.h_setup, pp.g_hat);
  return pp;
}

}  // namespace aqkd
