// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aqkd {

enum class DecodeErrorKind { BadLength, NotOnCurve, NotInSubgroup, NonCanonical };

std::string_view to_string(DecodeErrorKind kind);

// Raised by every decoder. `offset` is the byte position (within the
// outermost buffer being decoded) where the offending field starts.
class DecodeError : public std::runtime_error {
 public:
  DecodeError(DecodeErrorKind kind, std::size_t offset, const std::string& what);

  DecodeErrorKind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

  // Re-anchors the error inside an enclosing buffer.
  DecodeError shifted(std::size_t base) const;

 private:
  DecodeErrorKind kind_;
  std::size_t offset_;
  std::string detail_;
};

}  // namespace aqkd
