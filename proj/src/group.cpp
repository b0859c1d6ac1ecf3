// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include "aqkd/group.hpp"

#include <blst.h>
#include <blst_aux.h>

#include <cstring>
#include <stdexcept>
#include <vector>

namespace aqkd {

static_assert(sizeof(blst_fr) == 32);
static_assert(sizeof(blst_p1) == 18 * 8);
static_assert(sizeof(blst_p2) == 36 * 8);
static_assert(sizeof(blst_fp12) == 72 * 8);

struct GroupAccess {
  static blst_fr* fr(Scalar& s) { return reinterpret_cast<blst_fr*>(s.limbs_.data()); }
  static const blst_fr* fr(const Scalar& s) {
    return reinterpret_cast<const blst_fr*>(s.limbs_.data());
  }
  static blst_p1* p1(G1& g) { return reinterpret_cast<blst_p1*>(g.raw_.data()); }
  static const blst_p1* p1(const G1& g) { return reinterpret_cast<const blst_p1*>(g.raw_.data()); }
  static blst_p2* p2(G2& g) { return reinterpret_cast<blst_p2*>(g.raw_.data()); }
  static const blst_p2* p2(const G2& g) { return reinterpret_cast<const blst_p2*>(g.raw_.data()); }
  static blst_fp12* fp12(Gt& g) { return reinterpret_cast<blst_fp12*>(g.raw_.data()); }
  static const blst_fp12* fp12(const Gt& g) {
    return reinterpret_cast<const blst_fp12*>(g.raw_.data());
  }
};

namespace {

using A = GroupAccess;

blst_scalar to_blst_scalar(const Scalar& s) {
  blst_scalar out;
  blst_scalar_from_fr(&out, A::fr(s));
  return out;
}

ByteView dst_view(std::string_view tag) {
  if (tag.empty()) throw std::invalid_argument("domain separation tag must be non-empty");
  return as_bytes(tag);
}

DecodeErrorKind map_error(BLST_ERROR err) {
  switch (err) {
    case BLST_POINT_NOT_ON_CURVE: return DecodeErrorKind::NotOnCurve;
    case BLST_POINT_NOT_IN_GROUP: return DecodeErrorKind::NotInSubgroup;
    default: return DecodeErrorKind::NonCanonical;
  }
}

void require_length(ByteView bytes, std::size_t n, const char* what) {
  if (bytes.size() != n) {
    throw DecodeError(DecodeErrorKind::BadLength, 0,
                      std::string(what) + " expects " + std::to_string(n) + " bytes, got " +
                          std::to_string(bytes.size()));
  }
}

}  // namespace

std::array<std::uint8_t, 32> sha256(ByteView data) {
  std::array<std::uint8_t, 32> out{};
  blst_sha256(out.data(), data.data(), data.size());
  return out;
}

// ---- Scalar ---------------------------------------------------------------

Scalar::Scalar() = default;

Scalar Scalar::one() { return from_u64(1); }

Scalar Scalar::from_u64(std::uint64_t v) {
  Scalar s;
  const std::uint64_t limbs[4] = {v, 0, 0, 0};
  blst_fr_from_uint64(A::fr(s), limbs);
  return s;
}

Scalar Scalar::from_bytes(ByteView bytes) {
  require_length(bytes, kScalarBytes, "scalar");
  blst_scalar raw;
  blst_scalar_from_bendian(&raw, bytes.data());
  if (!blst_scalar_fr_check(&raw)) {
    throw DecodeError(DecodeErrorKind::NonCanonical, 0, "scalar not below group order");
  }
  Scalar s;
  blst_fr_from_scalar(A::fr(s), &raw);
  return s;
}

Scalar Scalar::from_bytes_reduced(ByteView bytes) {
  blst_scalar raw;
  blst_scalar_from_be_bytes(&raw, bytes.data(), bytes.size());
  Scalar s;
  blst_fr_from_scalar(A::fr(s), &raw);
  return s;
}

Scalar Scalar::random(Rng& rng) {
  std::array<std::uint8_t, 64> wide{};
  rng.fill(wide);
  return from_bytes_reduced(wide);
}

Scalar Scalar::random_nonzero(Rng& rng) {
  for (;;) {
    auto s = random(rng);
    if (!s.is_zero()) return s;
  }
}

Scalar Scalar::random_blinding(Rng& rng) {
  const auto unit = one();
  for (;;) {
    auto s = random_nonzero(rng);
    if (!(s == unit)) return s;
  }
}

std::array<std::uint8_t, kScalarBytes> Scalar::to_bytes() const {
  std::array<std::uint8_t, kScalarBytes> out{};
  auto raw = to_blst_scalar(*this);
  blst_bendian_from_scalar(out.data(), &raw);
  return out;
}

bool Scalar::is_zero() const {
  for (auto l : limbs_) {
    if (l != 0) return false;
  }
  return true;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero scalar");
  Scalar out;
  blst_fr_inverse(A::fr(out), A::fr(*this));
  return out;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar out;
  blst_fr_add(A::fr(out), A::fr(*this), A::fr(o));
  return out;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar out;
  blst_fr_sub(A::fr(out), A::fr(*this), A::fr(o));
  return out;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar out;
  blst_fr_mul(A::fr(out), A::fr(*this), A::fr(o));
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out;
  blst_fr_cneg(A::fr(out), A::fr(*this), true);
  return out;
}

bool Scalar::operator==(const Scalar& o) const { return limbs_ == o.limbs_; }

std::array<std::uint8_t, kScalarBytes> Scalar::modulus_bytes() {
  return {0x73, 0xed, 0xa7, 0x53, 0x29, 0x9d, 0x7d, 0x48, 0x33, 0x39, 0xd8,
          0x08, 0x09, 0xa1, 0xd8, 0x05, 0x53, 0xbd, 0xa4, 0x02, 0xff, 0xfe,
          0x5b, 0xfe, 0xff, 0xff, 0xff, 0xff, 0x00, 0x00, 0x00, 0x01};
}

// ---- G1 -------------------------------------------------------------------

G1::G1() = default;  // all-zero Jacobian coordinates encode infinity in blst

G1 G1::generator() {
  G1 g;
  *A::p1(g) = *blst_p1_generator();
  return g;
}

G1 G1::from_bytes(ByteView bytes) {
  require_length(bytes, kG1Bytes, "G1 element");
  blst_p1_affine aff;
  auto err = blst_p1_uncompress(&aff, bytes.data());
  if (err != BLST_SUCCESS) throw DecodeError(map_error(err), 0, "G1 element");
  if (!blst_p1_affine_in_g1(&aff)) {
    throw DecodeError(DecodeErrorKind::NotInSubgroup, 0, "G1 element outside prime-order subgroup");
  }
  G1 g;
  blst_p1_from_affine(A::p1(g), &aff);
  return g;
}

G1 G1::multi_pow(std::span<const G1> bases, std::span<const Scalar> exps) {
  if (bases.size() != exps.size()) throw std::invalid_argument("multi_pow: size mismatch");
  detail::count_g1_exp(bases.size());
  G1 acc;
  if (bases.size() < 4) {
    for (std::size_t i = 0; i < bases.size(); ++i) {
      blst_p1 t;
      auto k = to_blst_scalar(exps[i]);
      blst_p1_mult(&t, A::p1(bases[i]), k.b, 255);
      blst_p1_add_or_double(A::p1(acc), A::p1(acc), &t);
    }
    return acc;
  }
  std::vector<blst_p1_affine> points;
  std::vector<blst_scalar> scalars;
  points.reserve(bases.size());
  scalars.reserve(bases.size());
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (bases[i].is_identity() || exps[i].is_zero()) continue;
    blst_p1_affine aff;
    blst_p1_to_affine(&aff, A::p1(bases[i]));
    points.push_back(aff);
    scalars.push_back(to_blst_scalar(exps[i]));
  }
  if (points.empty()) return acc;
  std::vector<const blst_p1_affine*> point_ptrs;
  std::vector<const std::uint8_t*> scalar_ptrs;
  for (std::size_t i = 0; i < points.size(); ++i) {
    point_ptrs.push_back(&points[i]);
    scalar_ptrs.push_back(scalars[i].b);
  }
  std::vector<limb_t> scratch(blst_p1s_mult_pippenger_scratch_sizeof(points.size()) /
                                  sizeof(limb_t) + 1);
  blst_p1s_mult_pippenger(A::p1(acc), point_ptrs.data(), points.size(), scalar_ptrs.data(), 255,
                          scratch.data());
  return acc;
}

std::array<std::uint8_t, kG1Bytes> G1::to_bytes() const {
  std::array<std::uint8_t, kG1Bytes> out{};
  blst_p1_compress(out.data(), A::p1(*this));
  return out;
}

bool G1::is_identity() const { return blst_p1_is_inf(A::p1(*this)); }

bool G1::in_subgroup() const { return blst_p1_in_g1(A::p1(*this)); }

G1 G1::pow(const Scalar& e) const {
  detail::count_g1_exp();
  G1 out;
  auto k = to_blst_scalar(e);
  blst_p1_mult(A::p1(out), A::p1(*this), k.b, 255);
  return out;
}

G1 G1::inverse() const {
  G1 out = *this;
  blst_p1_cneg(A::p1(out), true);
  return out;
}

G1 G1::operator*(const G1& o) const {
  G1 out;
  blst_p1_add_or_double(A::p1(out), A::p1(*this), A::p1(o));
  return out;
}

bool G1::operator==(const G1& o) const { return blst_p1_is_equal(A::p1(*this), A::p1(o)); }

// ---- G2 -------------------------------------------------------------------

G2::G2() = default;

G2 G2::generator() {
  G2 g;
  *A::p2(g) = *blst_p2_generator();
  return g;
}

G2 G2::from_bytes(ByteView bytes) {
  require_length(bytes, kG2Bytes, "G2 element");
  blst_p2_affine aff;
  auto err = blst_p2_uncompress(&aff, bytes.data());
  if (err != BLST_SUCCESS) throw DecodeError(map_error(err), 0, "G2 element");
  if (!blst_p2_affine_in_g2(&aff)) {
    throw DecodeError(DecodeErrorKind::NotInSubgroup, 0, "G2 element outside prime-order subgroup");
  }
  G2 g;
  blst_p2_from_affine(A::p2(g), &aff);
  return g;
}

std::array<std::uint8_t, kG2Bytes> G2::to_bytes() const {
  std::array<std::uint8_t, kG2Bytes> out{};
  blst_p2_compress(out.data(), A::p2(*this));
  return out;
}

bool G2::is_identity() const { return blst_p2_is_inf(A::p2(*this)); }

G2 G2::pow(const Scalar& e) const {
  detail::count_g2_exp();
  G2 out;
  auto k = to_blst_scalar(e);
  blst_p2_mult(A::p2(out), A::p2(*this), k.b, 255);
  return out;
}

G2 G2::inverse() const {
  G2 out = *this;
  blst_p2_cneg(A::p2(out), true);
  return out;
}

G2 G2::operator*(const G2& o) const {
  G2 out;
  blst_p2_add_or_double(A::p2(out), A::p2(*this), A::p2(o));
  return out;
}

bool G2::operator==(const G2& o) const { return blst_p2_is_equal(A::p2(*this), A::p2(o)); }

// ---- GT -------------------------------------------------------------------

Gt::Gt() { *A::fp12(*this) = *blst_fp12_one(); }

Gt Gt::pow(const Scalar& e) const {
  detail::count_gt_exp();
  // Fixed 4-bit window; squarings stay in the cyclotomic subgroup.
  std::array<blst_fp12, 16> table;
  table[0] = *blst_fp12_one();
  table[1] = *A::fp12(*this);
  for (std::size_t i = 2; i < table.size(); ++i) blst_fp12_mul(&table[i], &table[i - 1], &table[1]);

  const auto be = e.to_bytes();
  blst_fp12 acc = *blst_fp12_one();
  bool started = false;
  for (auto byte : be) {
    for (int shift = 4; shift >= 0; shift -= 4) {
      const unsigned nib = (byte >> shift) & 0x0f;
      if (started) {
        for (int k = 0; k < 4; ++k) blst_fp12_cyclotomic_sqr(&acc, &acc);
      }
      if (nib != 0) {
        if (started) {
          blst_fp12_mul(&acc, &acc, &table[nib]);
        } else {
          acc = table[nib];
          started = true;
        }
      }
    }
  }
  Gt out;
  *A::fp12(out) = acc;
  return out;
}

Gt Gt::inverse() const {
  Gt out = *this;
  blst_fp12_conjugate(A::fp12(out));
  return out;
}

Gt Gt::operator*(const Gt& o) const {
  Gt out;
  blst_fp12_mul(A::fp12(out), A::fp12(*this), A::fp12(o));
  return out;
}

bool Gt::operator==(const Gt& o) const { return blst_fp12_is_equal(A::fp12(*this), A::fp12(o)); }

bool Gt::is_one() const { return blst_fp12_is_one(A::fp12(*this)); }

std::array<std::uint8_t, kGtTranscriptBytes> Gt::transcript_bytes() const {
  std::array<std::uint8_t, kGtTranscriptBytes> out{};
  blst_bendian_from_fp12(out.data(), A::fp12(*this));
  return out;
}

// ---- pairing and hashing ----------------------------------------------------

Gt pairing(const G1& a, const G2& b) {
  const std::pair<G1, G2> term{a, b};
  return multi_pairing(std::span(&term, 1));
}

Gt multi_pairing(std::span<const std::pair<G1, G2>> terms) {
  detail::count_pairings(terms.size());
  std::vector<blst_p1_affine> ps;
  std::vector<blst_p2_affine> qs;
  ps.reserve(terms.size());
  qs.reserve(terms.size());
  for (const auto& [a, b] : terms) {
    if (a.is_identity() || b.is_identity()) continue;
    blst_p1_affine pa;
    blst_p2_affine qa;
    blst_p1_to_affine(&pa, A::p1(a));
    blst_p2_to_affine(&qa, A::p2(b));
    ps.push_back(pa);
    qs.push_back(qa);
  }
  Gt out;
  if (ps.empty()) return out;
  std::vector<const blst_p1_affine*> pp;
  std::vector<const blst_p2_affine*> qp;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    pp.push_back(&ps[i]);
    qp.push_back(&qs[i]);
  }
  blst_fp12 f;
  blst_miller_loop_n(&f, qp.data(), pp.data(), ps.size());
  blst_final_exp(A::fp12(out), &f);
  return out;
}

G1 hash_to_g1(std::string_view domain_tag, ByteView input) {
  auto dst = dst_view(domain_tag);
  G1 out;
  blst_hash_to_g1(A::p1(out), input.data(), input.size(), dst.data(), dst.size(), nullptr, 0);
  return out;
}

Scalar hash_to_scalar(std::string_view domain_tag, ByteView transcript) {
  auto dst = dst_view(domain_tag);
  std::array<std::uint8_t, 48> wide{};
  blst_expand_message_xmd(wide.data(), wide.size(), transcript.data(), transcript.size(),
                          dst.data(), dst.size());
  return Scalar::from_bytes_reduced(wide);
}

}  // namespace aqkd

namespace aqkd {

namespace {
template <class T, std::size_t N>
T read_element(ByteReader& in) {
  const auto at = in.offset();
  auto raw = in.take(N);
  try {
    return T::from_bytes(raw);
  } catch (const DecodeError& e) {
    throw e.shifted(at);
  }
}
}  // namespace

Scalar read_scalar(ByteReader& in) { return read_element<Scalar, kScalarBytes>(in); }
G1 read_g1(ByteReader& in) { return read_element<G1, kG1Bytes>(in); }
G2 read_g2(ByteReader& in) { return read_element<G2, kG2Bytes>(in); }

}  // namespace aqkd
