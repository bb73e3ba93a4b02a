#pragma once

// The affine groups AGL(d;2) acting on F_2^d, d <= 4.
//
// Vectors are bitmasks: bit i holds coordinate i (0-based), so the point
// (0,...,0,1)^T is bit d-1.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "bhsp/transitivity.hpp"

namespace bhsp::agl2 {

inline constexpr int kMaxDimension = 4;

// d x d matrix over F_2; bit j of rows[i] is entry (i, j).
struct BitMatrix {
  int d = 0;
  std::array<std::uint8_t, kMaxDimension> rows{};

  static BitMatrix identity(int d);
  std::uint8_t apply(std::uint8_t v) const;
  bool entry(int i, int j) const { return (rows[static_cast<std::size_t>(i)] >> j) & 1u; }
  void set(int i, int j, bool v);
  std::uint8_t column(int j) const;
  int rank() const;
  bool invertible() const { return rank() == d; }
  BitMatrix transpose() const;
  BitMatrix inverse() const;

  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;
  friend auto operator<=>(const BitMatrix&, const BitMatrix&) = default;
};

// v -> A v + B.
struct AffineMap2 {
  BitMatrix a;
  std::uint8_t b = 0;

  std::uint8_t apply(std::uint8_t v) const { return static_cast<std::uint8_t>(a.apply(v) ^ b); }
  AffineMap2 compose(const AffineMap2& o) const {
    return {a * o.a, static_cast<std::uint8_t>(a.apply(o.b) ^ b)};
  }
  static AffineMap2 translation(int d, std::uint8_t p) { return {BitMatrix::identity(d), p}; }

  friend bool operator==(const AffineMap2&, const AffineMap2&) = default;
  friend auto operator<=>(const AffineMap2&, const AffineMap2&) = default;
};

std::uint64_t gl2_order(int d);
std::uint64_t agl2_order(int d);

std::vector<BitMatrix> enumerate_gl2(int d);
// All (A, B), ordered by A then B.
std::vector<AffineMap2> enumerate_agl2(int d);

ActionDescriptor agl2_action(int d);

// k-transitivity of AGL(d;2) on F_2^d.
TransitivityReport check_transitive(int d, int k);
inline bool check_3transitive(int d) { return check_transitive(d, 3).is_k_transitive; }

// Stabilizer of (0,...,0,1)^T in GL(d;2) and its identification with
// AGL(d-1;2). Elements look like (M 0 / r 1): last column e_d, invertible
// leading block M, free last row r. The witness map sends A to the block
// form of (A^{-1})^T = (M^{-T}  M^{-T} r^T / 0 1), i.e. the affine map
// (M^{-T}, M^{-T} r^T); inverse-transpose keeps it a homomorphism.
struct StabilizerStructure {
  int d = 0;
  std::uint64_t gl_order = 0;
  std::uint64_t stabilizer_order = 0;
  std::uint64_t expected_order = 0;  // |AGL(d-1;2)|
  std::uint64_t orbit_size = 0;      // orbit of e_d under GL(d;2)
  bool block_form = false;
  bool bijective = false;
  bool homomorphism = false;
  std::string witness;

  bool ok() const {
    return stabilizer_order == expected_order && block_form && bijective && homomorphism &&
           gl_order == orbit_size * stabilizer_order;
  }
};

StabilizerStructure point1_stabilizer_structure(int d);

// Witness map from the e_d-stabilizer into AGL(d-1;2).
AffineMap2 stabilizer_to_affine(const BitMatrix& a);

// Elementwise check that (1,P) GL(d;2) (1,P)^{-1} equals the stabilizer of P
// in AGL(d;2).
bool translation_conjugates_stabilizer(int d, std::uint8_t p);

}  // namespace bhsp::agl2
