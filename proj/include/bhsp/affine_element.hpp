#pragma once

#include <compare>
#include <vector>

#include "bhsp/field.hpp"

namespace bhsp {

// The affine map x -> a x + b on F_q, a != 0. Composition follows function
// composition: (a,b) o (c,d) = (ac, b + a d), which is the product of the
// upper-triangular matrices (a b / 0 1)(c d / 0 1).
struct AffineElement {
  FieldElement a;
  FieldElement b;

  static AffineElement identity(const Field& f) { return {f.one(), f.zero()}; }
  static AffineElement translation(const FieldElement& b) { return {b.field().one(), b}; }

  FieldElement apply(const FieldElement& x) const { return a * x + b; }
  AffineElement compose(const AffineElement& o) const { return {a * o.a, b + a * o.b}; }
  AffineElement inverse() const {
    FieldElement ai = a.inverse();
    return {ai, -(ai * b)};
  }

  friend bool operator==(const AffineElement&, const AffineElement&) = default;
  friend std::strong_ordering operator<=>(const AffineElement& x, const AffineElement& y) {
    if (auto c = x.a <=> y.a; c != 0) return c;
    return x.b <=> y.b;
  }
};

// All of AGL(1;q), or only the elements whose multiplier is a nonzero square.
// Ordered by (a, b) index.
std::vector<AffineElement> enumerate_affine(const Field& f, bool squares_only = false);

}  // namespace bhsp
