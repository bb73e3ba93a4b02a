#pragma once

// Exact arithmetic in F_{p^n}.
//
// Elements are stored as their coefficient vector over Z_p packed into a
// single integer index = c_0 + c_1 p + ... + c_{n-1} p^{n-1}. The index order
// coincides with lexicographic order on coefficients compared from the
// highest degree down, which is the order used throughout for determinism.

#include <complex>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bhsp {

namespace detail {
struct FieldData;
}

class FieldElement;

// Handle to an immutable field context. Contexts are interned: two calls with
// the same (p, n) return handles to the same object, so equality is identity.
class Field {
 public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;

  // Builds (or fetches) F_{p^n} with the lexicographically smallest monic
  // irreducible modulus and the smallest primitive element as generator.
  static Field make(std::uint32_t p, std::uint32_t n);

  // Parses "p^n" or a bare prime "p".
  static Field parse(const std::string& spec);

  std::uint32_t p() const;
  std::uint32_t n() const;
  std::uint32_t q() const;

  // Coefficients c_0..c_n of the monic modulus, low degree first.
  const std::vector<std::uint32_t>& modulus() const;
  std::string modulus_string() const;
  std::string spec_string() const;

  FieldElement generator() const;
  FieldElement zero() const;
  FieldElement one() const;
  FieldElement element(std::uint32_t index) const;
  FieldElement from_coeffs(std::span<const std::uint32_t> coeffs) const;
  // Image of an integer in the prime subfield.
  FieldElement from_int(std::int64_t value) const;

  // All q elements in index order.
  std::vector<FieldElement> elements() const;
  // The nonzero elements in generator-power order g^0, g^1, ..., g^{q-2}.
  std::vector<FieldElement> units_by_log() const;

  friend bool operator==(const Field& a, const Field& b) { return a.data_ == b.data_; }

  const detail::FieldData& data() const { return *data_; }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::FieldData> data_;
};

class FieldElement {
 public:
  FieldElement(Field field, std::uint32_t index);

  const Field& field() const { return field_; }
  std::uint32_t index() const { return index_; }
  std::vector<std::uint32_t> coeffs() const;
  bool is_zero() const { return index_ == 0; }
  bool is_one() const { return index_ == 1; }

  FieldElement inverse() const;
  FieldElement pow(std::int64_t exponent) const;
  // Discrete logarithm base the field generator, in [0, q-1).
  std::uint32_t log() const;
  bool is_square() const;

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.index_ == b.index_;
  }
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
    return a.index_ <=> b.index_;
  }

  std::string to_string() const;

 private:
  Field field_;
  std::uint32_t index_;
};

// A frequency l in Z_p^n, in the same coordinates as field coefficients.
class Frequency {
 public:
  Frequency(Field field, std::uint32_t index);
  static Frequency from_coords(const Field& field, std::span<const std::uint32_t> coords);
  static Frequency of(const FieldElement& e) { return Frequency(e.field(), e.index()); }

  const Field& field() const { return field_; }
  std::uint32_t index() const { return index_; }
  std::vector<std::uint32_t> coords() const;
  FieldElement as_element() const { return FieldElement(field_, index_); }

  friend bool operator==(const Frequency& a, const Frequency& b) {
    return a.field_ == b.field_ && a.index_ == b.index_;
  }

 private:
  Field field_;
  std::uint32_t index_;
};

// Tr_{F_q/F_p}(a) = sum_{m=0}^{n-1} a^{p^m}, returned as a Z_p scalar.
std::uint32_t trace(const FieldElement& a);
// Literal Frobenius-orbit sum, without the basis-trace shortcut used by trace().
FieldElement trace_by_frobenius(const FieldElement& a);
// Trace pairing b . j = Tr(b j).
std::uint32_t dot(const FieldElement& b, const FieldElement& j);

// exp(2 pi i x / p) for x in Z_p.
std::complex<double> root_of_unity(std::uint32_t p, std::int64_t x);
// chi_k(j) = omega_p^{k . j}.
std::complex<double> additive_char(const Frequency& k, const FieldElement& j);
// eta(a): +1 on nonzero squares, -1 on non-squares, 0 at 0.
int quadratic_char(const FieldElement& a);

enum class MultChar { Trivial, Quadratic };

struct GaussSumValue {
  std::complex<double> value;
  double modulus_sq = 0.0;
  // Exponent d with value = i^d sqrt(q), when the value has that shape.
  std::optional<int> d;
  std::optional<bool> d_odd;
};

// G(m, chi_k) = sum over x in F_q^* of m(x) chi_k(x), by direct summation.
GaussSumValue gauss_sum(MultChar m, const Frequency& k);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace bhsp
