#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bhsp/error.hpp"
#include "bhsp/field.hpp"
#include "oracles.hpp"

using namespace bhsp;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no bhsp::Error thrown");
  return ErrorKind::ParseError;
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kSmallFields = {
    {2, 1}, {3, 1}, {5, 1}, {7, 1}, {13, 1}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {7, 2}};

}  // namespace

TEST_CASE("modulus is the smallest monic irreducible") {
  for (auto [p, n] : kSmallFields) {
    CAPTURE(p);
    CAPTURE(n);
    const Field f = Field::make(p, n);
    const oracle::NaiveField nf(p, n);
    CHECK(f.modulus() == nf.modulus);
  }
  CHECK(Field::make(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(Field::make(7, 1).modulus() == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("generator is the smallest primitive element") {
  for (auto [p, n] : kSmallFields) {
    const Field f = Field::make(p, n);
    const oracle::NaiveField nf(p, n);
    CHECK(f.generator().index() == nf.smallest_primitive());
  }
  CHECK(Field::make(5, 1).generator().index() == 2);
  const Field f9 = Field::make(3, 2);
  CHECK(f9.generator().index() == 4);
  CHECK(f9.generator().coeffs() == std::vector<std::uint32_t>{1, 1});
}

TEST_CASE("multiplication and addition agree with polynomial arithmetic") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {2, 3}, {5, 2}, {7, 1}}) {
    const Field f = Field::make(p, n);
    const oracle::NaiveField nf(p, n);
    for (std::uint32_t x = 0; x < f.q(); ++x) {
      for (std::uint32_t y = 0; y < f.q(); ++y) {
        CHECK((f.element(x) * f.element(y)).index() == nf.mul(x, y));
        CHECK((f.element(x) + f.element(y)).index() == nf.add(x, y));
        CHECK((f.element(x) - f.element(y)).index() == nf.sub(x, y));
      }
    }
  }
}

TEST_CASE("inverse, power and logarithm") {
  const Field f = Field::make(5, 2);
  const FieldElement g = f.generator();
  for (std::uint32_t x = 1; x < f.q(); ++x) {
    const FieldElement e = f.element(x);
    CHECK((e * e.inverse()).is_one());
    CHECK(g.pow(e.log()) == e);
    CHECK(e.pow(f.q() - 1).is_one());
    CHECK(e.pow(-1) == e.inverse());
  }
  CHECK(kind_of([&] { f.zero().inverse(); }) == ErrorKind::DivisionByZero);
  CHECK(kind_of([&] { (void)(f.one() / f.zero()); }) == ErrorKind::DivisionByZero);
}

TEST_CASE("units in generator-power order") {
  const Field f = Field::make(3, 2);
  const auto units = f.units_by_log();
  REQUIRE(units.size() == 8);
  for (std::uint32_t i = 0; i < units.size(); ++i) CHECK(units[i].log() == i);
}

TEST_CASE("field construction errors") {
  CHECK(kind_of([] { Field::make(9, 1); }) == ErrorKind::NotPrime);
  CHECK(kind_of([] { Field::make(1, 1); }) == ErrorKind::NotPrime);
  CHECK(kind_of([] { Field::make(3, 0); }) == ErrorKind::DegreeZero);
  CHECK(kind_of([] { Field::make(2, 21); }) == ErrorKind::FieldTooLarge);
  CHECK(kind_of([] { Field::parse("3^x"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { Field::parse(""); }) == ErrorKind::ParseError);
}

TEST_CASE("contexts are shared and mixing them is rejected") {
  CHECK(Field::make(3, 2) == Field::parse("3^2"));
  CHECK(Field::parse("7") == Field::make(7, 1));
  const Field a = Field::make(3, 2), b = Field::make(3, 1);
  CHECK(kind_of([&] { (void)(a.one() + b.one()); }) == ErrorKind::MixedContexts);
  CHECK(kind_of([&] { (void)(a.one() * b.one()); }) == ErrorKind::MixedContexts);
  CHECK(kind_of([&] { a.element(9); }) == ErrorKind::InvalidElement);
}

TEST_CASE("field strings and element formatting") {
  const Field f = Field::make(3, 2);
  CHECK(f.spec_string() == "3^2");
  CHECK(f.modulus_string() == "x^2 + 1");
  CHECK(f.element(5).to_string() == "[2,1]");
  CHECK(Field::make(7, 1).element(3).to_string() == "3");
  CHECK(f.from_coeffs(std::vector<std::uint32_t>{2, 1}).index() == 5);
  CHECK(Field::make(7, 1).from_int(-1).index() == 6);
}

TEST_CASE("trace agrees with the Frobenius sum") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {3, 3}, {2, 4}, {5, 2}, {7, 1}}) {
    const Field f = Field::make(p, n);
    const oracle::NaiveField nf(p, n);
    for (const auto& e : f.elements()) {
      CHECK(trace(e) == nf.trace(e.index()));
      CHECK(trace_by_frobenius(e).index() == trace(e));
    }
    // Additivity and F_p-linearity.
    for (const auto& x : f.elements()) {
      for (const auto& y : f.elements()) CHECK(trace(x + y) == (trace(x) + trace(y)) % p);
    }
  }
}

TEST_CASE("trace pairing is nondegenerate") {
  const Field f = Field::make(3, 2);
  for (const auto& b : f.elements()) {
    if (b.is_zero()) continue;
    bool hit = false;
    for (const auto& j : f.elements()) hit = hit || dot(b, j) != 0;
    CHECK(hit);
  }
}

TEST_CASE("quadratic character") {
  const Field f7 = Field::make(7, 1);
  std::vector<std::uint32_t> squares;
  for (const auto& e : f7.elements())
    if (quadratic_char(e) == 1) squares.push_back(e.index());
  CHECK(squares == std::vector<std::uint32_t>{1, 2, 4});
  CHECK(quadratic_char(f7.zero()) == 0);

  const Field f9 = Field::make(3, 2);
  const oracle::NaiveField nf(3, 2);
  for (const auto& e : f9.elements()) {
    CHECK(quadratic_char(e) == nf.eta(e.index()));
    CHECK(e.is_square() == (nf.eta(e.index()) >= 0));
  }
}

TEST_CASE("additive characters are orthogonal") {
  const Field f = Field::make(3, 2);
  for (const auto& k : f.elements()) {
    for (const auto& l : f.elements()) {
      std::complex<double> acc = 0.0;
      for (const auto& j : f.elements()) {
        acc += additive_char(Frequency::of(k), j) * std::conj(additive_char(Frequency::of(l), j));
      }
      CHECK(std::abs(acc - (k == l ? 9.0 : 0.0)) < 1e-9);
    }
  }
}

TEST_CASE("frequency coordinates round-trip") {
  const Field f = Field::make(5, 2);
  for (std::uint32_t i = 0; i < f.q(); ++i) {
    const Frequency l(f, i);
    CHECK(Frequency::from_coords(f, l.coords()) == l);
    CHECK(l.as_element().coeffs() == l.coords());
  }
}

TEST_CASE("Gauss sums of the quadratic character") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {3, 3}, {5, 2}}) {
    const Field f = Field::make(p, n);
    const auto g = gauss_sum(MultChar::Quadratic, Frequency(f, 1));
    const oracle::NaiveField nf(p, n);
    CAPTURE(f.q());
    CHECK(std::abs(g.value - oracle::gauss_sum_eta(nf)) < 1e-9);
    CHECK(std::abs(g.modulus_sq - f.q()) < 1e-9);
    REQUIRE(g.d.has_value());
    const bool odd = f.q() % 4 == 3 && n % 2 == 1;
    CHECK(*g.d_odd == odd);
  }
  const Field f5 = Field::make(5, 1);
  CHECK(std::abs(gauss_sum(MultChar::Trivial, Frequency(f5, 1)).value + 1.0) < 1e-12);
  CHECK(std::abs(gauss_sum(MultChar::Quadratic, Frequency(f5, 0)).value) < 1e-12);
}

TEST_CASE("primality helpers") {
  CHECK(is_prime(2));
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(prime_factors(360) == std::vector<std::uint64_t>{2, 3, 5});
}
