#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "bhsp/affine_rep.hpp"
#include "bhsp/error.hpp"
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

}  // namespace

TEST_CASE("affine group composition") {
  const Field f = Field::make(7, 1);
  const auto g = enumerate_affine(f);
  CHECK(g.size() == 42);
  CHECK(enumerate_affine(f, true).size() == 21);
  for (const auto& x : g) {
    CHECK(x.compose(x.inverse()) == AffineElement::identity(f));
    for (const auto& v : f.elements()) CHECK(x.compose(g[5]).apply(v) == x.apply(g[5].apply(v)));
  }
}

TEST_CASE("rho entries match the naive formula") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{5, 1}, {7, 1}, {3, 2}}) {
    const Field f = Field::make(p, n);
    const oracle::NaiveField nf(p, n);
    const auto units = nf.units_by_power();
    const std::uint32_t d = f.q() - 1;
    for (const auto& x : enumerate_affine(f)) {
      const RepMatrix m = rho(x);
      for (std::uint32_t j = 0; j < d; ++j) {
        for (std::uint32_t k = 0; k < d; ++k) {
          const bool hit = units[k] == nf.mul(x.a.index(), units[j]);
          const oracle::cd expected = hit ? nf.omega(nf.trace(nf.mul(x.b.index(), units[j]))) : 0.0;
          CHECK(std::abs(m(j, k) - expected) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("rho is a unitary irreducible representation") {
  for (std::uint32_t q : {5u, 7u, 9u}) {
    const Field f = q == 9 ? Field::make(3, 2) : Field::make(q, 1);
    const auto r = rep_check(f);
    CAPTURE(q);
    CHECK(r.homomorphism_residual < 1e-9);
    CHECK(r.unitarity_residual < 1e-9);
    CHECK(r.identity_residual < 1e-12);
    CHECK(std::abs(r.character_norm - static_cast<double>(q * (q - 1))) < 1e-7);
    CHECK(r.projector_residual < 1e-9);
    CHECK(r.class_orthogonality_residual < 1e-9);
    CHECK(r.class_count == q);
  }
  CHECK(kind_of([] { rho(AffineElement::identity(Field::make(2, 2))); }) == ErrorKind::EvenCharacteristic);
}

TEST_CASE("conjugacy classes") {
  const Field f = Field::make(7, 1);
  const auto cls = conjugacy_classes(f);
  REQUIRE(cls.size() == 7);
  std::size_t total = 0;
  for (const auto& c : cls) {
    total += c.members.size();
    switch (c.kind) {
      case ConjugacyClass::Kind::Identity: CHECK(c.members.size() == 1); break;
      case ConjugacyClass::Kind::Translations: CHECK(c.members.size() == 6); break;
      case ConjugacyClass::Kind::Multiplier: CHECK(c.members.size() == 7); break;
    }
  }
  CHECK(total == 42);
}

TEST_CASE("linear characters") {
  const Field f = Field::make(7, 1);
  const auto chars = characters(f);
  REQUIRE(chars.size() == 6);
  CHECK(chars[3].is_sign());
  for (const auto& x : enumerate_affine(f)) {
    CHECK(std::abs(chars[0](x) - 1.0) < 1e-12);
    CHECK(std::abs(chars[3](x) - static_cast<double>(quadratic_char(x.a))) < 1e-12);
  }
}

TEST_CASE("point-stabilizer projector is rank one") {
  const Field f = Field::make(3, 2);
  for (const auto& b : f.elements()) {
    const auto h = point_stabilizer(b);
    CHECK(h.size() == 8);
    for (const auto& x : h) CHECK(x.apply(b) == b);
    const RepMatrix pm = averaged_projector(h);
    CHECK((pm * pm - pm).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(pm.trace() - 1.0) < 1e-12);
  }
}

TEST_CASE("squares stabilizer and the PSL row structure") {
  const Field f = Field::make(7, 1);
  const FieldElement a = f.from_int(2);  // 2 generates the squares {1,2,4}
  for (const auto& b : f.elements()) {
    const auto h = squares_point_stabilizer(a, b);
    CHECK(h.size() == 3);
    for (const auto& x : h) CHECK(x.apply(b) == b);
    const RepMatrix avg = averaged_projector(h);
    CHECK((psl_row_structure(a, b) * std::numbers::sqrt2 - avg).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(kind_of([&] { squares_point_stabilizer(f.from_int(3), f.one()); }) == ErrorKind::NotSquareGenerator);
  CHECK(kind_of([&] { squares_point_stabilizer(f.one(), f.one()); }) == ErrorKind::NotSquareGenerator);
}
