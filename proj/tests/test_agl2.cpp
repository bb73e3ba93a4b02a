#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "bhsp/agl2.hpp"
#include "bhsp/error.hpp"
#include "oracles.hpp"

using namespace bhsp;
using namespace bhsp::agl2;

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

// Same block extraction as the witness, but from the plain transpose.
AffineMap2 plain_transpose_map(const BitMatrix& a) {
  const int d = a.d;
  const BitMatrix t = a.transpose();
  AffineMap2 out;
  out.a.d = d - 1;
  for (int i = 0; i < d - 1; ++i)
    for (int j = 0; j < d - 1; ++j) out.a.set(i, j, t.entry(i, j));
  for (int i = 0; i < d - 1; ++i)
    if (t.entry(i, d - 1)) out.b |= static_cast<std::uint8_t>(1u << i);
  return out;
}

}  // namespace

TEST_CASE("group orders") {
  CHECK(agl2_order(1) == 2);
  CHECK(agl2_order(2) == 24);
  CHECK(agl2_order(3) == 1344);
  CHECK(agl2_order(4) == 322560);
  for (int d = 1; d <= 3; ++d) {
    CHECK(enumerate_gl2(d).size() == oracle::naive_gl2_count(d));
    CHECK(enumerate_agl2(d).size() == agl2_order(d));
  }
  CHECK(enumerate_gl2(4).size() == 20160);
  CHECK(kind_of([] { enumerate_gl2(5); }) == ErrorKind::DimensionTooLarge);
  CHECK(kind_of([] { enumerate_agl2(0); }) == ErrorKind::DimensionTooLarge);
}

TEST_CASE("bit matrix arithmetic") {
  for (const auto& a : enumerate_gl2(3)) {
    CHECK(a * a.inverse() == BitMatrix::identity(3));
    CHECK(a.transpose().transpose() == a);
    for (std::uint8_t v = 0; v < 8; ++v) CHECK(a.inverse().apply(a.apply(v)) == v);
  }
  BitMatrix singular;
  singular.d = 2;
  singular.rows = {1, 1, 0, 0};
  CHECK(singular.rank() == 1);
  CHECK(kind_of([&] { singular.inverse(); }) == ErrorKind::InvalidElement);
}

TEST_CASE("identity and closure") {
  const auto g = enumerate_agl2(2);
  const std::set<AffineMap2> all(g.begin(), g.end());
  CHECK(all.count(AffineMap2{BitMatrix::identity(2), 0}) == 1);
  for (const auto& x : g)
    for (const auto& y : g) CHECK(all.count(x.compose(y)) == 1);
  for (const auto& x : g)
    for (std::uint8_t v = 0; v < 4; ++v) CHECK(x.compose(g[7]).apply(v) == x.apply(g[7].apply(v)));
}

TEST_CASE("3-transitivity") {
  for (int d = 2; d <= 4; ++d) {
    const auto r = check_transitive(d, 3);
    CHECK(r.is_k_transitive);
    CHECK(r.b == Fraction{1, 1});
    CHECK(check_3transitive(d));
  }
  // AGL(2;2) is S_4 on four points, so it is even 4-transitive.
  CHECK(check_transitive(2, 4).is_k_transitive);
  const auto r = check_transitive(3, 4);
  CHECK_FALSE(r.is_k_transitive);
  CHECK(r.b < Fraction{1, 1});
}

TEST_CASE("stabilizer of the last basis vector") {
  const auto d2 = point1_stabilizer_structure(2);
  CHECK(d2.stabilizer_order == 2);
  CHECK(d2.orbit_size == 3);
  CHECK(d2.ok());
  const auto d3 = point1_stabilizer_structure(3);
  CHECK(d3.stabilizer_order == 24);
  CHECK(d3.orbit_size == 7);
  CHECK(d3.block_form);
  CHECK(d3.bijective);
  CHECK(d3.homomorphism);
  CHECK(d3.ok());
  CHECK(point1_stabilizer_structure(4).ok());
  CHECK(kind_of([] { point1_stabilizer_structure(1); }) == ErrorKind::DimensionTooLarge);
}

TEST_CASE("the plain transpose reverses products") {
  std::vector<BitMatrix> stab;
  for (const auto& a : enumerate_gl2(3))
    if (a.apply(4) == 4) stab.push_back(a);
  REQUIRE(stab.size() == 24);
  bool hom = true, anti = true;
  for (const auto& x : stab) {
    for (const auto& y : stab) {
      hom = hom && plain_transpose_map(x * y) == plain_transpose_map(x).compose(plain_transpose_map(y));
      anti = anti && plain_transpose_map(x * y) == plain_transpose_map(y).compose(plain_transpose_map(x));
    }
  }
  CHECK_FALSE(hom);
  CHECK(anti);
}

TEST_CASE("translation conjugates the origin stabilizer") {
  for (std::uint8_t p = 0; p < 8; ++p) CHECK(translation_conjugates_stabilizer(3, p));
  CHECK(translation_conjugates_stabilizer(2, 3));
}
