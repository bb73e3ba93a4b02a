#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "bhsp/error.hpp"
#include "bhsp/transitivity.hpp"
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

// Ordinal convention: infinity 0, element i at i + 1.
std::uint32_t to_naive(std::uint32_t ordinal, std::uint32_t q) { return ordinal == 0 ? q : ordinal - 1; }

// Number of distinct images of (inf, 0, 1) under raw matrices.
std::size_t naive_orbit_of_triple(std::uint32_t p, std::uint32_t n, oracle::Kind kind) {
  const oracle::NaiveField nf(p, n);
  std::set<std::array<std::uint32_t, 3>> images;
  for (const auto& m : oracle::naive_group(nf, kind)) {
    images.insert({oracle::mobius(nf, m, nf.q), oracle::mobius(nf, m, 0), oracle::mobius(nf, m, 1)});
  }
  return images.size();
}

}  // namespace

TEST_CASE("fractions reduce") {
  CHECK(Fraction::make(6, 12) == Fraction{1, 2});
  CHECK(Fraction::make(0, 5) == Fraction{0, 1});
  CHECK(Fraction::make(4, 4).to_string() == "1/1");
  CHECK(Fraction::make(1, 3) < Fraction::make(1, 2));
}

TEST_CASE("action descriptors validate permutations") {
  CHECK(kind_of([] { ActionDescriptor(3, {{0, 1, 1}}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { ActionDescriptor(3, {{0, 1}}); }) == ErrorKind::InvalidArgument);
  const ActionDescriptor trivial(4, {{0, 1, 2, 3}});
  CHECK(kind_of([&] { transitivity_fraction(trivial, 5); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("tuple budget") {
  Permutation id(100);
  for (std::uint32_t i = 0; i < 100; ++i) id[i] = i;
  const ActionDescriptor big(100, {id});
  CHECK(kind_of([&] { transitivity_fraction(big, 4); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("PGL is sharply 3-transitive") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{5, 1}, {7, 1}, {3, 2}}) {
    const Field f = Field::make(p, n);
    const auto action = projective_action(enumerate(Flavor::PGL, f));
    const auto rep = transitivity_fraction(action, 3);
    CHECK(rep.is_k_transitive);
    CHECK(rep.b == Fraction{1, 1});
    CHECK(rep.orbit_count == 1);
    for (const auto& [t, count] : reach_counts(action, {0, 1, 2})) CHECK(count == 1);
    CHECK(pointwise_stabilizer_order(action, {0, 1, 2}) == 1);
  }
}

TEST_CASE("PSL reaches exactly half of the ordered triples") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{5, 1}, {7, 1}, {3, 2}}) {
    const Field f = Field::make(p, n);
    const auto action = projective_action(enumerate(Flavor::PSL, f));
    const auto rep = transitivity_fraction(action, 3);
    CAPTURE(f.q());
    CHECK(rep.b == Fraction{1, 2});
    CHECK(rep.uniform);
    CHECK_FALSE(rep.is_k_transitive);
    CHECK(rep.orbit_count == 2);
    CHECK(transitivity_fraction(action, 2).is_k_transitive);
    // The orbit size agrees with raw matrix enumeration.
    const std::uint64_t s = f.q() + 1;
    CHECK(naive_orbit_of_triple(p, n, oracle::Kind::PSL) * 2 == s * (s - 1) * (s - 2));
  }
}

TEST_CASE("SL hits the PSL tuples twice each") {
  const Field f = Field::make(5, 1);
  const auto sl = projective_action(enumerate(Flavor::SL, f));
  const auto psl = projective_action(enumerate(Flavor::PSL, f));
  CHECK(transitivity_fraction(sl, 3).b == Fraction{1, 2});
  const auto a = reach_counts(sl, {0, 1, 2});
  const auto b = reach_counts(psl, {0, 1, 2});
  REQUIRE(a.size() == b.size());
  for (const auto& [t, count] : a) {
    CHECK(count == 2);
    CHECK(b.count(t) == 1);
  }
}

TEST_CASE("index formula for PGL") {
  const Field f = Field::make(5, 1);
  const auto action = projective_action(enumerate(Flavor::PGL, f));
  const std::uint64_t s = 6;
  std::uint64_t expected = 1;
  for (int j = 1; j <= 3; ++j) {
    expected *= s - static_cast<std::uint64_t>(j) + 1;
    std::vector<std::uint32_t> pts;
    for (int i = 0; i < j; ++i) pts.push_back(static_cast<std::uint32_t>(2 * i + 1));
    const auto r = verify_index_formula(action, pts, j);
    CHECK(r.holds);
    CHECK(r.index == expected);
    CHECK(r.expected_index == expected);
  }
  // PSL is not 3-transitive, so the formula is not asserted there.
  const auto psl = projective_action(enumerate(Flavor::PSL, f));
  const auto r = verify_index_formula(psl, {0, 1, 2}, 3);
  CHECK_FALSE(r.asserted);
  CHECK_FALSE(r.holds);
}

TEST_CASE("two-point stabilizers are distinct") {
  const Field f = Field::make(7, 1);
  for (Flavor fl : {Flavor::PGL, Flavor::PSL}) {
    const auto action = projective_action(enumerate(fl, f));
    const auto r = verify_distinctness(action, 0);
    CHECK(r.precondition_met);
    CHECK(r.distinct);
  }
}

TEST_CASE("stabilizer orders agree with the naive action") {
  const Field f = Field::make(7, 1);
  const oracle::NaiveField nf(7, 1);
  const auto group = enumerate(Flavor::PSL, f);
  const auto action = projective_action(group);
  for (std::uint32_t a = 0; a < 8; ++a) {
    std::uint64_t naive = 0;
    for (const auto& m : oracle::naive_group(nf, oracle::Kind::PSL)) naive += oracle::mobius(nf, m, to_naive(a, 7)) == to_naive(a, 7);
    CHECK(pointwise_stabilizer_order(action, {a}) == naive);
  }
}
