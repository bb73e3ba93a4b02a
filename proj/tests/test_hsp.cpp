#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "bhsp/error.hpp"
#include "bhsp/hsp.hpp"
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

Field field_of(std::uint32_t q) { return q == 9 ? Field::make(3, 2) : Field::make(q, 1); }
oracle::NaiveField naive_of(std::uint32_t q) { return q == 9 ? oracle::NaiveField(3, 2) : oracle::NaiveField(q, 1); }

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("stabilizer oracle keeps its promise") {
  const Field f = Field::make(5, 1);
  const auto s = ProjPoint::finite(f.from_int(3));
  const auto orc = make_stabilizer_oracle(Flavor::PSL, f, s, 11);
  CHECK(orc.verify_promise());
  CHECK(orc.color_count() == 6);
  CHECK(orc.hidden().size() == 10);
  for (const auto& h : orc.hidden()) CHECK(act(h, s) == s);
  const auto r = restrict_oracle(orc, borel(Flavor::PSL, f));
  CHECK(r.hidden().size() == 2);
  CHECK(r.color_count() == 5);
}

TEST_CASE("promise violations are caught") {
  const Field f = Field::make(5, 1);
  const auto group = enumerate(Flavor::PGL, f);
  std::vector<Color> colors(group.size());
  for (std::size_t i = 0; i < colors.size(); ++i) colors[i] = i % 7;
  const auto bad = HidingOracle::from_coloring(group, colors);
  CHECK_FALSE(bad.verify_promise());
  CHECK(kind_of([&] { restrict_oracle(bad, borel(Flavor::PGL, f)); }) == ErrorKind::PromiseViolation);
}

TEST_CASE("queries are counted") {
  const Field f = Field::make(7, 1);
  const auto orc = make_stabilizer_oracle(Flavor::PGL, f, ProjPoint::infinity(f));
  const auto t = classical_equal_point_test(orc, Flavor::PGL);
  CHECK(t.hidden_point_is_infinity);
  CHECK(t.queries <= 4);
  CHECK(orc.queries() == t.queries);
  const auto fin = make_stabilizer_oracle(Flavor::PGL, f, ProjPoint::finite(f.one()));
  CHECK_FALSE(classical_equal_point_test(fin, Flavor::PGL).hidden_point_is_infinity);
}

TEST_CASE("measurement model matches the pure-state oracle") {
  struct Case {
    Flavor flavor;
    oracle::Kind kind;
    std::uint32_t q;
  };
  for (auto c : std::vector<Case>{{Flavor::PGL, oracle::Kind::PGL, 5},
                                  {Flavor::PGL, oracle::Kind::PGL, 7},
                                  {Flavor::PGL, oracle::Kind::PGL, 9},
                                  {Flavor::PSL, oracle::Kind::PSL, 5},
                                  {Flavor::PSL, oracle::Kind::PSL, 7},
                                  {Flavor::PSL, oracle::Kind::PSL, 9},
                                  {Flavor::SL, oracle::Kind::SL, 5}}) {
    const Field f = field_of(c.q);
    const auto nf = naive_of(c.q);
    for (const auto& b : f.elements()) {
      CAPTURE(c.q);
      CAPTURE(to_string(c.flavor));
      CAPTURE(b.index());
      const auto model = brute_force_model(c.flavor, b);
      const auto naive = oracle::naive_measurement(nf, c.kind, b.index());
      CHECK(std::abs(model.rho_probability - naive.p_rho) < 1e-9);
      CHECK(std::abs(model.irreps.front().probability - naive.p_trivial) < 1e-9);
      CHECK(max_diff(model.marginal.p, naive.marginal) < 1e-9);
      for (std::uint32_t k = 0; k + 1 < c.q; ++k) CHECK(max_diff(model.per_column[k].p, naive.per_column[k]) < 1e-9);
    }
  }
}

TEST_CASE("weak measurement masses") {
  for (std::uint32_t q : {5u, 7u, 9u, 11u}) {
    const Field f = field_of(q);
    const double dq = q;
    const auto pgl = brute_force_model(Flavor::PGL, f.one());
    CHECK(std::abs(pgl.rho_probability - (1.0 - 1.0 / dq)) < 1e-9);
    const auto psl = brute_force_model(Flavor::PSL, f.one());
    CHECK(std::abs(psl.rho_probability - (1.0 - 1.0 / dq)) < 1e-9);
    for (const auto& ir : psl.irreps) {
      if (ir.label == "trivial" || ir.label == "sign") CHECK(std::abs(ir.probability - 1.0 / (2.0 * dq)) < 1e-9);
      else if (ir.label != "rho") CHECK(std::abs(ir.probability) < 1e-9);
    }
  }
}

TEST_CASE("closed forms agree with the brute-force oracle") {
  for (std::uint32_t q : {5u, 7u, 9u, 11u, 13u}) {
    const Field f = field_of(q);
    for (const auto& b : f.elements()) {
      CAPTURE(q);
      CAPTURE(b.index());
      const auto pgl = brute_force_model(Flavor::PGL, b);
      CHECK(max_diff(pgl.marginal.p, closed_form_distribution(Flavor::PGL, b, 1).p) < 1e-9);
      const auto psl = brute_force_model(Flavor::PSL, b);
      for (const auto& k : f.units_by_log()) {
        const int branch = quadratic_char(k);
        const auto& col = psl.per_column[k.log()];
        CHECK(max_diff(col.p, closed_form_distribution(Flavor::PSL, b, branch).p) < 1e-9);
        CHECK(max_diff(col.p, conditional_row_fourier_distribution(Flavor::PSL, b, k).p) < 1e-9);
        CHECK(std::abs(col.total() - 1.0) < 1e-9);
        CHECK(col.min() > -1e-12);
        CHECK(std::abs(col.p[b.index()] - (q - 1.0) / (2.0 * q)) < 1e-9);
      }
    }
  }
}

TEST_CASE("PSL off-peak values by Gauss-sum parity") {
  for (std::uint32_t q : {5u, 7u, 9u, 11u, 13u}) {
    const Field f = field_of(q);
    const double dq = q;
    const bool d_odd = *gauss_sum(MultChar::Quadratic, Frequency(f, 1)).d_odd;
    const FieldElement b = f.element(2);
    for (int branch : {1, -1}) {
      const auto cf = closed_form_distribution(Flavor::PSL, b, branch);
      std::map<double, int> counts;
      for (std::uint32_t l = 0; l < q; ++l)
        if (l != b.index()) ++counts[std::round(cf.p[l] * 1e9) / 1e9];
      CAPTURE(q);
      if (d_odd) {
        REQUIRE(counts.size() == 1);
        CHECK(std::abs(counts.begin()->first - (dq + 1) / (2 * dq * (dq - 1))) < 1e-9);
      } else {
        REQUIRE(counts.size() == 2);
        const double lo = (dq - 2 * std::sqrt(dq) + 1) / (2 * dq * (dq - 1));
        const double hi = (dq + 2 * std::sqrt(dq) + 1) / (2 * dq * (dq - 1));
        CHECK(std::abs(counts.begin()->first - lo) < 1e-9);
        CHECK(std::abs(counts.rbegin()->first - hi) < 1e-9);
        for (const auto& [v, m] : counts) CHECK(m == static_cast<int>(q - 1) / 2);
      }
    }
  }
}

TEST_CASE("the 4q(q-1) denominator does not normalize") {
  const Field f = Field::make(7, 1);
  const auto r = printed_psl_form_check(f.one(), 1);
  CHECK_FALSE(r.normalized);
  CHECK(std::abs(r.total_mass - (3.0 * 7 - 1) / (4.0 * 7)) < 1e-12);
  CHECK(std::abs(r.corrected_total_mass - 1.0) < 1e-12);
}

TEST_CASE("SL gives the PSL distribution") {
  const Field f = Field::make(5, 1);
  for (const auto& b : f.elements()) {
    const auto sl = brute_force_model(Flavor::SL, b);
    const auto psl = brute_force_model(Flavor::PSL, b);
    CHECK(max_diff(sl.marginal.p, psl.marginal.p) < 1e-9);
    CHECK(std::abs(sl.rho_probability - psl.rho_probability) < 1e-9);
  }
}

TEST_CASE("relabelling the oracle colours changes nothing") {
  const Field f = Field::make(7, 1);
  const auto b = f.from_int(4);
  for (Flavor fl : {Flavor::PGL, Flavor::PSL}) {
    const auto plain = brute_force_distribution_oracle(fl, b);
    for (std::uint64_t seed : {1u, 2u, 99u}) {
      CHECK(max_diff(plain.p, brute_force_distribution_oracle(fl, b, std::nullopt, seed).p) < 1e-12);
    }
  }
}

TEST_CASE("coset states need a Borel domain and odd q") {
  const Field f = Field::make(5, 1);
  const auto full = make_stabilizer_oracle(Flavor::PGL, f, ProjPoint::finite(f.one()));
  CHECK(kind_of([&] { build_coset_state(full); }) == ErrorKind::NotUpperTriangular);
  CHECK(kind_of([&] { closed_form_distribution(Flavor::PSL, f.one(), 0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { closed_form_distribution(Flavor::GL, f.one(), 1); }) == ErrorKind::FlavorMismatch);
}

TEST_CASE("recovery") {
  const Field f = Field::make(7, 1);
  const auto s = ProjPoint::finite(f.from_int(3));
  const auto orc = make_stabilizer_oracle(Flavor::PSL, f, s);
  const auto r1 = recover_hidden_point(orc, 60, 1);
  const auto r2 = recover_hidden_point(orc, 60, 1);
  CHECK(r1.recovered == s);
  CHECK(r1.recovered == r2.recovered);
  CHECK(r1.histogram == r2.histogram);
  CHECK(r1.confidence == r2.confidence);
  CHECK(r1.samples == 60);
  std::uint64_t total = 0;
  for (auto c : r1.histogram) total += c;
  CHECK(total == 60);
  CHECK(r1.shots >= 60);

  const auto inf = make_stabilizer_oracle(Flavor::PGL, f, ProjPoint::infinity(f));
  const auto ri = recover_hidden_point(inf, std::nullopt, 5);
  CHECK(ri.classical);
  CHECK(ri.recovered.is_infinity());
  CHECK(ri.classical_queries <= 4);

  CHECK(kind_of([&] { recover_hidden_point(orc, 0, 1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("default sample count meets the bound") {
  const Field f = Field::make(3, 2);
  const auto model = brute_force_model(Flavor::PGL, f.one());
  const std::size_t m = default_sample_count(model);
  const double pb = model.marginal.p[1];
  const double pl = model.marginal.p[0];
  const double gap = std::pow(std::sqrt(pb) - std::sqrt(pl), 2.0);
  CHECK(8.0 * std::pow(1.0 - gap, static_cast<double>(m)) < 1e-6);
  CHECK(8.0 * std::pow(1.0 - gap, static_cast<double>(m - 1)) >= 1e-6);
}

TEST_CASE("unit uniform range") {
  CHECK(unit_uniform(0) == 0.0);
  CHECK(unit_uniform(~std::uint64_t{0}) < 1.0);
  CHECK(unit_uniform(std::uint64_t{1} << 63) == 0.5);
}
