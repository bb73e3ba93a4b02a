#include "bhsp/field.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "bhsp/error.hpp"

namespace bhsp {

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;     // c_0..c_n, monic
  std::vector<std::uint32_t> weights;     // p^i
  std::uint32_t generator = 0;
  std::vector<std::uint32_t> exp_table;   // g^i, i in [0, q-1)
  std::vector<std::uint32_t> log_table;   // log_table[0] unused
  std::vector<std::uint32_t> basis_trace; // Tr(x^i)

  std::uint32_t digit(std::uint32_t index, std::uint32_t i) const {
    return (index / weights[i]) % p;
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (n == 1) return (a + b) % p;
    std::uint32_t out = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      out += ((a % p + b % p) % p) * weights[i];
      a /= p;
      b /= p;
    }
    return out;
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (n == 1) return (p - a) % p;
    std::uint32_t out = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      out += ((p - a % p) % p) * weights[i];
      a /= p;
    }
    return out;
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint64_t e = std::uint64_t{log_table[a]} + log_table[b];
    return exp_table[e % (q - 1)];
  }
};

}  // namespace detail

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first

// Remainder of a modulo the monic polynomial m, over Z_p.
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    std::uint32_t lead = a.back();
    if (lead != 0) {
      std::size_t shift = a.size() - 1 - dm;
      for (std::size_t i = 0; i <= dm; ++i) {
        a[shift + i] = static_cast<std::uint32_t>(
            (a[shift + i] + std::uint64_t{p - lead} * m[i]) % p);
      }
    }
    a.pop_back();
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  Poly r = poly_mod(std::move(prod), m, p);
  r.resize(m.size() - 1, 0);
  return r;
}

bool poly_is_zero(const Poly& a) {
  for (auto c : a)
    if (c != 0) return false;
  return true;
}

// Trial division by every monic polynomial of degree 1..n/2.
bool is_irreducible(const Poly& m, std::uint32_t p) {
  const std::uint32_t n = static_cast<std::uint32_t>(m.size() - 1);
  for (std::uint32_t deg = 1; deg <= n / 2; ++deg) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly d(deg + 1, 0);
      d[deg] = 1;
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < deg; ++i) {
        d[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      if (poly_is_zero(poly_mod(m, d, p))) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(std::uint32_t p, std::uint32_t n) {
  if (n == 1) return {0, 1};
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < n; ++i) count *= p;
  // The counter's most significant digit is c_{n-1}, so counting upward walks
  // monic polynomials in high-degree-first lexicographic order.
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly m(n + 1, 0);
    m[n] = 1;
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < n; ++i) {
      m[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    if (is_irreducible(m, p)) return m;
  }
  throw Error(ErrorKind::InvalidArgument, "no irreducible polynomial found");
}

Poly to_poly(std::uint32_t index, std::uint32_t p, std::uint32_t n) {
  Poly out(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    out[i] = index % p;
    index /= p;
  }
  return out;
}

std::uint32_t from_poly(const Poly& a, const std::vector<std::uint32_t>& weights) {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * weights[i];
  return out;
}

bool poly_is_one(const Poly& a) {
  if (a[0] != 1) return false;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] != 0) return false;
  return true;
}

std::shared_ptr<const detail::FieldData> build_field(std::uint32_t p, std::uint32_t n) {
  auto d = std::make_shared<detail::FieldData>();
  d->p = p;
  d->n = n;
  d->weights.resize(n);
  std::uint32_t w = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    d->weights[i] = w;
    w *= p;
  }
  d->q = w;
  d->modulus = smallest_irreducible(p, n);

  const std::uint64_t order = d->q - 1;
  const auto factors = prime_factors(order);
  // n = 1 keeps the modulus x, so elements are plain residues and we multiply
  // them directly rather than through the polynomial reduction.
  auto mul_raw = [&](const Poly& a, const Poly& b) {
    if (n == 1) return Poly{static_cast<std::uint32_t>(std::uint64_t{a[0]} * b[0] % p)};
    return poly_mulmod(a, b, d->modulus, p);
  };
  auto pow_raw = [&](Poly base, std::uint64_t e) {
    Poly result(n, 0);
    result[0] = 1;
    while (e > 0) {
      if (e & 1) result = mul_raw(result, base);
      base = mul_raw(base, base);
      e >>= 1;
    }
    return result;
  };

  for (std::uint32_t cand = 1; cand < d->q; ++cand) {
    Poly g = to_poly(cand, p, n);
    bool primitive = true;
    for (auto r : factors) {
      if (poly_is_one(pow_raw(g, order / r))) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      d->generator = cand;
      break;
    }
  }
  if (d->q > 2 && d->generator == 0) {
    throw Error(ErrorKind::InvalidArgument, "no primitive element found");
  }
  if (d->q == 2) d->generator = 1;

  d->exp_table.resize(order);
  d->log_table.assign(d->q, 0);
  Poly g = to_poly(d->generator, p, n);
  Poly cur = to_poly(1, p, n);
  for (std::uint64_t i = 0; i < order; ++i) {
    std::uint32_t idx = from_poly(cur, d->weights);
    d->exp_table[i] = idx;
    d->log_table[idx] = static_cast<std::uint32_t>(i);
    cur = mul_raw(cur, g);
  }

  // Tr(x^i) via the Frobenius orbit; trace is Z_p-linear so these suffice.
  d->basis_trace.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t basis = d->weights[i];
    std::uint32_t acc = 0;
    std::uint64_t pm = 1;
    for (std::uint32_t m = 0; m < n; ++m) {
      std::uint32_t term = d->exp_table[(std::uint64_t{d->log_table[basis]} * pm) % order];
      acc = d->add(acc, term);
      pm = (pm * p) % order;
    }
    if (acc >= p) throw Error(ErrorKind::InvalidArgument, "trace left the prime subfield");
    d->basis_trace[i] = acc;
  }
  return d;
}

const detail::FieldData& same_ctx(const FieldElement& a, const FieldElement& b) {
  if (!(a.field() == b.field())) {
    throw Error(ErrorKind::MixedContexts, "field elements from different contexts");
  }
  return a.field().data();
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Field Field::make(std::uint32_t p, std::uint32_t n) {
  if (n == 0) throw Error(ErrorKind::DegreeZero, "field degree must be at least 1");
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q > kMaxOrder) {
      throw Error(ErrorKind::FieldTooLarge,
                  std::to_string(p) + "^" + std::to_string(n) + " exceeds 2^20");
    }
  }

  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>,
                  std::shared_ptr<const detail::FieldData>>
      cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{p, n}];
  if (!slot) slot = build_field(p, n);
  return Field(slot);
}

Field Field::parse(const std::string& spec) {
  auto caret = spec.find('^');
  try {
    std::size_t used = 0;
    if (caret == std::string::npos) {
      unsigned long p = std::stoul(spec, &used);
      if (used != spec.size()) throw std::invalid_argument(spec);
      return make(static_cast<std::uint32_t>(p), 1);
    }
    std::string ps = spec.substr(0, caret);
    std::string ns = spec.substr(caret + 1);
    unsigned long p = std::stoul(ps, &used);
    if (used != ps.size()) throw std::invalid_argument(spec);
    unsigned long n = std::stoul(ns, &used);
    if (used != ns.size()) throw std::invalid_argument(spec);
    if (p > 0xffffffffUL || n > 64) throw std::invalid_argument(spec);
    return make(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(n));
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::ParseError, "bad field '" + spec + "', expected p^n");
  } catch (const std::out_of_range&) {
    throw Error(ErrorKind::ParseError, "bad field '" + spec + "', expected p^n");
  }
}

std::uint32_t Field::p() const { return data_->p; }
std::uint32_t Field::n() const { return data_->n; }
std::uint32_t Field::q() const { return data_->q; }
const std::vector<std::uint32_t>& Field::modulus() const { return data_->modulus; }

std::string Field::modulus_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = data_->modulus.size(); i-- > 0;) {
    std::uint32_t c = data_->modulus[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (c != 1) os << c;
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::string Field::spec_string() const {
  return std::to_string(data_->p) + "^" + std::to_string(data_->n);
}

FieldElement Field::generator() const { return FieldElement(*this, data_->generator); }
FieldElement Field::zero() const { return FieldElement(*this, 0); }
FieldElement Field::one() const { return FieldElement(*this, 1); }
FieldElement Field::element(std::uint32_t index) const { return FieldElement(*this, index); }

FieldElement Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() != data_->n) {
    throw Error(ErrorKind::InvalidElement, "coefficient vector has the wrong length");
  }
  std::uint32_t idx = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] >= data_->p) throw Error(ErrorKind::InvalidElement, "coefficient out of range");
    idx += coeffs[i] * data_->weights[i];
  }
  return FieldElement(*this, idx);
}

FieldElement Field::from_int(std::int64_t value) const {
  std::int64_t p = data_->p;
  return FieldElement(*this, static_cast<std::uint32_t>(((value % p) + p) % p));
}

std::vector<FieldElement> Field::elements() const {
  std::vector<FieldElement> out;
  out.reserve(data_->q);
  for (std::uint32_t i = 0; i < data_->q; ++i) out.emplace_back(*this, i);
  return out;
}

std::vector<FieldElement> Field::units_by_log() const {
  std::vector<FieldElement> out;
  out.reserve(data_->q - 1);
  for (auto idx : data_->exp_table) out.emplace_back(*this, idx);
  return out;
}

FieldElement::FieldElement(Field field, std::uint32_t index) : field_(std::move(field)), index_(index) {
  if (index_ >= field_.q()) throw Error(ErrorKind::InvalidElement, "element index out of range");
}

std::vector<std::uint32_t> FieldElement::coeffs() const {
  return to_poly(index_, field_.p(), field_.n());
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  const auto& d = field_.data();
  std::uint32_t l = d.log_table[index_];
  return FieldElement(field_, d.exp_table[(d.q - 1 - l) % (d.q - 1)]);
}

FieldElement FieldElement::pow(std::int64_t e) const {
  const auto& d = field_.data();
  if (is_zero()) {
    if (e < 0) throw Error(ErrorKind::DivisionByZero, "negative power of zero");
    return FieldElement(field_, e == 0 ? 1 : 0);
  }
  std::int64_t order = d.q - 1;
  std::int64_t r = ((e % order) + order) % order;
  std::uint64_t l = (std::uint64_t{d.log_table[index_]} * static_cast<std::uint64_t>(r)) % order;
  return FieldElement(field_, d.exp_table[l]);
}

std::uint32_t FieldElement::log() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "logarithm of zero");
  return field_.data().log_table[index_];
}

bool FieldElement::is_square() const {
  return is_zero() || field_.q() % 2 == 0 || log() % 2 == 0;
}

FieldElement FieldElement::operator-() const {
  return FieldElement(field_, field_.data().neg(index_));
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  return FieldElement(a.field_, same_ctx(a, b).add(a.index_, b.index_));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  const auto& d = same_ctx(a, b);
  return FieldElement(a.field_, d.add(a.index_, d.neg(b.index_)));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  return FieldElement(a.field_, same_ctx(a, b).mul(a.index_, b.index_));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  same_ctx(a, b);
  return a * b.inverse();
}

std::string FieldElement::to_string() const {
  if (field_.n() == 1) return std::to_string(index_);
  std::ostringstream os;
  os << "[";
  auto c = coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << "]";
  return os.str();
}

Frequency::Frequency(Field field, std::uint32_t index) : field_(std::move(field)), index_(index) {
  if (index_ >= field_.q()) throw Error(ErrorKind::InvalidElement, "frequency out of range");
}

Frequency Frequency::from_coords(const Field& field, std::span<const std::uint32_t> coords) {
  return of(field.from_coeffs(coords));
}

std::vector<std::uint32_t> Frequency::coords() const { return as_element().coeffs(); }

std::uint32_t trace(const FieldElement& a) {
  const auto& d = a.field().data();
  std::uint64_t acc = 0;
  std::uint32_t idx = a.index();
  for (std::uint32_t i = 0; i < d.n; ++i) {
    acc += std::uint64_t{idx % d.p} * d.basis_trace[i];
    idx /= d.p;
  }
  return static_cast<std::uint32_t>(acc % d.p);
}

FieldElement trace_by_frobenius(const FieldElement& a) {
  FieldElement acc = a.field().zero();
  FieldElement term = a;
  for (std::uint32_t m = 0; m < a.field().n(); ++m) {
    acc += term;
    term = term.pow(a.field().p());
  }
  return acc;
}

std::uint32_t dot(const FieldElement& b, const FieldElement& j) { return trace(b * j); }

std::complex<double> root_of_unity(std::uint32_t p, std::int64_t x) {
  std::int64_t r = ((x % static_cast<std::int64_t>(p)) + p) % p;
  double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p);
  return {std::cos(angle), std::sin(angle)};
}

std::complex<double> additive_char(const Frequency& k, const FieldElement& j) {
  return root_of_unity(j.field().p(), dot(k.as_element(), j));
}

int quadratic_char(const FieldElement& a) {
  if (a.is_zero()) return 0;
  return a.log() % 2 == 0 ? 1 : -1;
}

GaussSumValue gauss_sum(MultChar m, const Frequency& k) {
  const Field& f = k.field();
  GaussSumValue out;
  std::complex<double> acc = 0.0;
  for (std::uint32_t i = 1; i < f.q(); ++i) {
    FieldElement x = f.element(i);
    double mv = m == MultChar::Trivial ? 1.0 : static_cast<double>(quadratic_char(x));
    acc += mv * additive_char(k, x);
  }
  out.value = acc;
  out.modulus_sq = std::norm(acc);
  const double root = std::sqrt(static_cast<double>(f.q()));
  const std::complex<double> unit[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int d = 0; d < 4; ++d) {
    if (std::abs(acc - unit[d] * root) < 1e-9 * root) {
      out.d = d;
      out.d_odd = (d % 2) == 1;
    }
  }
  return out;
}

}  // namespace bhsp
