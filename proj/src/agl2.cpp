#include "bhsp/agl2.hpp"

#include <algorithm>
#include <set>

#include "bhsp/error.hpp"

namespace bhsp::agl2 {

namespace {

void require_dimension(int d, int lo = 1) {
  if (d < lo || d > kMaxDimension) {
    throw Error(ErrorKind::DimensionTooLarge,
                "dimension " + std::to_string(d) + " outside [" + std::to_string(lo) + ", 4]");
  }
}

}  // namespace

BitMatrix BitMatrix::identity(int d) {
  BitMatrix m;
  m.d = d;
  for (int i = 0; i < d; ++i) m.rows[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(1u << i);
  return m;
}

std::uint8_t BitMatrix::apply(std::uint8_t v) const {
  std::uint8_t out = 0;
  for (int i = 0; i < d; ++i) {
    if (__builtin_parity(rows[static_cast<std::size_t>(i)] & v)) out |= static_cast<std::uint8_t>(1u << i);
  }
  return out;
}

void BitMatrix::set(int i, int j, bool v) {
  auto& r = rows[static_cast<std::size_t>(i)];
  r = static_cast<std::uint8_t>(v ? (r | (1u << j)) : (r & ~(1u << j)));
}

std::uint8_t BitMatrix::column(int j) const {
  std::uint8_t out = 0;
  for (int i = 0; i < d; ++i)
    if (entry(i, j)) out |= static_cast<std::uint8_t>(1u << i);
  return out;
}

int BitMatrix::rank() const {
  auto r = rows;
  int rank = 0;
  for (int col = 0; col < d; ++col) {
    int pivot = -1;
    for (int i = rank; i < d; ++i) {
      if ((r[static_cast<std::size_t>(i)] >> col) & 1u) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(r[static_cast<std::size_t>(rank)], r[static_cast<std::size_t>(pivot)]);
    for (int i = 0; i < d; ++i) {
      if (i != rank && ((r[static_cast<std::size_t>(i)] >> col) & 1u)) {
        r[static_cast<std::size_t>(i)] ^= r[static_cast<std::size_t>(rank)];
      }
    }
    ++rank;
  }
  return rank;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t;
  t.d = d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) t.set(j, i, entry(i, j));
  return t;
}

BitMatrix BitMatrix::inverse() const {
  // Gauss-Jordan on [A | I].
  auto a = rows;
  auto inv = identity(d).rows;
  for (int col = 0; col < d; ++col) {
    int pivot = -1;
    for (int i = col; i < d; ++i) {
      if ((a[static_cast<std::size_t>(i)] >> col) & 1u) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) throw Error(ErrorKind::InvalidElement, "singular matrix over F_2");
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(pivot)]);
    std::swap(inv[static_cast<std::size_t>(col)], inv[static_cast<std::size_t>(pivot)]);
    for (int i = 0; i < d; ++i) {
      if (i != col && ((a[static_cast<std::size_t>(i)] >> col) & 1u)) {
        a[static_cast<std::size_t>(i)] ^= a[static_cast<std::size_t>(col)];
        inv[static_cast<std::size_t>(i)] ^= inv[static_cast<std::size_t>(col)];
      }
    }
  }
  BitMatrix out;
  out.d = d;
  out.rows = inv;
  return out;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out;
  out.d = a.d;
  for (int i = 0; i < a.d; ++i) {
    std::uint8_t row = 0;
    for (int k = 0; k < a.d; ++k)
      if (a.entry(i, k)) row ^= b.rows[static_cast<std::size_t>(k)];
    out.rows[static_cast<std::size_t>(i)] = row;
  }
  return out;
}

std::uint64_t gl2_order(int d) {
  require_dimension(d, 0);
  std::uint64_t out = 1;
  const std::uint64_t full = std::uint64_t{1} << d;
  for (int i = 0; i < d; ++i) out *= full - (std::uint64_t{1} << i);
  return out;
}

std::uint64_t agl2_order(int d) { return gl2_order(d) << d; }

std::vector<BitMatrix> enumerate_gl2(int d) {
  require_dimension(d);
  std::vector<BitMatrix> out;
  const std::uint32_t cells = static_cast<std::uint32_t>(d * d);
  for (std::uint32_t code = 0; code < (1u << cells); ++code) {
    BitMatrix m;
    m.d = d;
    for (int i = 0; i < d; ++i) {
      m.rows[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((code >> (i * d)) & ((1u << d) - 1));
    }
    if (m.invertible()) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AffineMap2> enumerate_agl2(int d) {
  std::vector<AffineMap2> out;
  for (const auto& a : enumerate_gl2(d))
    for (std::uint32_t b = 0; b < (1u << d); ++b) out.push_back({a, static_cast<std::uint8_t>(b)});
  return out;
}

ActionDescriptor agl2_action(int d) {
  const auto group = enumerate_agl2(d);
  const std::size_t s = std::size_t{1} << d;
  std::vector<Permutation> perms;
  perms.reserve(group.size());
  for (const auto& g : group) {
    Permutation p(s);
    for (std::size_t v = 0; v < s; ++v) p[v] = g.apply(static_cast<std::uint8_t>(v));
    perms.push_back(std::move(p));
  }
  return ActionDescriptor(s, std::move(perms));
}

TransitivityReport check_transitive(int d, int k) { return transitivity_fraction(agl2_action(d), k); }

AffineMap2 stabilizer_to_affine(const BitMatrix& a) {
  const int d = a.d;
  const BitMatrix t = a.inverse().transpose();
  AffineMap2 out;
  out.a.d = d - 1;
  for (int i = 0; i < d - 1; ++i)
    for (int j = 0; j < d - 1; ++j) out.a.set(i, j, t.entry(i, j));
  for (int i = 0; i < d - 1; ++i)
    if (t.entry(i, d - 1)) out.b |= static_cast<std::uint8_t>(1u << i);
  return out;
}

StabilizerStructure point1_stabilizer_structure(int d) {
  require_dimension(d, 2);
  StabilizerStructure r;
  r.d = d;
  const auto gl = enumerate_gl2(d);
  r.gl_order = gl.size();
  r.expected_order = agl2_order(d - 1);
  const std::uint8_t ed = static_cast<std::uint8_t>(1u << (d - 1));

  std::set<std::uint8_t> orbit;
  std::vector<BitMatrix> stab;
  for (const auto& a : gl) {
    orbit.insert(a.apply(ed));
    if (a.apply(ed) == ed) stab.push_back(a);
  }
  r.orbit_size = orbit.size();
  r.stabilizer_order = stab.size();

  // Block form: last column e_d, invertible leading block, any last row.
  r.block_form = true;
  for (const auto& a : stab) {
    BitMatrix lead;
    lead.d = d - 1;
    for (int i = 0; i < d - 1; ++i)
      for (int j = 0; j < d - 1; ++j) lead.set(i, j, a.entry(i, j));
    if (a.column(d - 1) != ed || !lead.invertible()) r.block_form = false;
  }
  // Every (M, r) with M invertible occurs.
  const std::uint64_t free_rows = std::uint64_t{1} << (d - 1);
  r.block_form = r.block_form && stab.size() == gl2_order(d - 1) * free_rows;

  std::vector<AffineMap2> image;
  for (const auto& a : stab) {
    auto x = stabilizer_to_affine(a);
    if (!x.a.invertible()) r.block_form = false;
    image.push_back(x);
  }
  std::set<AffineMap2> distinct(image.begin(), image.end());
  r.bijective = distinct.size() == stab.size() && distinct.size() == r.expected_order;

  r.homomorphism = true;
  for (std::size_t i = 0; i < stab.size() && r.homomorphism; ++i) {
    for (std::size_t j = 0; j < stab.size(); ++j) {
      if (!(stabilizer_to_affine(stab[i] * stab[j]) == image[i].compose(image[j]))) {
        r.homomorphism = false;
        break;
      }
    }
  }
  r.witness = "A = (M 0 / r 1) -> (A^{-1})^T = (M^{-T}  M^{-T} r^T / 0 1)";
  return r;
}

bool translation_conjugates_stabilizer(int d, std::uint8_t p) {
  require_dimension(d);
  const auto t = AffineMap2::translation(d, p);
  const auto t_inv = AffineMap2::translation(d, p);  // translations are involutions over F_2
  std::set<AffineMap2> conjugated;
  for (const auto& a : enumerate_gl2(d)) conjugated.insert(t.compose(AffineMap2{a, 0}).compose(t_inv));
  std::set<AffineMap2> stab;
  for (const auto& g : enumerate_agl2(d))
    if (g.apply(p) == p) stab.insert(g);
  return conjugated == stab;
}

}  // namespace bhsp::agl2
