#include "bhsp/pgroup.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "bhsp/error.hpp"

namespace bhsp {

std::vector<AffineElement> enumerate_affine(const Field& f, bool squares_only) {
  std::vector<AffineElement> out;
  for (std::uint32_t a = 1; a < f.q(); ++a) {
    FieldElement fa = f.element(a);
    if (squares_only && quadratic_char(fa) != 1) continue;
    for (std::uint32_t b = 0; b < f.q(); ++b) out.push_back({fa, f.element(b)});
  }
  return out;
}

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::GL: return "GL";
    case Flavor::SL: return "SL";
    case Flavor::PGL: return "PGL";
    case Flavor::PSL: return "PSL";
  }
  return "?";
}

Flavor parse_flavor(const std::string& s) {
  std::string lower;
  for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "gl") return Flavor::GL;
  if (lower == "sl") return Flavor::SL;
  if (lower == "pgl") return Flavor::PGL;
  if (lower == "psl") return Flavor::PSL;
  throw Error(ErrorKind::ParseError, "unknown group flavor '" + s + "'");
}

bool is_projective(Flavor f) { return f == Flavor::PGL || f == Flavor::PSL; }

namespace {

void require_odd(Flavor flavor, const Field& f) {
  if (flavor != Flavor::GL && f.p() == 2) {
    throw Error(ErrorKind::EvenCharacteristic,
                to_string(flavor) + "(2;q) requires odd q, got q = " + std::to_string(f.q()));
  }
}

std::array<std::uint32_t, 4> negate(const Field& f, const std::array<std::uint32_t, 4>& e) {
  std::array<std::uint32_t, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = (-f.element(e[i])).index();
  return out;
}

}  // namespace

GroupElement GroupElement::make(Flavor flavor, const FieldElement& alpha, const FieldElement& beta,
                                const FieldElement& gamma, const FieldElement& delta) {
  const Field& f = alpha.field();
  if (!(beta.field() == f && gamma.field() == f && delta.field() == f)) {
    throw Error(ErrorKind::MixedContexts, "matrix entries from different fields");
  }
  require_odd(flavor, f);
  FieldElement det = alpha * delta - beta * gamma;
  if (det.is_zero()) throw Error(ErrorKind::InvalidElement, "singular matrix");
  if ((flavor == Flavor::SL || flavor == Flavor::PSL) && !det.is_one()) {
    throw Error(ErrorKind::InvalidElement, bhsp::to_string(flavor) + " requires determinant 1");
  }
  std::array<std::uint32_t, 4> e{alpha.index(), beta.index(), gamma.index(), delta.index()};
  if (flavor == Flavor::PGL) {
    std::uint32_t lead = *std::find_if(e.begin(), e.end(), [](auto v) { return v != 0; });
    FieldElement s = f.element(lead).inverse();
    for (auto& v : e) v = (f.element(v) * s).index();
  } else if (flavor == Flavor::PSL) {
    auto neg = negate(f, e);
    if (neg < e) e = neg;
  }
  return GroupElement(f, flavor, e);
}

GroupElement GroupElement::identity(Flavor flavor, const Field& f) {
  return make(flavor, f.one(), f.zero(), f.zero(), f.one());
}

GroupElement GroupElement::weyl(Flavor flavor, const Field& f) {
  return make(flavor, f.zero(), -f.one(), f.one(), f.zero());
}

GroupElement GroupElement::inverse() const {
  FieldElement d = det().inverse();
  return make(flavor_, delta() * d, -beta() * d, -gamma() * d, alpha() * d);
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  if (!(g.field_ == h.field_)) throw Error(ErrorKind::MixedContexts, "group elements over different fields");
  if (g.flavor_ != h.flavor_) throw Error(ErrorKind::FlavorMismatch, "group elements of different flavors");
  FieldElement a = g.alpha(), b = g.beta(), c = g.gamma(), d = g.delta();
  FieldElement x = h.alpha(), y = h.beta(), z = h.gamma(), w = h.delta();
  return GroupElement::make(g.flavor_, a * x + b * z, a * y + b * w, c * x + d * z, c * y + d * w);
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os << bhsp::to_string(flavor_) << "(" << alpha().to_string() << " " << beta().to_string() << " / "
     << gamma().to_string() << " " << delta().to_string() << ")";
  return os.str();
}

GroupElement conjugate(const GroupElement& g, const GroupElement& h) { return h * g * h.inverse(); }

ProjPoint ProjPoint::from_ordinal(const Field& f, std::uint32_t ordinal) {
  if (ordinal > f.q()) throw Error(ErrorKind::InvalidElement, "projective ordinal out of range");
  if (ordinal == 0) return infinity(f);
  return ProjPoint(f, ordinal - 1);
}

std::vector<ProjPoint> ProjPoint::all(const Field& f) {
  std::vector<ProjPoint> out;
  out.reserve(f.q() + 1);
  for (std::uint32_t i = 0; i <= f.q(); ++i) out.push_back(from_ordinal(f, i));
  return out;
}

FieldElement ProjPoint::value() const {
  if (!x_) throw Error(ErrorKind::InvalidElement, "the point at infinity has no field value");
  return field_.element(*x_);
}

std::string ProjPoint::to_string() const { return x_ ? value().to_string() : "inf"; }

ProjPoint act(const GroupElement& g, const ProjPoint& x) {
  if (!(g.field() == x.field())) throw Error(ErrorKind::MixedContexts, "point and element over different fields");
  if (x.is_infinity()) {
    if (g.gamma().is_zero()) return ProjPoint::infinity(g.field());
    return ProjPoint::finite(g.alpha() / g.gamma());
  }
  FieldElement v = x.value();
  FieldElement num = g.alpha() * v + g.beta();
  FieldElement den = g.gamma() * v + g.delta();
  if (den.is_zero()) return ProjPoint::infinity(g.field());
  return ProjPoint::finite(num / den);
}

std::uint64_t group_order(Flavor flavor, const Field& f) {
  require_odd(flavor, f);
  const std::uint64_t q = f.q();
  switch (flavor) {
    case Flavor::GL: return (q * q - 1) * (q * q - q);
    case Flavor::SL:
    case Flavor::PGL: return (q + 1) * q * (q - 1);
    case Flavor::PSL: return (q + 1) * q * (q - 1) / 2;
  }
  return 0;
}

std::vector<GroupElement> enumerate(Flavor flavor, const Field& f) {
  const std::uint64_t expected = group_order(flavor, f);
  if (expected > GroupElement::kMaxEnumeration) {
    throw Error(ErrorKind::GroupTooLarge, to_string(flavor) + "(2;" + std::to_string(f.q()) +
                                              ") has " + std::to_string(expected) + " elements");
  }
  std::vector<GroupElement> out;
  out.reserve(expected);
  const std::uint32_t q = f.q();
  const auto elems = f.elements();
  for (std::uint32_t a = 0; a < q; ++a) {
    if (flavor == Flavor::PGL && a > 1) break;
    for (std::uint32_t b = 0; b < q; ++b) {
      if (flavor == Flavor::PGL && a == 0 && b > 1) break;
      for (std::uint32_t c = 0; c < q; ++c) {
        if (flavor == Flavor::PGL && a == 0 && b == 0 && c > 1) break;
        for (std::uint32_t d = 0; d < q; ++d) {
          FieldElement det = elems[a] * elems[d] - elems[b] * elems[c];
          if (det.is_zero()) continue;
          if ((flavor == Flavor::SL || flavor == Flavor::PSL) && !det.is_one()) continue;
          GroupElement g = GroupElement::make(flavor, elems[a], elems[b], elems[c], elems[d]);
          // Keep only tuples that already are their own canonical form.
          if (g.entries() == std::array<std::uint32_t, 4>{a, b, c, d}) out.push_back(g);
        }
      }
    }
  }
  return out;
}

bool SubgroupDesc::contains(const GroupElement& g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

namespace {

void check_points(const std::vector<ProjPoint>& points) {
  if (points.size() > 3) throw Error(ErrorKind::InvalidArgument, "at most three points may be fixed");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) throw Error(ErrorKind::DuplicatePoints, "stabilizer points must be distinct");
}

}  // namespace

SubgroupDesc stabilizer(const std::vector<GroupElement>& group, const std::vector<ProjPoint>& points) {
  if (group.empty()) throw Error(ErrorKind::InvalidArgument, "empty group");
  check_points(points);
  SubgroupDesc out{SubgroupDesc::Kind::PointStabilizer, points, group.front().flavor(),
                   group.front().field(), {}};
  if (points.size() == 1 && points[0].is_infinity()) out.kind = SubgroupDesc::Kind::Borel;
  for (const auto& g : group) {
    bool fixes = std::all_of(points.begin(), points.end(), [&](const ProjPoint& x) { return act(g, x) == x; });
    if (fixes) out.elements.push_back(g);
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

SubgroupDesc stabilizer(Flavor flavor, const Field& f, const std::vector<ProjPoint>& points) {
  check_points(points);
  return stabilizer(enumerate(flavor, f), points);
}

SubgroupDesc borel(Flavor flavor, const Field& f) {
  return stabilizer(flavor, f, {ProjPoint::infinity(f)});
}

SubgroupDesc explicit_subgroup(std::vector<GroupElement> elements) {
  if (elements.empty()) throw Error(ErrorKind::InvalidArgument, "empty subgroup");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  auto in = [&](const GroupElement& g) { return std::binary_search(elements.begin(), elements.end(), g); };
  for (const auto& g : elements) {
    if (!in(g.inverse())) throw Error(ErrorKind::InvalidArgument, "element list not closed under inverse");
    for (const auto& h : elements)
      if (!in(g * h)) throw Error(ErrorKind::InvalidArgument, "element list not closed under products");
  }
  Flavor flavor = elements.front().flavor();
  Field f = elements.front().field();
  return SubgroupDesc{SubgroupDesc::Kind::ExplicitList, {}, flavor, f, std::move(elements)};
}

BorelCoords borel_decompose(const GroupElement& g) {
  if (!g.is_upper_triangular()) {
    throw Error(ErrorKind::NotUpperTriangular, g.to_string() + " is not upper triangular");
  }
  FieldElement alpha = g.alpha();
  FieldElement beta = g.beta();
  FieldElement delta = g.delta();
  switch (g.flavor()) {
    case Flavor::GL:
    case Flavor::PGL:
      return {{alpha / delta, beta / delta}, alpha / delta, g.flavor()};
    case Flavor::SL:
    case Flavor::PSL:
      // (alpha, alpha^{-1} t / 0, alpha^{-1}) with translation part t = alpha * beta;
      // both alpha^2 and alpha * beta are invariant under M -> -M.
      return {{alpha * alpha, alpha * beta}, alpha, g.flavor()};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown flavor");
}

GroupElement borel_compose(Flavor flavor, const AffineElement& x, std::optional<FieldElement> root) {
  const Field& f = x.a.field();
  if (flavor == Flavor::PGL || flavor == Flavor::GL) {
    return GroupElement::make(flavor, x.a, x.b, f.zero(), f.one());
  }
  FieldElement alpha = f.one();
  if (root) {
    alpha = *root;
    if (!(alpha * alpha == x.a)) throw Error(ErrorKind::InvalidArgument, "root does not square to the multiplier");
  } else {
    if (quadratic_char(x.a) != 1) {
      throw Error(ErrorKind::InvalidArgument, "multiplier of an SL/PSL Borel element must be a square");
    }
    alpha = f.generator().pow(x.a.log() / 2);
  }
  FieldElement ai = alpha.inverse();
  return GroupElement::make(flavor, alpha, ai * x.b, f.zero(), ai);
}

std::array<GroupElement, 2> borel_generators(Flavor flavor, const Field& f) {
  GroupElement t = GroupElement::make(flavor, f.one(), f.one(), f.zero(), f.one());
  FieldElement g = f.generator();
  if (flavor == Flavor::PGL || flavor == Flavor::GL) {
    return {t, GroupElement::make(flavor, g, f.zero(), f.zero(), f.one())};
  }
  return {t, GroupElement::make(flavor, g, f.zero(), f.zero(), g.inverse())};
}

}  // namespace bhsp
