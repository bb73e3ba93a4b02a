#pragma once

// 2x2 matrix groups GL/SL/PGL/PSL(2;q) acting on the projective line.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bhsp/affine_element.hpp"
#include "bhsp/field.hpp"

namespace bhsp {

enum class Flavor { GL, SL, PGL, PSL };

std::string to_string(Flavor f);
Flavor parse_flavor(const std::string& s);
bool is_projective(Flavor f);

// A group element in canonical form:
//   GL, SL  - entries as given;
//   PGL     - scaled so the first nonzero of (alpha, beta, gamma, delta) is 1;
//   PSL     - the lexicographically smaller of the two det-1 representatives +-M.
class GroupElement {
 public:
  static constexpr std::uint64_t kMaxEnumeration = 1'000'000;

  static GroupElement make(Flavor flavor, const FieldElement& alpha, const FieldElement& beta,
                           const FieldElement& gamma, const FieldElement& delta);
  static GroupElement identity(Flavor flavor, const Field& f);
  // w = (0 -1 / 1 0).
  static GroupElement weyl(Flavor flavor, const Field& f);

  Flavor flavor() const { return flavor_; }
  const Field& field() const { return field_; }
  const std::array<std::uint32_t, 4>& entries() const { return e_; }

  FieldElement alpha() const { return field_.element(e_[0]); }
  FieldElement beta() const { return field_.element(e_[1]); }
  FieldElement gamma() const { return field_.element(e_[2]); }
  FieldElement delta() const { return field_.element(e_[3]); }
  FieldElement det() const { return alpha() * delta() - beta() * gamma(); }
  bool is_upper_triangular() const { return e_[2] == 0; }

  GroupElement inverse() const;
  friend GroupElement operator*(const GroupElement& g, const GroupElement& h);

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.flavor_ == b.flavor_ && a.field_ == b.field_ && a.e_ == b.e_;
  }
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
    return a.e_ <=> b.e_;
  }

  std::string to_string() const;

 private:
  GroupElement(Field f, Flavor flavor, std::array<std::uint32_t, 4> e)
      : field_(std::move(f)), flavor_(flavor), e_(e) {}

  Field field_;
  Flavor flavor_;
  std::array<std::uint32_t, 4> e_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept {
    const auto& e = g.entries();
    std::size_t h = 1469598103934665603ULL;
    for (auto v : e) h = (h ^ v) * 1099511628211ULL;
    return h;
  }
};

// h g h^{-1}
GroupElement conjugate(const GroupElement& g, const GroupElement& h);

// A point of PF_q = F_q u {inf}. Ordinals put infinity first (0), then the
// field element with index i at ordinal i + 1.
class ProjPoint {
 public:
  static ProjPoint infinity(const Field& f) { return ProjPoint(f, std::nullopt); }
  static ProjPoint finite(const FieldElement& x) { return ProjPoint(x.field(), x.index()); }
  static ProjPoint from_ordinal(const Field& f, std::uint32_t ordinal);
  static std::vector<ProjPoint> all(const Field& f);

  bool is_infinity() const { return !x_.has_value(); }
  FieldElement value() const;
  std::uint32_t ordinal() const { return x_ ? *x_ + 1 : 0; }
  const Field& field() const { return field_; }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    return a.field_ == b.field_ && a.x_ == b.x_;
  }
  friend std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b) {
    return a.ordinal() <=> b.ordinal();
  }

  std::string to_string() const;

 private:
  ProjPoint(Field f, std::optional<std::uint32_t> x) : field_(std::move(f)), x_(x) {}
  Field field_;
  std::optional<std::uint32_t> x_;
};

// Fractional linear action x -> (alpha x + beta) / (gamma x + delta).
ProjPoint act(const GroupElement& g, const ProjPoint& x);

std::uint64_t group_order(Flavor flavor, const Field& f);

// Every canonical element exactly once, sorted by canonical entries.
std::vector<GroupElement> enumerate(Flavor flavor, const Field& f);

struct SubgroupDesc {
  enum class Kind { PointStabilizer, Borel, ExplicitList };

  Kind kind = Kind::ExplicitList;
  std::vector<ProjPoint> points;
  Flavor flavor = Flavor::PGL;
  Field field;
  std::vector<GroupElement> elements;  // sorted

  std::size_t size() const { return elements.size(); }
  bool contains(const GroupElement& g) const;
};

// Pointwise stabilizer of up to three distinct points.
SubgroupDesc stabilizer(Flavor flavor, const Field& f, const std::vector<ProjPoint>& points);
// Same, filtered from an already enumerated group.
SubgroupDesc stabilizer(const std::vector<GroupElement>& group, const std::vector<ProjPoint>& points);
// G_inf, the upper-triangular subgroup.
SubgroupDesc borel(Flavor flavor, const Field& f);
// Wraps an element list after checking closure under products and inverses.
SubgroupDesc explicit_subgroup(std::vector<GroupElement> elements);

// Coordinates of a Borel element as an affine map on PF_q - {inf} = F_q.
// For SL/PSL the multiplier is alpha^2, and root keeps alpha itself so SL
// elements can be told apart from their negatives.
struct BorelCoords {
  AffineElement affine;
  FieldElement root;
  Flavor flavor;
};

BorelCoords borel_decompose(const GroupElement& g);
// Inverse of borel_decompose on the chosen representative.
GroupElement borel_compose(Flavor flavor, const AffineElement& x, std::optional<FieldElement> root = {});

// Two elements generating the Borel subgroup: a translation and a multiplier.
std::array<GroupElement, 2> borel_generators(Flavor flavor, const Field& f);

}  // namespace bhsp
