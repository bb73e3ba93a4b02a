#include "bhsp/affine_rep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <numbers>
#include <random>

#include "bhsp/error.hpp"

namespace bhsp {

namespace {

void require_odd(const Field& f) {
  if (f.p() == 2) throw Error(ErrorKind::EvenCharacteristic, "affine representations need odd q");
}

}  // namespace

RepMatrix rho(const AffineElement& g) {
  const Field& f = g.a.field();
  require_odd(f);
  if (g.a.is_zero()) throw Error(ErrorKind::InvalidElement, "affine multiplier must be nonzero");
  const std::uint32_t dim = f.q() - 1;
  const std::uint32_t shift = g.a.log();
  const auto units = f.units_by_log();
  RepMatrix m = RepMatrix::Zero(dim, dim);
  for (std::uint32_t r = 0; r < dim; ++r) {
    m(r, (r + shift) % dim) = root_of_unity(f.p(), dot(g.b, units[r]));
  }
  return m;
}

std::complex<double> LinearCharacter::operator()(const AffineElement& g) const {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(t_) * static_cast<double>(g.a.log()) /
                       static_cast<double>(field_.q() - 1);
  return {std::cos(angle), std::sin(angle)};
}

std::vector<LinearCharacter> characters(const Field& f) {
  require_odd(f);
  std::vector<LinearCharacter> out;
  for (std::uint32_t t = 0; t + 1 < f.q(); ++t) out.emplace_back(f, t);
  return out;
}

std::vector<ConjugacyClass> conjugacy_classes(const Field& f) {
  require_odd(f);
  const auto group = enumerate_affine(f);
  std::map<AffineElement, std::size_t> class_of;
  std::vector<std::vector<AffineElement>> classes;
  for (const auto& x : group) {
    if (class_of.count(x)) continue;
    std::vector<AffineElement> cls;
    for (const auto& h : group) {
      AffineElement y = h.compose(x).compose(h.inverse());
      if (class_of.emplace(y, classes.size()).second) cls.push_back(y);
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  std::vector<ConjugacyClass> out;
  for (auto& cls : classes) {
    FieldElement a = cls.front().a;
    ConjugacyClass::Kind kind = ConjugacyClass::Kind::Multiplier;
    if (a.is_one()) {
      kind = cls.size() == 1 && cls.front().b.is_zero() ? ConjugacyClass::Kind::Identity
                                                         : ConjugacyClass::Kind::Translations;
    }
    out.push_back({kind, a, std::move(cls)});
  }
  std::sort(out.begin(), out.end(), [](const ConjugacyClass& x, const ConjugacyClass& y) {
    if (x.multiplier != y.multiplier) return x.multiplier < y.multiplier;
    return x.kind < y.kind;
  });
  return out;
}

std::vector<AffineElement> point_stabilizer(const FieldElement& b) {
  const Field& f = b.field();
  std::vector<AffineElement> out;
  for (std::uint32_t i = 1; i < f.q(); ++i) {
    FieldElement a = f.element(i);
    out.push_back({a, (f.one() - a) * b});
  }
  return out;
}

std::vector<AffineElement> squares_point_stabilizer(const FieldElement& a, const FieldElement& b) {
  const Field& f = b.field();
  require_odd(f);
  const std::uint32_t half = (f.q() - 1) / 2;
  if (a.is_zero() || quadratic_char(a) != 1 || std::gcd(a.log() / 2, half) != 1) {
    throw Error(ErrorKind::NotSquareGenerator, a.to_string() + " does not generate the nonzero squares");
  }
  std::vector<AffineElement> out;
  FieldElement at = f.one();
  for (std::uint32_t t = 0; t < half; ++t) {
    out.push_back({at, (f.one() - at) * b});
    at *= a;
  }
  std::sort(out.begin(), out.end());
  return out;
}

RepMatrix averaged_projector(std::span<const AffineElement> subgroup) {
  if (subgroup.empty()) throw Error(ErrorKind::InvalidArgument, "empty subgroup");
  RepMatrix acc = rho(subgroup.front());
  for (std::size_t i = 1; i < subgroup.size(); ++i) acc += rho(subgroup[i]);
  return acc / static_cast<double>(subgroup.size());
}

RepMatrix psl_row_structure(const FieldElement& a, const FieldElement& b) {
  const Field& f = b.field();
  // Validates a as a generator of the squares.
  squares_point_stabilizer(a, b);
  const std::uint32_t dim = f.q() - 1;
  const auto units = f.units_by_log();
  const double scale = std::numbers::sqrt2 / static_cast<double>(dim);
  RepMatrix m(dim, dim);
  for (std::uint32_t r = 0; r < dim; ++r) {
    for (std::uint32_t c = 0; c < dim; ++c) {
      const double select = (1.0 + quadratic_char(units[r] * units[c])) / 2.0;
      m(r, c) = scale * select * root_of_unity(f.p(), dot(b, units[r] - units[c]));
    }
  }
  return m;
}

RepCheckReport rep_check(const Field& f) {
  require_odd(f);
  RepCheckReport r;
  r.q = f.q();
  const auto group = enumerate_affine(f);
  r.group_order = group.size();
  std::vector<RepMatrix> mats;
  mats.reserve(group.size());
  for (const auto& g : group) mats.push_back(rho(g));
  std::map<AffineElement, std::size_t> pos;
  for (std::size_t i = 0; i < group.size(); ++i) pos[group[i]] = i;

  const std::size_t dim = f.q() - 1;
  const RepMatrix id = RepMatrix::Identity(dim, dim);
  r.identity_residual = (mats[pos.at(AffineElement::identity(f))] - id).cwiseAbs().maxCoeff();

  auto hom = [&](std::size_t i, std::size_t j) {
    const std::size_t k = pos.at(group[i].compose(group[j]));
    r.homomorphism_residual =
        std::max(r.homomorphism_residual, (mats[i] * mats[j] - mats[k]).cwiseAbs().maxCoeff());
  };
  if (group.size() <= 400) {
    for (std::size_t i = 0; i < group.size(); ++i)
      for (std::size_t j = 0; j < group.size(); ++j) hom(i, j);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
    for (int t = 0; t < 2000; ++t) hom(pick(rng), pick(rng));
  }

  for (const auto& m : mats) {
    r.unitarity_residual = std::max(r.unitarity_residual, (m * m.adjoint() - id).cwiseAbs().maxCoeff());
    r.character_norm += std::norm(m.trace());
  }

  const auto units = f.units_by_log();
  for (const auto& b : f.elements()) {
    const auto h = point_stabilizer(b);
    const RepMatrix avg = averaged_projector(h);
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t k = 0; k < dim; ++k) {
        const auto expected = root_of_unity(f.p(), dot(b, units[j] - units[k])) / static_cast<double>(dim);
        r.projector_residual = std::max(r.projector_residual, std::abs(avg(j, k) - expected));
      }
    }
  }

  // Character table: q-1 linear characters plus tr rho, evaluated on classes.
  const auto classes = conjugacy_classes(f);
  r.class_count = classes.size();
  const auto chars = characters(f);
  std::vector<std::vector<std::complex<double>>> table;
  for (const auto& chi : chars) {
    std::vector<std::complex<double>> row;
    for (const auto& c : classes) row.push_back(chi(c.members.front()));
    table.push_back(std::move(row));
  }
  {
    std::vector<std::complex<double>> row;
    for (const auto& c : classes) row.push_back(mats[pos.at(c.members.front())].trace());
    table.push_back(std::move(row));
  }
  const double order = static_cast<double>(group.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table.size(); ++j) {
      std::complex<double> acc = 0.0;
      for (std::size_t c = 0; c < classes.size(); ++c) {
        acc += static_cast<double>(classes[c].members.size()) * table[i][c] * std::conj(table[j][c]);
      }
      const double expected = i == j ? order : 0.0;
      r.class_orthogonality_residual = std::max(r.class_orthogonality_residual, std::abs(acc - expected) / order);
    }
  }
  return r;
}

}  // namespace bhsp
