#pragma once

// Representations of the affine group AGL(1;q): the q-1 linear characters and
// the (q-1)-dimensional irreducible representation rho.
//
// Rows and columns of rho are indexed by F_q^* in generator-power order, so
// index r stands for g^r and the nonzero squares are exactly the even indices.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bhsp/affine_element.hpp"
#include "bhsp/field.hpp"

namespace bhsp {

using RepMatrix = Eigen::MatrixXcd;

// rho((a,b))_{j,k} = omega_p^{Tr(b j)} if k = a j, else 0.
RepMatrix rho(const AffineElement& g);

// chi_t((a,b)) = exp(2 pi i t log(a) / (q-1)).
class LinearCharacter {
 public:
  LinearCharacter(Field f, std::uint32_t t) : field_(std::move(f)), t_(t) {}
  std::uint32_t t() const { return t_; }
  std::complex<double> operator()(const AffineElement& g) const;
  // The character that is -1 on non-square multipliers.
  bool is_sign() const { return 2 * t_ == field_.q() - 1; }

 private:
  Field field_;
  std::uint32_t t_;
};

std::vector<LinearCharacter> characters(const Field& f);

struct ConjugacyClass {
  enum class Kind { Identity, Translations, Multiplier };
  Kind kind;
  FieldElement multiplier;  // a, common to every member
  std::vector<AffineElement> members;
};

// Classes of AGL(1;q) by brute-force conjugation, ordered by multiplier index
// with the identity ahead of the translations.
std::vector<ConjugacyClass> conjugacy_classes(const Field& f);

// H^b = (1,b) H (1,-b) with H = {(a,0)}: every element fixing b.
std::vector<AffineElement> point_stabilizer(const FieldElement& b);
// H_a^b = {(a^t, (1 - a^t) b)} for a generator a of the nonzero squares.
std::vector<AffineElement> squares_point_stabilizer(const FieldElement& a, const FieldElement& b);

// (1/|H|) sum over h in H of rho(h).
RepMatrix averaged_projector(std::span<const AffineElement> subgroup);

// (sqrt(2)/(q-1)) omega_p^{Tr(b (j-k))} (1 + eta(j k)) / 2.
RepMatrix psl_row_structure(const FieldElement& a, const FieldElement& b);

struct RepCheckReport {
  std::uint32_t q = 0;
  double homomorphism_residual = 0.0;
  double unitarity_residual = 0.0;
  double identity_residual = 0.0;
  double character_norm = 0.0;  // sum over the group of |tr rho(g)|^2
  std::uint64_t group_order = 0;
  double projector_residual = 0.0;  // max over b of |average - closed form|
  double class_orthogonality_residual = 0.0;
  std::size_t class_count = 0;
};

// Exhaustive checks on AGL(1;q): homomorphism over all pairs, unitarity,
// character norm, projector formula for every b, character table rows.
RepCheckReport rep_check(const Field& f);

}  // namespace bhsp
