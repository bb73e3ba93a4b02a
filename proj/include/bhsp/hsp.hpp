#pragma once

// Hidden-subgroup simulation for conjugates of the Borel subgroup.
//
// The pipeline: a hiding oracle for a point stabilizer G_s is restricted to
// B = G_inf, where it hides the two-point stabilizer G_{s,inf}. The coset
// state of that restriction is Fourier-sampled over AGL(1;q): a weak
// measurement picks an irrep, a column of rho is measured, and the row is
// Fourier transformed over (F_q, +) = Z_p^n to give a frequency l. The peak
// sits at l = b where b is the field element fixed by the hidden subgroup,
// which is s itself.
//
// Fourier convention: the amplitude of (sigma, i, j) is
// sqrt(d_sigma / N) sum_g psi(g) sigma(g^{-1})_{ij}. For left cosets cH this
// puts the coset representative on the column index, leaving the rows as in
// pi_H.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bhsp/affine_rep.hpp"
#include "bhsp/pgroup.hpp"

namespace bhsp {

using Color = std::uint64_t;

// f: G -> colors, constant on left cosets gH and distinct across them.
class HidingOracle {
 public:
  // Colors are the position of the minimal canonical element of each coset,
  // optionally relabeled by a seeded permutation.
  static HidingOracle for_subgroup(std::vector<GroupElement> domain, const std::vector<GroupElement>& hidden,
                                   std::optional<std::uint64_t> label_seed = {});
  // Wraps an arbitrary coloring without checking the promise.
  static HidingOracle from_coloring(std::vector<GroupElement> domain, std::vector<Color> colors);

  Flavor flavor() const { return domain_.front().flavor(); }
  const Field& field() const { return domain_.front().field(); }
  const std::vector<GroupElement>& domain() const { return domain_; }
  const std::vector<GroupElement>& hidden() const { return hidden_; }
  std::size_t color_count() const;

  // A classical query; counted.
  Color operator()(const GroupElement& g) const;
  std::size_t queries() const { return queries_; }
  void reset_queries() const { queries_ = 0; }

  // Uncounted access used when preparing coset states.
  Color color_at(std::size_t i) const { return colors_[i]; }
  std::optional<std::size_t> position(const GroupElement& g) const;

  // True iff the color classes are exactly the left cosets of the subgroup
  // {g : f(g) = f(e)}.
  bool verify_promise() const;

 private:
  HidingOracle(std::vector<GroupElement> domain, std::vector<Color> colors);

  std::vector<GroupElement> domain_;  // sorted
  std::vector<Color> colors_;
  std::vector<GroupElement> hidden_;  // the color class of the identity
  mutable std::size_t queries_ = 0;
};

// Oracle on the whole group hiding G_s.
HidingOracle make_stabilizer_oracle(Flavor flavor, const Field& f, const ProjPoint& s,
                                    std::optional<std::uint64_t> label_seed = {});

// Restriction to the subgroup B; throws PromiseViolation if the colors on B
// are not the cosets of a subgroup.
HidingOracle restrict_oracle(const HidingOracle& f, const SubgroupDesc& b);

struct EqualPointTest {
  bool hidden_point_is_infinity = false;
  std::size_t queries = 0;
};

// Checks f(1) = f(g) on the two generators of B.
EqualPointTest classical_equal_point_test(const HidingOracle& f, Flavor flavor);

// Coset state of an oracle whose domain is a Borel subgroup. `native` lives in
// the group algebra of the domain; `embedded` is its image in C[AGL(1;q)].
struct CosetState {
  Flavor flavor;
  Field field;
  std::vector<GroupElement> domain;
  Eigen::MatrixXcd native;
  std::vector<AffineElement> affine_basis;  // enumerate_affine order
  Eigen::MatrixXcd embedded;
};

CosetState build_coset_state(const HidingOracle& restricted);

struct IrrepProbability {
  std::string label;  // "trivial", "sign", "char:<t>", "rho"
  std::uint32_t dimension = 1;
  double probability = 0.0;
};

// Probability of each AGL(1;q) irrep under the weak measurement, obtained by
// projecting the embedded state onto each isotypic block.
std::vector<IrrepProbability> weak_measurement_distribution(const CosetState& state);

// Probability map over frequencies l in Z_p^n, indexed by frequency index.
struct Distribution {
  Distribution(Field f, std::vector<double> probs) : field(std::move(f)), p(std::move(probs)) {}

  Field field;
  std::vector<double> p;

  double at(const Frequency& l) const { return p.at(l.index()); }
  double total() const;
  double min() const;
  std::uint32_t argmax() const;
};

// Everything needed to sample the measurement: irrep probabilities, the
// column distribution inside rho, and the row-Fourier distribution per column.
struct MeasurementModel {
  std::vector<IrrepProbability> irreps;
  double rho_probability = 0.0;
  std::vector<double> column_probability;  // by column position (generator power)
  std::vector<Distribution> per_column;     // conditional on rho and column
  Distribution marginal;                    // conditional on rho, columns summed out
};

MeasurementModel measurement_model(const CosetState& state);

// Row-vector route: builds the post-measurement row for column k from its
// closed-form expression, pads the zero component and applies the character
// transform. SL shares the PSL row.
Distribution conditional_row_fourier_distribution(Flavor flavor, const FieldElement& b, const FieldElement& column);

// Case formulas: PGL peak 1 - 1/q, off-peak 1/(q(q-1)); PSL
// |q [l=b] - 1 + branch eta(b-l) G(eta,chi_1)|^2 / (2q(q-1)).
Distribution closed_form_distribution(Flavor flavor, const FieldElement& b, int branch);

// The PSL off-peak values with the denominator 4q(q-1), and the total mass they
// give together with the peak (q-1)/(2q).
struct PrintedFormCheck {
  double total_mass = 0.0;
  bool normalized = false;
  double corrected_total_mass = 0.0;
};
PrintedFormCheck printed_psl_form_check(const FieldElement& b, int branch);

// Independent route: literal coset state from the restricted oracle, explicit
// irreps, simulated measurements. `column` conditions on a measured column.
Distribution brute_force_distribution_oracle(Flavor flavor, const FieldElement& b,
                                             std::optional<FieldElement> column = {},
                                             std::optional<std::uint64_t> label_seed = {});

// The full measurement model behind brute_force_distribution_oracle.
MeasurementModel brute_force_model(Flavor flavor, const FieldElement& b, std::optional<std::uint64_t> label_seed = {});

struct RecoveryResult {
  ProjPoint recovered;
  bool classical = false;
  std::size_t classical_queries = 0;
  std::size_t samples = 0;  // frequency samples, i.e. shots that landed in rho
  std::size_t shots = 0;    // all measurement shots, including trivial and sign
  std::vector<std::uint64_t> histogram;  // by frequency index
  double confidence = 0.0;
};

// Smallest m whose union/Chernoff bound on a wrong histogram mode is < 1e-6.
std::size_t default_sample_count(const MeasurementModel& model);

RecoveryResult recover_hidden_point(const HidingOracle& f, std::optional<std::size_t> samples, std::uint64_t seed);

// Uniform double in [0,1) from the top 53 bits of a 64-bit draw.
double unit_uniform(std::uint64_t bits);

}  // namespace bhsp
