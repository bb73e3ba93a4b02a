#pragma once

// k-transitivity, the "almost k-transitive" fraction, and stabilizer-index
// checks for finite permutation actions.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bhsp/pgroup.hpp"

namespace bhsp {

// Exact non-negative rational, always reduced.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction make(std::int64_t num, std::int64_t den);
  std::string to_string() const;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend bool operator<(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(const Fraction& a, const Fraction& b) { return !(b < a); }
};

using Permutation = std::vector<std::uint32_t>;

// A group given by its image in Sym(Omega), one permutation per group element
// (non-faithful actions keep their repeats).
class ActionDescriptor {
 public:
  ActionDescriptor(std::size_t degree, std::vector<Permutation> perms);

  std::size_t degree() const { return degree_; }
  std::size_t group_order() const { return perms_.size(); }
  const std::vector<Permutation>& perms() const { return perms_; }

 private:
  std::size_t degree_;
  std::vector<Permutation> perms_;
};

// Action of an enumerated 2x2 matrix group on PF_q, points by ordinal.
ActionDescriptor projective_action(const std::vector<GroupElement>& group);

struct TransitivityReport {
  int k = 0;
  Fraction b;                  // minimum fraction over source tuples
  Fraction fraction_reached;   // maximum fraction over source tuples
  bool is_k_transitive = false;
  bool uniform = false;        // every source tuple reaches the same fraction
  std::uint64_t total_tuples = 0;
  std::size_t orbit_count = 0;
  std::vector<std::uint32_t> witness;  // a source tuple attaining b
};

// Reachable ordered k-tuples of distinct points from each source tuple.
// Each orbit is expanded once from its first tuple.
TransitivityReport transitivity_fraction(const ActionDescriptor& action, int k);

// How many group elements send `source` to each reachable tuple.
std::map<std::vector<std::uint32_t>, std::uint64_t> reach_counts(const ActionDescriptor& action,
                                                                 const std::vector<std::uint32_t>& source);

std::uint64_t pointwise_stabilizer_order(const ActionDescriptor& action, const std::vector<std::uint32_t>& points);

struct IndexFormulaReport {
  bool k_transitive = false;
  bool asserted = false;  // formula only asserted for k-transitive actions
  bool holds = false;
  std::uint64_t group_order = 0;
  std::uint64_t stabilizer_order = 0;
  std::uint64_t index = 0;           // |G| / |G_S| (exact, when it divides)
  std::uint64_t expected_index = 0;  // s! / (s-j)!
};

IndexFormulaReport verify_index_formula(const ActionDescriptor& action, const std::vector<std::uint32_t>& points,
                                        int k);

struct DistinctnessReport {
  bool precondition_met = false;
  Fraction b;
  bool distinct = false;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> witness;
};

// For all beta != gamma (both != alpha), G_{alpha,beta} != G_{alpha,gamma}.
// Only asserted when the action is 2-transitive with b >= 1/(s-2) on triples.
DistinctnessReport verify_distinctness(const ActionDescriptor& action, std::uint32_t alpha);

}  // namespace bhsp
