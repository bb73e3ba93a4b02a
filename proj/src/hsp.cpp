#include "bhsp/hsp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <unordered_map>

#include "bhsp/error.hpp"

namespace bhsp {

HidingOracle::HidingOracle(std::vector<GroupElement> domain, std::vector<Color> colors)
    : domain_(std::move(domain)), colors_(std::move(colors)) {
  if (domain_.empty()) throw Error(ErrorKind::InvalidArgument, "oracle domain is empty");
  if (domain_.size() != colors_.size()) throw Error(ErrorKind::InvalidArgument, "one color per element required");
  std::vector<std::size_t> order(domain_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return domain_[x] < domain_[y]; });
  std::vector<GroupElement> d;
  std::vector<Color> c;
  d.reserve(order.size());
  c.reserve(order.size());
  for (auto i : order) {
    d.push_back(domain_[i]);
    c.push_back(colors_[i]);
  }
  domain_ = std::move(d);
  colors_ = std::move(c);
  auto e = position(GroupElement::identity(flavor(), field()));
  if (!e) throw Error(ErrorKind::InvalidArgument, "oracle domain must contain the identity");
  for (std::size_t i = 0; i < domain_.size(); ++i)
    if (colors_[i] == colors_[*e]) hidden_.push_back(domain_[i]);
}

HidingOracle HidingOracle::from_coloring(std::vector<GroupElement> domain, std::vector<Color> colors) {
  return HidingOracle(std::move(domain), std::move(colors));
}

HidingOracle HidingOracle::for_subgroup(std::vector<GroupElement> domain, const std::vector<GroupElement>& hidden,
                                        std::optional<std::uint64_t> label_seed) {
  std::sort(domain.begin(), domain.end());
  constexpr Color kUnset = std::numeric_limits<Color>::max();
  std::vector<Color> colors(domain.size(), kUnset);
  auto pos = [&](const GroupElement& g) -> std::size_t {
    auto it = std::lower_bound(domain.begin(), domain.end(), g);
    if (it == domain.end() || !(*it == g)) {
      throw Error(ErrorKind::InvalidArgument, "hidden subgroup is not contained in the domain");
    }
    return static_cast<std::size_t>(it - domain.begin());
  };
  // Walking the sorted domain, the first unlabeled element of each coset is
  // its minimum.
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (colors[i] != kUnset) continue;
    for (const auto& h : hidden) colors[pos(domain[i] * h)] = i;
  }
  if (label_seed) {
    std::vector<Color> labels(colors.begin(), colors.end());
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::vector<Color> shuffled = labels;
    std::mt19937_64 rng(*label_seed);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (auto& c : colors) {
      auto k = std::lower_bound(labels.begin(), labels.end(), c) - labels.begin();
      c = shuffled[static_cast<std::size_t>(k)];
    }
  }
  HidingOracle out(std::move(domain), std::move(colors));
  if (!out.verify_promise()) throw Error(ErrorKind::PromiseViolation, "coloring is not a coset coloring");
  return out;
}

std::size_t HidingOracle::color_count() const {
  return std::set<Color>(colors_.begin(), colors_.end()).size();
}

std::optional<std::size_t> HidingOracle::position(const GroupElement& g) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), g);
  if (it == domain_.end() || !(*it == g)) return std::nullopt;
  return static_cast<std::size_t>(it - domain_.begin());
}

Color HidingOracle::operator()(const GroupElement& g) const {
  auto i = position(g);
  if (!i) throw Error(ErrorKind::InvalidArgument, g.to_string() + " is outside the oracle domain");
  ++queries_;
  return colors_[*i];
}

bool HidingOracle::verify_promise() const {
  std::unordered_map<Color, std::size_t> class_size;
  for (auto c : colors_) ++class_size[c];
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (class_size[colors_[i]] != hidden_.size()) return false;
    for (const auto& h : hidden_) {
      auto j = position(domain_[i] * h);
      if (!j || colors_[*j] != colors_[i]) return false;
    }
  }
  return true;
}

HidingOracle make_stabilizer_oracle(Flavor flavor, const Field& f, const ProjPoint& s,
                                    std::optional<std::uint64_t> label_seed) {
  auto group = enumerate(flavor, f);
  auto hidden = stabilizer(group, {s});
  return HidingOracle::for_subgroup(std::move(group), hidden.elements, label_seed);
}

HidingOracle restrict_oracle(const HidingOracle& f, const SubgroupDesc& b) {
  std::vector<Color> colors;
  colors.reserve(b.elements.size());
  for (const auto& g : b.elements) {
    auto i = f.position(g);
    if (!i) throw Error(ErrorKind::InvalidArgument, "restriction subgroup is not inside the oracle domain");
    colors.push_back(f.color_at(*i));
  }
  auto out = HidingOracle::from_coloring(b.elements, std::move(colors));
  if (!out.verify_promise()) {
    throw Error(ErrorKind::PromiseViolation, "oracle is not constant-and-distinct on cosets within the subgroup");
  }
  return out;
}

EqualPointTest classical_equal_point_test(const HidingOracle& f, Flavor flavor) {
  const std::size_t before = f.queries();
  const Color e = f(GroupElement::identity(flavor, f.field()));
  bool equal = true;
  for (const auto& g : borel_generators(flavor, f.field())) equal = (f(g) == e) && equal;
  return {equal, f.queries() - before};
}

namespace {

std::size_t affine_position(const AffineElement& x) {
  const std::uint32_t q = x.a.field().q();
  return static_cast<std::size_t>(x.a.index() - 1) * q + x.b.index();
}

std::string irrep_label(std::uint32_t t, std::uint32_t q) {
  if (t == 0) return "trivial";
  if (2 * t == q - 1) return "sign";
  return "char:" + std::to_string(t);
}

// Pads a row indexed by F_q^* (generator-power order) with a zero at 0 and
// returns the unitary transform q^{-1/2} sum_x omega^{-l.x} v_x for every l.
std::vector<std::complex<double>> row_fourier(const Field& f, const std::vector<FieldElement>& units,
                                              const Eigen::VectorXcd& row) {
  const std::uint32_t q = f.q();
  const double norm = 1.0 / std::sqrt(static_cast<double>(q));
  std::vector<std::complex<double>> out(q);
  for (std::uint32_t l = 0; l < q; ++l) {
    FieldElement fl = f.element(l);
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < units.size(); ++i) {
      acc += std::conj(root_of_unity(f.p(), dot(fl, units[i]))) * row(static_cast<Eigen::Index>(i));
    }
    out[l] = acc * norm;
  }
  return out;
}

}  // namespace

CosetState build_coset_state(const HidingOracle& restricted) {
  const Flavor flavor = restricted.flavor();
  const Field f = restricted.field();
  if (flavor == Flavor::GL) throw Error(ErrorKind::FlavorMismatch, "coset states are built for PGL, PSL and SL");
  if (f.p() == 2) throw Error(ErrorKind::EvenCharacteristic, "coset states need odd q");
  const auto& domain = restricted.domain();
  for (const auto& g : domain) {
    if (!g.is_upper_triangular()) throw Error(ErrorKind::NotUpperTriangular, "oracle domain is not inside B");
  }

  const auto n = static_cast<Eigen::Index>(domain.size());
  std::map<Color, std::vector<std::size_t>> cosets;
  for (std::size_t i = 0; i < domain.size(); ++i) cosets[restricted.color_at(i)].push_back(i);

  Eigen::MatrixXcd native = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [color, members] : cosets) {
    const double w = 1.0 / (static_cast<double>(members.size()) * static_cast<double>(cosets.size()));
    for (auto i : members)
      for (auto j : members) native(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += w;
  }

  auto basis = enumerate_affine(f);
  const auto na = static_cast<Eigen::Index>(basis.size());
  // SL's Borel maps two-to-one onto its affine image; on states symmetric under
  // the center the 1/sqrt(2) weight makes the embedding an isometry.
  const double weight = flavor == Flavor::SL ? 1.0 / std::numbers::sqrt2 : 1.0;
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(na, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(static_cast<Eigen::Index>(affine_position(borel_decompose(domain[static_cast<std::size_t>(i)]).affine)), i) +=
        weight;
  }
  Eigen::MatrixXcd embedded = v * native * v.adjoint();
  return CosetState{flavor, f, domain, std::move(native), std::move(basis), std::move(embedded)};
}

double Distribution::total() const {
  double s = 0.0;
  for (double x : p) s += x;
  return s;
}

double Distribution::min() const { return *std::min_element(p.begin(), p.end()); }

std::uint32_t Distribution::argmax() const {
  return static_cast<std::uint32_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

MeasurementModel measurement_model(const CosetState& state) {
  const Field& f = state.field;
  const std::uint32_t q = f.q();
  const std::uint32_t d = q - 1;
  const auto& basis = state.affine_basis;
  const auto n = static_cast<Eigen::Index>(basis.size());
  const double nd = static_cast<double>(basis.size());
  const Eigen::MatrixXcd& e = state.embedded;

  std::vector<IrrepProbability> irreps;
  for (const auto& chi : characters(f)) {
    Eigen::VectorXcd u(n);
    for (Eigen::Index g = 0; g < n; ++g) {
      u(g) = std::conj(chi(basis[static_cast<std::size_t>(g)].inverse())) / std::sqrt(nd);
    }
    const double prob = (u.adjoint() * e * u)(0, 0).real();
    irreps.push_back({irrep_label(chi.t(), q), 1, prob});
  }

  // For column k, U_k holds the (i, k) Fourier vectors of rho, conjugated so
  // that <u|psi> = sqrt(d/N) sum_g psi(g) rho(g^{-1})_{ik}. Only the diagonal
  // column blocks U_k^dag E U_k are needed.
  const double scale = std::sqrt(static_cast<double>(d) / nd);
  std::vector<RepMatrix> inv_rho;
  inv_rho.reserve(basis.size());
  for (const auto& g : basis) inv_rho.push_back(rho(g.inverse()));
  std::vector<Eigen::MatrixXcd> blocks;
  double p_rho = 0.0;
  for (std::uint32_t k = 0; k < d; ++k) {
    Eigen::MatrixXcd uk = Eigen::MatrixXcd::Zero(n, d);
    for (Eigen::Index g = 0; g < n; ++g)
      for (std::uint32_t i = 0; i < d; ++i) uk(g, i) = scale * std::conj(inv_rho[static_cast<std::size_t>(g)](i, k));
    blocks.push_back(uk.adjoint() * e * uk);
    p_rho += blocks.back().trace().real();
  }
  irreps.push_back({"rho", d, p_rho});

  const auto units = f.units_by_log();
  std::vector<double> column_prob(d, 0.0);
  std::vector<Distribution> per_column;
  std::vector<double> marginal(q, 0.0);
  for (std::uint32_t k = 0; k < d; ++k) {
    const double pk = blocks[k].trace().real();
    column_prob[k] = p_rho > 0.0 ? pk / p_rho : 0.0;

    std::vector<double> probs(q, 0.0);
    if (pk > 1e-15) {
      const Eigen::MatrixXcd r = blocks[k] / pk;
      // Diagonalize the (possibly mixed) row state and transform each eigenvector.
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r);
      for (Eigen::Index t = 0; t < es.eigenvalues().size(); ++t) {
        const double lambda = es.eigenvalues()(t);
        if (std::abs(lambda) < 1e-15) continue;
        const auto amp = row_fourier(f, units, es.eigenvectors().col(t));
        for (std::uint32_t l = 0; l < q; ++l) probs[l] += lambda * std::norm(amp[l]);
      }
    }
    for (std::uint32_t l = 0; l < q; ++l) marginal[l] += column_prob[k] * probs[l];
    per_column.emplace_back(f, std::move(probs));
  }
  return MeasurementModel{std::move(irreps), p_rho, std::move(column_prob), std::move(per_column),
                          Distribution(f, std::move(marginal))};
}

std::vector<IrrepProbability> weak_measurement_distribution(const CosetState& state) {
  return measurement_model(state).irreps;
}

Distribution conditional_row_fourier_distribution(Flavor flavor, const FieldElement& b, const FieldElement& column) {
  const Field& f = b.field();
  if (column.is_zero()) throw Error(ErrorKind::InvalidArgument, "columns are indexed by nonzero field elements");
  const std::uint32_t d = f.q() - 1;
  const auto units = f.units_by_log();
  Eigen::VectorXcd row(d);
  if (flavor == Flavor::PGL) {
    for (std::uint32_t j = 0; j < d; ++j) {
      row(j) = root_of_unity(f.p(), dot(b, units[j])) / std::sqrt(static_cast<double>(d));
    }
  } else if (flavor == Flavor::PSL || flavor == Flavor::SL) {
    const int branch = quadratic_char(column);
    const double scale = std::sqrt(2.0 / static_cast<double>(d));
    for (std::uint32_t j = 0; j < d; ++j) {
      row(j) = scale * root_of_unity(f.p(), dot(b, units[j])) * (1.0 + branch * quadratic_char(units[j])) / 2.0;
    }
  } else {
    throw Error(ErrorKind::FlavorMismatch, "no Borel measurement for GL");
  }
  const auto amp = row_fourier(f, units, row);
  std::vector<double> probs(f.q());
  for (std::uint32_t l = 0; l < f.q(); ++l) probs[l] = std::norm(amp[l]);
  return Distribution(f, std::move(probs));
}

Distribution closed_form_distribution(Flavor flavor, const FieldElement& b, int branch) {
  const Field& f = b.field();
  const double q = f.q();
  std::vector<double> probs(f.q());
  if (flavor == Flavor::PGL) {
    for (std::uint32_t l = 0; l < f.q(); ++l) probs[l] = l == b.index() ? 1.0 - 1.0 / q : 1.0 / (q * (q - 1.0));
    return Distribution(f, std::move(probs));
  }
  if (flavor != Flavor::PSL && flavor != Flavor::SL) throw Error(ErrorKind::FlavorMismatch, "no Borel measurement for GL");
  if (branch != 1 && branch != -1) throw Error(ErrorKind::InvalidArgument, "branch must be +1 or -1");
  const std::complex<double> g = gauss_sum(MultChar::Quadratic, Frequency(f, 1)).value;
  for (std::uint32_t l = 0; l < f.q(); ++l) {
    const FieldElement diff = b - f.element(l);
    const double peak = l == b.index() ? q : 0.0;
    probs[l] = std::norm(peak - 1.0 + static_cast<double>(branch * quadratic_char(diff)) * g) / (2.0 * q * (q - 1.0));
  }
  return Distribution(f, std::move(probs));
}

PrintedFormCheck printed_psl_form_check(const FieldElement& b, int branch) {
  const Field& f = b.field();
  const double q = f.q();
  const std::complex<double> g = gauss_sum(MultChar::Quadratic, Frequency(f, 1)).value;
  PrintedFormCheck out;
  out.total_mass = (q - 1.0) / (2.0 * q);
  out.corrected_total_mass = out.total_mass;
  for (std::uint32_t l = 0; l < f.q(); ++l) {
    if (l == b.index()) continue;
    const double numer = std::norm(-1.0 + static_cast<double>(branch * quadratic_char(b - f.element(l))) * g);
    out.total_mass += numer / (4.0 * q * (q - 1.0));
    out.corrected_total_mass += numer / (2.0 * q * (q - 1.0));
  }
  out.normalized = std::abs(out.total_mass - 1.0) < 1e-9;
  return out;
}

MeasurementModel brute_force_model(Flavor flavor, const FieldElement& b, std::optional<std::uint64_t> label_seed) {
  const Field& f = b.field();
  auto group = enumerate(flavor, f);
  auto hidden = stabilizer(group, {ProjPoint::finite(b)});
  auto borel_sub = stabilizer(group, {ProjPoint::infinity(f)});
  auto oracle = HidingOracle::for_subgroup(std::move(group), hidden.elements, label_seed);
  auto restricted = restrict_oracle(oracle, borel_sub);
  return measurement_model(build_coset_state(restricted));
}

Distribution brute_force_distribution_oracle(Flavor flavor, const FieldElement& b, std::optional<FieldElement> column,
                                             std::optional<std::uint64_t> label_seed) {
  if (column && column->is_zero()) {
    throw Error(ErrorKind::InvalidArgument, "columns are indexed by nonzero field elements");
  }
  auto model = brute_force_model(flavor, b, label_seed);
  if (column) return model.per_column.at(column->log());
  return model.marginal;
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

namespace {

template <class Probs>
std::size_t draw(const Probs& probs, double u) {
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double pi = probs[i];
    if (pi <= 0.0) continue;
    last = i;
    acc += pi;
    if (u < acc) return i;
  }
  return last;
}

}  // namespace

std::size_t default_sample_count(const MeasurementModel& model) {
  const auto& m = model.marginal.p;
  const std::uint32_t peak = model.marginal.argmax();
  double other = 0.0;
  for (std::size_t l = 0; l < m.size(); ++l)
    if (l != peak) other = std::max(other, m[l]);
  const double pb = m[peak];
  const double pl = other;
  const double gap = std::pow(std::sqrt(pb) - std::sqrt(pl), 2.0);
  if (gap <= 0.0 || gap >= 1.0) return 1;
  const double competitors = static_cast<double>(m.size() - 1);
  const double count = std::log(1e-6 / competitors) / std::log(1.0 - gap);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(count)));
}

RecoveryResult recover_hidden_point(const HidingOracle& f, std::optional<std::size_t> samples, std::uint64_t seed) {
  const Flavor flavor = f.flavor();
  const Field field = f.field();
  RecoveryResult out{ProjPoint::infinity(field), false, 0, 0, 0, {}, 0.0};

  const auto test = classical_equal_point_test(f, flavor);
  out.classical_queries = test.queries;
  if (test.hidden_point_is_infinity) {
    out.classical = true;
    out.confidence = 1.0;
    return out;
  }

  const auto b_sub = stabilizer(f.domain(), {ProjPoint::infinity(field)});
  const auto restricted = restrict_oracle(f, b_sub);
  const auto model = measurement_model(build_coset_state(restricted));
  out.samples = samples.value_or(default_sample_count(model));
  if (out.samples == 0) throw Error(ErrorKind::InvalidArgument, "at least one sample is required");

  std::vector<double> irrep_probs;
  for (const auto& ir : model.irreps) irrep_probs.push_back(ir.probability);
  const std::size_t rho_index = irrep_probs.size() - 1;

  std::mt19937_64 rng(seed);
  out.histogram.assign(field.q(), 0);
  // Shots outside rho carry no frequency and are redrawn.
  for (std::size_t s = 0; s < out.samples;) {
    ++out.shots;
    if (draw(irrep_probs, unit_uniform(rng())) != rho_index) continue;
    const std::size_t k = draw(model.column_probability, unit_uniform(rng()));
    const std::size_t l = draw(model.per_column[k].p, unit_uniform(rng()));
    ++out.histogram[l];
    ++s;
  }
  const auto mode = static_cast<std::uint32_t>(
      std::max_element(out.histogram.begin(), out.histogram.end()) - out.histogram.begin());
  out.recovered = ProjPoint::finite(field.element(mode));

  // Posterior over the hidden element with a uniform prior; the per-sample
  // distribution depends only on b - l, so shifting the model's shape gives
  // the likelihood of every candidate.
  const FieldElement peak = field.element(model.marginal.argmax());
  std::vector<double> logpost(field.q(), 0.0);
  for (std::uint32_t c = 0; c < field.q(); ++c) {
    const FieldElement cand = field.element(c);
    double acc = 0.0;
    for (std::uint32_t l = 0; l < field.q(); ++l) {
      if (out.histogram[l] == 0) continue;
      const FieldElement shifted = field.element(l) - cand + peak;
      const double pl = std::max(model.marginal.p[shifted.index()], 1e-300);
      acc += static_cast<double>(out.histogram[l]) * std::log(pl);
    }
    logpost[c] = acc;
  }
  const double top = *std::max_element(logpost.begin(), logpost.end());
  double z = 0.0;
  for (double lp : logpost) z += std::exp(lp - top);
  out.confidence = std::exp(logpost[mode] - top) / z;
  return out;
}

}  // namespace bhsp
