#include "bhsp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "bhsp/affine_rep.hpp"
#include "bhsp/agl2.hpp"
#include "bhsp/error.hpp"
#include "bhsp/field.hpp"
#include "bhsp/hsp.hpp"
#include "bhsp/pgroup.hpp"
#include "bhsp/transitivity.hpp"

namespace bhsp::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr double kTol = 1e-9;

const std::vector<std::string> kSubcommands = {"field-info", "group-info",   "transitivity", "rep-check",
                                               "gauss",      "distribution", "recover",      "agl2-check"};

const std::map<std::string, std::string> kDescriptions = {
    {"field-info", "modulus, generator and character sanity for F_q"},
    {"group-info", "group orders and Borel decomposition check"},
    {"transitivity", "k-transitivity report for the projective action"},
    {"rep-check", "residuals for the AGL(1;q) irreducible representation"},
    {"gauss", "quadratic Gauss sum and its parity"},
    {"distribution", "closed-form and brute-force frequency distributions"},
    {"recover", "end-to-end hidden point recovery"},
    {"agl2-check", "3-transitivity and stabilizer structure of AGL(d;2)"},
};

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

json num(double x) { return round12(x); }

json coords(const FieldElement& e) {
  json out = json::array();
  for (auto c : e.coeffs()) out.push_back(c);
  return out;
}

json complex_json(std::complex<double> z) { return json::array({num(z.real()), num(z.imag())}); }

Flavor require_flavor(const RunConfig& c) {
  if (!c.flavor) parse_error(c.subcommand + " needs --flavor");
  return parse_flavor(*c.flavor);
}

void require_odd(const Field& f, Flavor flavor) {
  if (f.p() == 2 && flavor != Flavor::GL) {
    throw Error(ErrorKind::EvenCharacteristic, "flavor " + to_string(flavor) + " needs odd q");
  }
}

// "inf", a coefficient list "[c0,c1,...]", or an element index.
ProjPoint parse_point(const Field& f, const std::string& text) {
  if (text == "inf" || text == "infinity") return ProjPoint::infinity(f);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') parse_error("bad coefficient list '" + text + "'");
    std::vector<std::uint32_t> cs;
    std::stringstream ss(text.substr(1, text.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(item, &used);
        if (used != item.size() || v >= f.p()) throw std::invalid_argument(item);
        cs.push_back(static_cast<std::uint32_t>(v));
      } catch (const std::exception&) {
        parse_error("bad coefficient '" + item + "' in '" + text + "'");
      }
    }
    if (cs.size() != f.n()) parse_error("expected " + std::to_string(f.n()) + " coefficients in '" + text + "'");
    return ProjPoint::finite(f.from_coeffs(cs));
  }
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(text, &used);
    if (used != text.size() || v >= f.q()) throw std::invalid_argument(text);
    return ProjPoint::finite(f.element(static_cast<std::uint32_t>(v)));
  } catch (const std::exception&) {
    parse_error("bad point '" + text + "'");
  }
}

ProjPoint resolve_hidden(const RunConfig& c, const Field& f, bool allow_infinity) {
  if (!c.hidden) parse_error(c.subcommand + " needs --hidden");
  if (*c.hidden == "random") {
    if (!c.seed) parse_error("--hidden random needs --seed");
    std::mt19937_64 rng(*c.seed);
    const std::uint32_t lo = allow_infinity ? 0 : 1;
    std::uniform_int_distribution<std::uint32_t> pick(lo, f.q());
    return ProjPoint::from_ordinal(f, pick(rng));
  }
  ProjPoint s = parse_point(f, *c.hidden);
  if (s.is_infinity() && !allow_infinity) {
    throw Error(ErrorKind::InvalidArgument, "the Fourier distribution is defined for finite hidden points");
  }
  return s;
}

json field_info(const RunConfig& c) {
  const Field f = Field::parse(c.field);
  json r;
  r["subcommand"] = c.subcommand;
  r["field"] = f.spec_string();
  r["p"] = f.p();
  r["n"] = f.n();
  r["q"] = f.q();
  r["modulus"] = f.modulus();
  r["modulus_string"] = f.modulus_string();

  const FieldElement g = f.generator();
  std::uint32_t order = 1;
  for (FieldElement x = g; !x.is_one(); x *= g) ++order;
  r["generator"] = {{"index", g.index()}, {"coeffs", coords(g)}, {"order", order}};
  const bool primitive = order == f.q() - 1;

  bool trace_ok = true;
  for (const auto& e : f.elements()) {
    const FieldElement t = trace_by_frobenius(e);
    if (t.index() >= f.p() || t.index() != trace(e)) trace_ok = false;
  }

  if (f.q() > 4096) throw Error(ErrorKind::BudgetExceeded, "character table check is capped at q = 4096");
  // chi_k conj(chi_l) = chi_{k-l}, so row sums settle orthogonality.
  double orth = 0.0;
  for (const auto& k : f.elements()) {
    std::complex<double> acc = 0.0;
    for (const auto& j : f.elements()) acc += additive_char(Frequency::of(k), j);
    const double expected = k.is_zero() ? f.q() : 0.0;
    orth = std::max(orth, std::abs(acc - expected) / f.q());
  }
  json checks;
  checks["generator_primitive"] = primitive;
  checks["trace_matches_frobenius"] = trace_ok;
  checks["character_orthogonality_residual"] = num(orth);
  bool ok = primitive && trace_ok && orth < kTol;
  if (f.p() != 2) {
    int squares = 0, non_squares = 0;
    for (const auto& e : f.elements()) {
      const int eta = quadratic_char(e);
      squares += eta == 1;
      non_squares += eta == -1;
    }
    checks["quadratic_character_balanced"] = squares == non_squares;
    ok = ok && squares == non_squares;
  }
  r["checks"] = checks;
  r["ok"] = ok;
  return r;
}

std::uint64_t expected_borel_order(Flavor flavor, std::uint64_t q) {
  switch (flavor) {
    case Flavor::GL: return (q - 1) * (q - 1) * q;
    case Flavor::SL:
    case Flavor::PGL: return (q - 1) * q;
    case Flavor::PSL: return (q - 1) * q / 2;
  }
  return 0;
}

json group_info(const RunConfig& c) {
  const Flavor flavor = require_flavor(c);
  const Field f = Field::parse(c.field);
  require_odd(f, flavor);
  const auto group = enumerate(flavor, f);
  const auto b = stabilizer(group, {ProjPoint::infinity(f)});

  json r;
  r["subcommand"] = c.subcommand;
  r["flavor"] = to_string(flavor);
  r["field"] = f.spec_string();
  r["q"] = f.q();
  r["order"] = group.size();
  r["order_formula"] = group_order(flavor, f);
  r["borel_order"] = b.size();
  r["borel_order_formula"] = expected_borel_order(flavor, f.q());
  r["stabilizer_orders"] = {
      {"inf", b.size()},
      {"0,inf", stabilizer(group, {ProjPoint::infinity(f), ProjPoint::finite(f.zero())}).size()},
      {"0,1,inf",
       stabilizer(group, {ProjPoint::infinity(f), ProjPoint::finite(f.zero()), ProjPoint::finite(f.one())}).size()},
  };

  // Borel decomposition: action agreement on F_q, round trip, fibre sizes.
  bool action_ok = true;
  bool round_trip = true;
  std::map<AffineElement, std::size_t> fibres;
  for (const auto& g : b.elements) {
    const BorelCoords bc = borel_decompose(g);
    ++fibres[bc.affine];
    for (const auto& x : f.elements()) {
      if (!(act(g, ProjPoint::finite(x)) == ProjPoint::finite(bc.affine.apply(x)))) action_ok = false;
    }
    if (flavor != Flavor::GL && !(borel_compose(flavor, bc.affine, bc.root) == g)) round_trip = false;
  }
  const bool squares_only = flavor == Flavor::SL || flavor == Flavor::PSL;
  const auto image = enumerate_affine(f, squares_only);
  bool image_ok = image.size() == fibres.size();
  std::set<std::size_t> fibre_sizes;
  for (const auto& x : image) {
    auto it = fibres.find(x);
    if (it == fibres.end()) {
      image_ok = false;
      continue;
    }
    fibre_sizes.insert(it->second);
  }
  r["borel_decomposition"] = {
      {"image_order", fibres.size()},
      {"image_is_affine_group", image_ok},
      {"squares_only", squares_only},
      {"fibre_sizes", fibre_sizes},
      {"action_agrees", action_ok},
      {"round_trip", round_trip},
  };
  r["ok"] = group.size() == group_order(flavor, f) && b.size() == expected_borel_order(flavor, f.q()) && image_ok &&
            action_ok && round_trip && fibre_sizes.size() == 1;
  return r;
}

json transitivity(const RunConfig& c) {
  const Flavor flavor = require_flavor(c);
  const Field f = Field::parse(c.field);
  require_odd(f, flavor);
  const auto action = projective_action(enumerate(flavor, f));
  const auto rep = transitivity_fraction(action, c.k);

  json r;
  r["subcommand"] = c.subcommand;
  r["flavor"] = to_string(flavor);
  r["field"] = f.spec_string();
  r["q"] = f.q();
  r["degree"] = action.degree();
  r["group_order"] = action.group_order();
  r["k"] = rep.k;
  r["b"] = rep.b.to_string();
  r["b_float"] = num(rep.b.to_double());
  r["fraction_reached_max"] = rep.fraction_reached.to_string();
  r["uniform"] = rep.uniform;
  r["is_k_transitive"] = rep.is_k_transitive;
  r["total_tuples"] = rep.total_tuples;
  r["orbit_count"] = rep.orbit_count;
  r["witness"] = rep.witness;

  std::set<std::uint64_t> hits;
  for (const auto& [tuple, count] : reach_counts(action, rep.witness)) hits.insert(count);
  r["hits_per_reached_tuple"] = hits;

  bool ok = true;
  json index = json::array();
  for (int j = 1; j <= std::min(c.k, 3); ++j) {
    std::vector<std::uint32_t> pts;
    for (int i = 0; i < j; ++i) pts.push_back(static_cast<std::uint32_t>(i));
    const auto ir = verify_index_formula(action, pts, j);
    index.push_back({{"j", j},
                     {"k_transitive", ir.k_transitive},
                     {"index", ir.index},
                     {"expected_index", ir.expected_index},
                     {"holds", ir.holds}});
    if (ir.asserted && !ir.holds) ok = false;
  }
  r["index_formula"] = index;
  r["ok"] = ok;
  return r;
}

json matrix_json(const RepMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json rep_check_cmd(const RunConfig& c) {
  const Field f = Field::parse(c.field);
  if (f.q() > 64) throw Error(ErrorKind::BudgetExceeded, "rep-check is capped at q = 64");
  const auto rep = rep_check(f);
  json r;
  r["subcommand"] = c.subcommand;
  r["field"] = f.spec_string();
  r["q"] = f.q();
  r["group_order"] = rep.group_order;
  r["dimension"] = f.q() - 1;
  r["homomorphism_residual"] = num(rep.homomorphism_residual);
  r["unitarity_residual"] = num(rep.unitarity_residual);
  r["identity_residual"] = num(rep.identity_residual);
  r["character_norm"] = num(rep.character_norm);
  r["character_norm_residual"] = num(std::abs(rep.character_norm - static_cast<double>(rep.group_order)));
  r["projector_residual"] = num(rep.projector_residual);
  r["class_count"] = rep.class_count;
  r["class_orthogonality_residual"] = num(rep.class_orthogonality_residual);

  json gens = json::array();
  for (const AffineElement& x : {AffineElement{f.generator(), f.zero()}, AffineElement::translation(f.one())}) {
    gens.push_back({{"a", coords(x.a)}, {"b", coords(x.b)}, {"matrix", matrix_json(rho(x))}});
  }
  r["generators"] = gens;
  r["ok"] = rep.homomorphism_residual < kTol && rep.unitarity_residual < kTol && rep.identity_residual < kTol &&
            std::abs(rep.character_norm - static_cast<double>(rep.group_order)) < 1e-7 &&
            rep.projector_residual < kTol && rep.class_orthogonality_residual < kTol &&
            rep.class_count == f.q();
  return r;
}

json gauss_cmd(const RunConfig& c) {
  const Field f = Field::parse(c.field);
  if (f.p() == 2) throw Error(ErrorKind::EvenCharacteristic, "the quadratic character needs odd q");
  const auto g = gauss_sum(MultChar::Quadratic, Frequency(f, 1));
  const auto trivial = gauss_sum(MultChar::Trivial, Frequency(f, 1));
  const bool expected_odd = f.q() % 4 == 3 && f.n() % 2 == 1;

  double worst = 0.0;
  for (std::uint32_t k = 1; k < f.q(); ++k) {
    worst = std::max(worst, std::abs(gauss_sum(MultChar::Quadratic, Frequency(f, k)).modulus_sq - f.q()));
  }
  json r;
  r["subcommand"] = c.subcommand;
  r["field"] = f.spec_string();
  r["q"] = f.q();
  r["value"] = complex_json(g.value);
  r["modulus_sq"] = num(g.modulus_sq);
  r["d"] = g.d ? json(*g.d) : json(nullptr);
  r["d_odd"] = g.d_odd ? json(*g.d_odd) : json(nullptr);
  r["expected_d_odd"] = expected_odd;
  r["trivial_character_value"] = complex_json(trivial.value);
  r["max_modulus_sq_residual"] = num(worst);
  r["ok"] = std::abs(g.modulus_sq - f.q()) < kTol && g.d.has_value() && g.d_odd == expected_odd && worst < kTol &&
            std::abs(trivial.value + 1.0) < kTol;
  return r;
}

double max_diff(const Distribution& a, const Distribution& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.p.size(); ++i) m = std::max(m, std::abs(a.p[i] - b.p[i]));
  return m;
}

json distribution_cmd(const RunConfig& c) {
  const Flavor flavor = require_flavor(c);
  if (flavor == Flavor::GL) throw Error(ErrorKind::FlavorMismatch, "distribution is defined for pgl, psl and sl");
  const Field f = Field::parse(c.field);
  require_odd(f, flavor);
  if (f.q() > 13) throw Error(ErrorKind::BudgetExceeded, "distribution is capped at q = 13");
  const ProjPoint s = resolve_hidden(c, f, false);
  const FieldElement b = s.value();

  const MeasurementModel model = brute_force_model(flavor, b);
  const Distribution& brute = model.marginal;
  std::vector<double> closed(f.q(), 0.0);
  double worst = 0.0;
  json branches = json::array();
  if (flavor == Flavor::PGL) {
    const Distribution cf = closed_form_distribution(flavor, b, 1);
    closed = cf.p;
    for (const auto& k : f.units_by_log()) {
      worst = std::max(worst, max_diff(model.per_column.at(k.log()), cf));
    }
  } else {
    // Columns split by eta(k); each branch is half of the column mass.
    for (int branch : {1, -1}) {
      const Distribution cf = closed_form_distribution(flavor, b, branch);
      for (std::size_t l = 0; l < closed.size(); ++l) closed[l] += cf.p[l] / 2.0;
      std::set<double> off_peak;
      for (std::uint32_t l = 0; l < f.q(); ++l)
        if (l != b.index()) off_peak.insert(round12(cf.p[l]));
      const auto printed = printed_psl_form_check(b, branch);
      branches.push_back({{"branch", branch},
                          {"peak", num(cf.p[b.index()])},
                          {"off_peak_values", off_peak},
                          {"printed_denominator_total_mass", num(printed.total_mass)},
                          {"printed_denominator_normalized", printed.normalized}});
      for (const auto& k : f.units_by_log()) {
        if (quadratic_char(k) != branch) continue;
        worst = std::max(worst, max_diff(model.per_column.at(k.log()), cf));
      }
    }
  }
  const Distribution closed_marginal(f, closed);
  worst = std::max(worst, max_diff(brute, closed_marginal));

  json r;
  r["subcommand"] = c.subcommand;
  r["flavor"] = to_string(flavor);
  r["field"] = f.spec_string();
  r["q"] = f.q();
  r["hidden_point"] = s.to_string();
  json table = json::array();
  for (std::uint32_t l = 0; l < f.q(); ++l) {
    table.push_back({{"ell", coords(f.element(l))}, {"p", num(brute.p[l])}, {"closed_form", num(closed[l])}});
  }
  r["distribution"] = table;
  r["total"] = num(brute.total());
  r["peak"] = coords(f.element(brute.argmax()));
  r["rho_probability"] = num(model.rho_probability);
  r["max_abs_difference"] = num(worst);
  if (!branches.empty()) r["branches"] = branches;
  const bool match = worst < kTol;
  r["closed_form_match"] = match;
  r["ok"] = match && std::abs(brute.total() - 1.0) < kTol && brute.min() > -1e-12 && brute.argmax() == b.index();
  return r;
}

json recover_cmd(const RunConfig& c) {
  const Flavor flavor = require_flavor(c);
  if (flavor == Flavor::GL) throw Error(ErrorKind::FlavorMismatch, "recover is defined for pgl, psl and sl");
  if (!c.seed) parse_error("recover needs --seed");
  const Field f = Field::parse(c.field);
  require_odd(f, flavor);
  const ProjPoint s = resolve_hidden(c, f, true);
  if (c.samples && *c.samples == 0) parse_error("--samples must be at least 1");

  const HidingOracle oracle = make_stabilizer_oracle(flavor, f, s);
  const RecoveryResult res = recover_hidden_point(oracle, c.samples, *c.seed);

  json r;
  r["subcommand"] = c.subcommand;
  r["flavor"] = to_string(flavor);
  r["field"] = f.spec_string();
  r["q"] = f.q();
  r["seed"] = *c.seed;
  r["hidden_point"] = s.to_string();
  r["classical"] = res.classical;
  r["classical_queries"] = res.classical_queries;
  r["samples"] = res.samples;
  r["shots"] = res.shots;
  if (!res.classical) {
    json hist = json::array();
    for (std::uint32_t l = 0; l < f.q(); ++l) {
      hist.push_back({{"ell", coords(f.element(l))}, {"count", res.histogram[l]}});
    }
    r["histogram"] = hist;
  }
  r["recovered"] = res.recovered.to_string();
  r["confidence"] = num(res.confidence);
  r["ok"] = res.recovered == s;
  return r;
}

json agl2_cmd(const RunConfig& c) {
  const int d = c.d;
  json r;
  r["subcommand"] = c.subcommand;
  r["d"] = d;
  const auto gl = agl2::enumerate_gl2(d);
  const auto agl = agl2::enumerate_agl2(d);
  r["gl_order"] = gl.size();
  r["gl_order_formula"] = agl2::gl2_order(d);
  r["agl_order"] = agl.size();
  r["agl_order_formula"] = agl2::agl2_order(d);
  bool ok = gl.size() == agl2::gl2_order(d) && agl.size() == agl2::agl2_order(d);

  if (c.k >= 1 && c.k <= (1 << d)) {
    const auto rep = agl2::check_transitive(d, c.k);
    r["transitivity"] = {{"k", c.k},
                         {"b", rep.b.to_string()},
                         {"is_k_transitive", rep.is_k_transitive},
                         {"orbit_count", rep.orbit_count}};
    if (c.k <= 3) ok = ok && rep.is_k_transitive;
  } else {
    r["transitivity"] = nullptr;
  }

  if (d >= 2) {
    const auto st = agl2::point1_stabilizer_structure(d);
    r["point_stabilizer"] = {{"stabilizer_order", st.stabilizer_order},
                             {"expected_order", st.expected_order},
                             {"orbit_size", st.orbit_size},
                             {"orbit_stabilizer", st.gl_order == st.orbit_size * st.stabilizer_order},
                             {"block_form", st.block_form},
                             {"bijective", st.bijective},
                             {"homomorphism", st.homomorphism},
                             {"witness", st.witness}};
    ok = ok && st.ok();
  }

  bool conj = true;
  for (std::uint32_t p = 0; p < (1u << d); ++p) {
    conj = agl2::translation_conjugates_stabilizer(d, static_cast<std::uint8_t>(p)) && conj;
  }
  r["translation_conjugates_stabilizer"] = conj;
  r["ok"] = ok && conj;
  return r;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::GroupTooLarge:
    case ErrorKind::BudgetExceeded:
    case ErrorKind::FieldTooLarge:
    case ErrorKind::DimensionTooLarge:
      return kExitBudget;
    default:
      return kExitParse;
  }
}

std::string format_scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_scalar_array(const json& v) {
  return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return !x.is_structured() || (x.is_array() && std::all_of(x.begin(), x.end(), [](const json& y) { return !y.is_structured(); })); });
}

void render_pretty(const json& v, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = v.begin(); it != v.end(); ++it) {
    const json& x = it.value();
    os << pad << it.key() << ":";
    if (x.is_object()) {
      os << "\n";
      render_pretty(x, indent + 2, os);
    } else if (x.is_array() && !is_scalar_array(x)) {
      os << "\n";
      for (const auto& item : x) {
        if (item.is_object()) {
          bool first = true;
          for (auto jt = item.begin(); jt != item.end(); ++jt) {
            os << pad << (first ? "  - " : "    ") << jt.key() << ": " << format_scalar(jt.value()) << "\n";
            first = false;
          }
        } else {
          os << pad << "  - " << format_scalar(item) << "\n";
        }
      }
    } else {
      os << " " << format_scalar(x) << "\n";
    }
  }
}

std::string render_csv(const json& report) {
  if (!report.contains("distribution")) parse_error("csv output is only available for distribution tables");
  std::ostringstream os;
  const auto& rows = report["distribution"];
  const std::size_t n = rows.empty() ? 0 : rows.front()["ell"].size();
  for (std::size_t i = 0; i < n; ++i) os << "ell_" << i << ",";
  os << "p,closed_form\n";
  for (const auto& row : rows) {
    for (const auto& c : row["ell"]) os << c.dump() << ",";
    os << row["p"].dump() << "," << row["closed_form"].dump() << "\n";
  }
  return os.str();
}

std::filesystem::path output_path(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("BHSP_OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p;
}

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (!config.output || config.output->empty()) {
    out << text;
    return;
  }
  const auto p = output_path(*config.output);
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open " + p.string() + " for writing");
  f << text;
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Borel hidden-subgroup simulator and verifier", "bhsp"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string flavor, hidden, format = "json", output;
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  std::map<std::string, CLI::App*> subs;
  for (const auto& name : kSubcommands) {
    CLI::App* sub = app.add_subcommand(name, kDescriptions.at(name));
    subs[name] = sub;
    sub->add_option("--format", format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    sub->add_option("-o,--output", output, "output file (relative paths honour BHSP_OUTPUT_DIR)");
    sub->add_option("--seed", seed, "rng seed");
    if (name == "agl2-check") {
      sub->add_option("-d", cfg.d, "dimension, 1..4");
      sub->add_option("-k", cfg.k, "tuple length for the transitivity check");
      continue;
    }
    sub->add_option("--field", cfg.field, "field as p^n");
    if (name == "field-info" || name == "rep-check" || name == "gauss") continue;
    sub->add_option("--flavor", flavor, "gl, sl, pgl or psl")->required();
    if (name == "transitivity") sub->add_option("-k", cfg.k, "tuple length");
    if (name == "distribution" || name == "recover") {
      sub->add_option("--hidden", hidden, "hidden point: element index, [c0,...], inf or random")->required();
    }
    if (name == "recover") sub->add_option("--samples", samples, "number of Fourier samples");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    parse_error(e.what());
  }

  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    cfg.subcommand = name;
    if (!flavor.empty()) cfg.flavor = flavor;
    if (!hidden.empty()) cfg.hidden = hidden;
    if (auto* o = sub->get_option_no_throw("--samples"); o && o->count()) cfg.samples = samples;
    if (sub->count("--seed")) cfg.seed = seed;
    if (!output.empty()) cfg.output = output;
  }
  cfg.format = format == "csv" ? Format::Csv : format == "pretty" ? Format::Pretty : Format::Json;
  return cfg;
}

json build_report(const RunConfig& c) {
  if (c.subcommand == "field-info") return field_info(c);
  if (c.subcommand == "group-info") return group_info(c);
  if (c.subcommand == "transitivity") return transitivity(c);
  if (c.subcommand == "rep-check") return rep_check_cmd(c);
  if (c.subcommand == "gauss") return gauss_cmd(c);
  if (c.subcommand == "distribution") return distribution_cmd(c);
  if (c.subcommand == "recover") return recover_cmd(c);
  if (c.subcommand == "agl2-check") return agl2_cmd(c);
  parse_error("unknown subcommand '" + c.subcommand + "'");
}

std::string render(const json& report, Format format) {
  switch (format) {
    case Format::Json: return report.dump(2) + "\n";
    case Format::Csv: return render_csv(report);
    case Format::Pretty: {
      std::ostringstream os;
      render_pretty(report, 0, os);
      return os.str();
    }
  }
  return {};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  json report;
  int code = kExitOk;
  try {
    if (config.format == Format::Csv && config.subcommand != "distribution") {
      parse_error("csv output is only available for distribution");
    }
    report = build_report(config);
    if (!report.value("ok", false)) {
      code = kExitAssertion;
      err << "bhsp: " << config.subcommand << ": assertion failed\n";
    }
    emit(config, render(report, config.format), out);
    return code;
  } catch (const Error& e) {
    code = exit_code_for(e.kind());
    json failure;
    failure["subcommand"] = config.subcommand;
    failure["ok"] = false;
    failure["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    err << "bhsp: " << e.what() << "\n";
    try {
      emit(config, render(failure, config.format == Format::Pretty ? Format::Pretty : Format::Json), out);
    } catch (const Error&) {
      out << failure.dump(2) << "\n";
    }
    return code;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_args(argc, argv, out);
  } catch (const Error& e) {
    json failure;
    failure["ok"] = false;
    failure["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    out << failure.dump(2) << "\n";
    err << "bhsp: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  if (!cfg) return kExitOk;
  return run(*cfg, out, err);
}

}  // namespace bhsp::cli
