#include "bhsp/transitivity.hpp"

#include <algorithm>
#include <numeric>

#include "bhsp/error.hpp"

namespace bhsp {

namespace {

constexpr std::uint64_t kMaxTupleSpace = std::uint64_t{1} << 26;
constexpr std::uint64_t kMaxWork = 4'000'000'000ULL;

std::uint64_t falling_factorial(std::uint64_t s, int k) {
  std::uint64_t out = 1;
  for (int i = 0; i < k; ++i) out *= (s - static_cast<std::uint64_t>(i));
  return out;
}

}  // namespace

Fraction Fraction::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  return {num / g, den / g};
}

std::string Fraction::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

ActionDescriptor::ActionDescriptor(std::size_t degree, std::vector<Permutation> perms)
    : degree_(degree), perms_(std::move(perms)) {
  std::vector<char> seen(degree_);
  for (const auto& p : perms_) {
    if (p.size() != degree_) throw Error(ErrorKind::InvalidArgument, "permutation has the wrong degree");
    std::fill(seen.begin(), seen.end(), 0);
    for (auto x : p) {
      if (x >= degree_ || seen[x]) throw Error(ErrorKind::InvalidArgument, "not a permutation");
      seen[x] = 1;
    }
  }
}

ActionDescriptor projective_action(const std::vector<GroupElement>& group) {
  if (group.empty()) throw Error(ErrorKind::InvalidArgument, "empty group");
  const Field& f = group.front().field();
  const auto points = ProjPoint::all(f);
  std::vector<Permutation> perms;
  perms.reserve(group.size());
  for (const auto& g : group) {
    Permutation p(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) p[i] = act(g, points[i]).ordinal();
    perms.push_back(std::move(p));
  }
  return ActionDescriptor(points.size(), std::move(perms));
}

TransitivityReport transitivity_fraction(const ActionDescriptor& action, int k) {
  const std::uint64_t s = action.degree();
  if (k < 1 || static_cast<std::uint64_t>(k) > s) {
    throw Error(ErrorKind::InvalidArgument, "k must lie in [1, |Omega|]");
  }
  std::uint64_t space = 1;
  for (int i = 0; i < k; ++i) {
    space *= s;
    if (space > kMaxTupleSpace) throw Error(ErrorKind::BudgetExceeded, "tuple space too large");
  }
  const std::uint64_t total = falling_factorial(s, k);

  auto encode = [&](const std::vector<std::uint32_t>& t) {
    std::uint64_t c = 0;
    for (int i = k - 1; i >= 0; --i) c = c * s + t[i];
    return c;
  };
  auto decode = [&](std::uint64_t c) {
    std::vector<std::uint32_t> t(k);
    for (int i = 0; i < k; ++i) {
      t[i] = static_cast<std::uint32_t>(c % s);
      c /= s;
    }
    return t;
  };
  auto distinct = [](const std::vector<std::uint32_t>& t) {
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = i + 1; j < t.size(); ++j)
        if (t[i] == t[j]) return false;
    return true;
  };

  std::vector<std::int32_t> orbit_of(space, -1);
  std::vector<std::uint64_t> orbit_size;
  std::vector<std::uint64_t> orbit_first;
  std::uint64_t work = 0;
  std::vector<std::uint32_t> img(k);
  // Codes increase with the last coordinate most significant, so iterate in
  // lexicographic tuple order for a deterministic witness.
  std::vector<std::uint64_t> order;
  order.reserve(total);
  for (std::uint64_t c = 0; c < space; ++c) {
    if (distinct(decode(c))) order.push_back(c);
  }
  std::sort(order.begin(), order.end(), [&](std::uint64_t x, std::uint64_t y) { return decode(x) < decode(y); });

  for (std::uint64_t c : order) {
    if (orbit_of[c] >= 0) continue;
    const auto t = decode(c);
    const auto id = static_cast<std::int32_t>(orbit_size.size());
    std::uint64_t size = 0;
    for (const auto& p : action.perms()) {
      for (int i = 0; i < k; ++i) img[i] = p[t[i]];
      std::uint64_t ic = encode(img);
      if (orbit_of[ic] < 0) {
        orbit_of[ic] = id;
        ++size;
      }
    }
    work += action.group_order() * static_cast<std::uint64_t>(k);
    if (work > kMaxWork) throw Error(ErrorKind::BudgetExceeded, "orbit expansion exceeded the work budget");
    orbit_size.push_back(size);
    orbit_first.push_back(c);
  }

  auto min_it = std::min_element(orbit_size.begin(), orbit_size.end());
  auto max_it = std::max_element(orbit_size.begin(), orbit_size.end());
  TransitivityReport r;
  r.k = k;
  r.total_tuples = total;
  r.orbit_count = orbit_size.size();
  r.b = Fraction::make(static_cast<std::int64_t>(*min_it), static_cast<std::int64_t>(total));
  r.fraction_reached = Fraction::make(static_cast<std::int64_t>(*max_it), static_cast<std::int64_t>(total));
  r.is_k_transitive = r.orbit_count == 1;
  r.uniform = *min_it == *max_it;
  r.witness = decode(orbit_first[static_cast<std::size_t>(min_it - orbit_size.begin())]);
  return r;
}

std::map<std::vector<std::uint32_t>, std::uint64_t> reach_counts(const ActionDescriptor& action,
                                                                 const std::vector<std::uint32_t>& source) {
  std::map<std::vector<std::uint32_t>, std::uint64_t> out;
  std::vector<std::uint32_t> img(source.size());
  for (const auto& p : action.perms()) {
    for (std::size_t i = 0; i < source.size(); ++i) img[i] = p.at(source[i]);
    ++out[img];
  }
  return out;
}

std::uint64_t pointwise_stabilizer_order(const ActionDescriptor& action, const std::vector<std::uint32_t>& points) {
  return static_cast<std::uint64_t>(std::count_if(action.perms().begin(), action.perms().end(), [&](const auto& p) {
    return std::all_of(points.begin(), points.end(), [&](std::uint32_t x) { return p.at(x) == x; });
  }));
}

IndexFormulaReport verify_index_formula(const ActionDescriptor& action, const std::vector<std::uint32_t>& points,
                                        int k) {
  const int j = static_cast<int>(points.size());
  if (j > k) throw Error(ErrorKind::InvalidArgument, "|S| must not exceed k");
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = a + 1; b < points.size(); ++b)
      if (points[a] == points[b]) throw Error(ErrorKind::DuplicatePoints, "S must consist of distinct points");

  IndexFormulaReport r;
  r.k_transitive = k == 0 || transitivity_fraction(action, k).is_k_transitive;
  r.group_order = action.group_order();
  r.stabilizer_order = pointwise_stabilizer_order(action, points);
  r.index = r.stabilizer_order ? r.group_order / r.stabilizer_order : 0;
  r.expected_index = falling_factorial(action.degree(), j);
  r.asserted = r.k_transitive;
  r.holds = r.stabilizer_order != 0 && r.group_order % r.stabilizer_order == 0 && r.index == r.expected_index;
  return r;
}

DistinctnessReport verify_distinctness(const ActionDescriptor& action, std::uint32_t alpha) {
  const std::size_t s = action.degree();
  if (alpha >= s) throw Error(ErrorKind::InvalidArgument, "alpha outside Omega");
  DistinctnessReport r;
  if (s < 3) return r;
  r.b = transitivity_fraction(action, 3).b;
  const bool two_transitive = transitivity_fraction(action, 2).is_k_transitive;
  r.precondition_met = two_transitive && Fraction::make(1, static_cast<std::int64_t>(s - 2)) <= r.b;
  if (!r.precondition_met) return r;

  // G_{alpha,beta} as the sorted list of element positions.
  std::vector<std::vector<std::uint32_t>> stabs(s);
  for (std::uint32_t i = 0; i < action.group_order(); ++i) {
    const auto& p = action.perms()[i];
    if (p[alpha] != alpha) continue;
    for (std::uint32_t beta = 0; beta < s; ++beta)
      if (beta != alpha && p[beta] == beta) stabs[beta].push_back(i);
  }
  r.distinct = true;
  for (std::uint32_t beta = 0; beta < s && r.distinct; ++beta) {
    if (beta == alpha) continue;
    for (std::uint32_t gamma = beta + 1; gamma < s; ++gamma) {
      if (gamma == alpha) continue;
      if (stabs[beta] == stabs[gamma]) {
        r.distinct = false;
        r.witness = {beta, gamma};
        break;
      }
    }
  }
  return r;
}

}  // namespace bhsp
