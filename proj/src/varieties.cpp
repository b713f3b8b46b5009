#include "discrarr/varieties.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "discrarr/errors.hpp"

namespace discrarr {

int variety_threshold(const Presentation& t, std::size_t budget) {
  const auto above = min_nu_above(t, budget);
  switch (above.status) {
    case MinNuAbove::Status::Resolved:
      return above.value - 1;
    case MinNuAbove::Status::NoUpperBound:
      throw std::invalid_argument(t.to_string() + " has no strict upper bound in P(n,k); give r explicitly");
    case MinNuAbove::Status::Unresolved:
      break;
  }
  throw BudgetExhausted("min_nu_above search for " + t.to_string() + " exceeded " + std::to_string(budget) +
                        " states; give r explicitly or raise the budget");
}

MembershipVerdict membership(RankOracle& oracle, const std::vector<IndexSet>& family, int r, const FieldMode& field) {
  MembershipVerdict v;
  v.r = r;
  if (field.kind == FieldMode::Kind::Prime) {
    const std::size_t fp_rank = oracle.rank_fp(family);
    if (static_cast<long>(fp_rank) > r) {
      v.member = false;
      v.rank_certificate = fp_rank;
      v.field = field;
      return v;
    }
  }
  v.rank_certificate = oracle.rank_q(family);
  v.member = static_cast<long>(v.rank_certificate) <= r;
  v.field = FieldMode::rational();
  return v;
}

MembershipVerdict membership(const Arrangement& a, const Presentation& t, int r, const FieldMode& field) {
  if (t.n() != a.n() || t.k() != a.k())
    throw std::invalid_argument("presentation context (n, k) does not match the arrangement");
  if (r < 0) throw std::invalid_argument("rank bound r must be non-negative");
  RankOracle oracle(a, field.kind == FieldMode::Kind::Prime ? field.prime : PrimeField::kDefaultPrime);
  return membership(oracle, t.members(), r, field);
}

MembershipVerdict membership(const Arrangement& a, const VarietyQuery& q, const FieldMode& field, std::size_t budget) {
  const int r = q.r ? *q.r : variety_threshold(q.presentation, budget);
  return membership(a, q.presentation, r, field);
}

void WheelLabeling::validate() const {
  if (rim.size() != hubs.size()) throw std::invalid_argument("wheel labeling needs as many hubs as rim lines");
  if (rim.size() < 3) throw std::invalid_argument("wheel labeling needs at least three rim lines");
  std::set<int> seen;
  for (int i : rim) {
    if (i < 1) throw std::invalid_argument("wheel labels are 1-based");
    if (!seen.insert(i).second) throw std::invalid_argument("rim line " + std::to_string(i) + " repeats");
  }
  for (int j : hubs) {
    if (j < 1) throw std::invalid_argument("wheel labels are 1-based");
    if (seen.count(j)) throw std::invalid_argument("hub " + std::to_string(j) + " lies on the rim");
  }
}

bool WheelLabeling::plain() const {
  std::set<int> distinct(hubs.begin(), hubs.end());
  return distinct.size() == hubs.size();
}

std::vector<IndexSet> WheelLabeling::spokes() const {
  validate();
  std::vector<IndexSet> out;
  const std::size_t m = rim.size();
  for (std::size_t l = 0; l < m; ++l) out.push_back(IndexSet{rim[l], rim[(l + 1) % m], hubs[l]});
  return out;
}

Presentation WheelLabeling::presentation(int n) const {
  auto members = spokes();
  IndexSet hub;
  for (int j : hubs) hub.insert(j);
  if (hub.size() >= 3) members.push_back(hub);
  return Presentation(n, 2, std::move(members));
}

namespace {

Rational delta_of(const Arrangement& a, int i, int j) { return delta(a, i, j); }

void check_labels(const Arrangement& a, int max_label) {
  if (a.k() != 2) throw std::invalid_argument("Delta polynomials need a line arrangement (k = 2)");
  if (max_label > a.n())
    throw std::invalid_argument("label " + std::to_string(max_label) + " exceeds n = " + std::to_string(a.n()));
}

}  // namespace

Rational DeltaBinomial::evaluate(const Arrangement& a) const {
  check_labels(a, max_index());
  Rational p = 1;
  for (const auto& [i, j] : plus) p *= delta_of(a, i, j);
  Rational q = 1;
  for (const auto& [i, j] : minus) q *= delta_of(a, i, j);
  return p - q;
}

Rational DeltaBinomial::evaluate(const std::vector<std::vector<Rational>>& deltas) const {
  Rational p = 1;
  for (const auto& [i, j] : plus) p *= deltas[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  Rational q = 1;
  for (const auto& [i, j] : minus) q *= deltas[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return p - q;
}

DeltaBinomial DeltaBinomial::relabel(const std::vector<int>& sigma) const {
  auto map = [&](int i) {
    if (i < 1 || i > static_cast<int>(sigma.size())) throw std::invalid_argument("relabeling too short");
    return sigma[static_cast<std::size_t>(i - 1)];
  };
  DeltaBinomial out;
  for (const auto& [i, j] : plus) out.plus.emplace_back(map(i), map(j));
  for (const auto& [i, j] : minus) out.minus.emplace_back(map(i), map(j));
  return out;
}

int DeltaBinomial::max_index() const {
  int m = 0;
  for (const auto& [i, j] : plus) m = std::max({m, i, j});
  for (const auto& [i, j] : minus) m = std::max({m, i, j});
  return m;
}

std::string DeltaBinomial::to_string() const {
  auto product = [](const std::vector<std::pair<int, int>>& factors) {
    std::string out;
    for (const auto& [i, j] : factors) {
      if (!out.empty()) out += '*';
      out += "D(" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
    return out.empty() ? std::string("1") : out;
  };
  return product(plus) + " - " + product(minus);
}

DeltaBinomial wheel_binomial(const WheelLabeling& w) {
  w.validate();
  DeltaBinomial out;
  const std::size_t m = w.rim.size();
  for (std::size_t l = 0; l < m; ++l) {
    out.plus.emplace_back(w.hubs[l], w.rim[l]);
    out.minus.emplace_back(w.hubs[l], w.rim[(l + 1) % m]);
  }
  return out;
}

DeltaBinomial ladder_binomial(int n) {
  if (n < 3) throw std::invalid_argument("ladder equation needs n >= 3 (at least 8 lines)");
  DeltaBinomial out;
  for (int i = 1; i <= n; ++i) {
    out.plus.emplace_back(2 * i, 2 * n + 2);
    out.plus.emplace_back(2 * i - 1, 2 * n + 1);
    out.minus.emplace_back(2 * i, 2 * n + 1);
    out.minus.emplace_back(2 * i - 1, 2 * n + 2);
  }
  return out;
}

DeltaBinomial crapo_binomial(const std::vector<int>& l) {
  DeltaBinomial out;
  if (l.size() == 6) {
    out.plus = {{l[0], l[5]}, {l[1], l[3]}, {l[2], l[4]}};
    out.minus = {{l[0], l[4]}, {l[1], l[5]}, {l[2], l[3]}};
  } else if (l.size() == 7) {
    out.plus = {{l[0], l[3]}, {l[0], l[5]}, {l[1], l[6]}, {l[2], l[4]}};
    out.minus = {{l[0], l[6]}, {l[0], l[4]}, {l[1], l[5]}, {l[2], l[3]}};
  } else {
    throw std::invalid_argument("Crapo polynomial takes 6 or 7 labels");
  }
  return out;
}

Rational wheel_poly(const Arrangement& a, const WheelLabeling& w, bool plain) {
  w.validate();
  const int top = std::max(*std::max_element(w.rim.begin(), w.rim.end()), *std::max_element(w.hubs.begin(), w.hubs.end()));
  check_labels(a, top);
  if (plain) {
    std::vector<int> around;
    for (std::size_t l = 0; l < w.rim.size(); ++l) {
      around.push_back(w.rim[l]);
      around.push_back(w.hubs[l]);
    }
    const std::size_t len = around.size();
    for (std::size_t p = 0; p < len; ++p)
      for (std::size_t step : {std::size_t{1}, std::size_t{2}}) {
        const int u = around[p];
        const int v = around[(p + step) % len];
        if (sgn(delta(a, u, v)) == 0)
          throw std::invalid_argument("lines " + std::to_string(u) + " and " + std::to_string(v) +
                                      " coincide at wheel distance " + std::to_string(step));
      }
  }
  return wheel_binomial(w).evaluate(a);
}

Rational ladder_poly(const Arrangement& a, int n) {
  if (a.n() != 2 * n + 2)
    throw std::invalid_argument("ladder equation for n = " + std::to_string(n) + " needs " + std::to_string(2 * n + 2) +
                                " lines, got " + std::to_string(a.n()));
  return ladder_binomial(n).evaluate(a);
}

Rational crapo_poly(const Arrangement& a, const std::vector<int>& labels) {
  return crapo_binomial(labels).evaluate(a);
}

std::vector<std::vector<Rational>> delta_table(const Arrangement& a) {
  if (a.k() != 2) throw std::invalid_argument("Delta table needs k = 2");
  const auto n = static_cast<std::size_t>(a.n());
  std::vector<std::vector<Rational>> table(n + 1, std::vector<Rational>(n + 1, Rational(0)));
  for (int i = 1; i <= a.n(); ++i)
    for (int j = 1; j <= a.n(); ++j) table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = delta(a, i, j);
  return table;
}

namespace {

FamilySpec from_labeling(std::string name, int n, const WheelLabeling& w) {
  auto presentation = w.presentation(n);
  const int r = variety_threshold(presentation);
  return {std::move(name), std::move(presentation), wheel_binomial(w), r};
}

WheelLabeling plain_wheel_labeling(int size) {
  WheelLabeling w;
  for (int i = 1; i <= size / 2; ++i) {
    w.rim.push_back(2 * i - 1);
    w.hubs.push_back(2 * i);
  }
  return w;
}

WheelLabeling twin_wheel_labeling(int size) {
  WheelLabeling w;
  for (int i = 1; i <= size / 2; ++i) {
    w.rim.push_back(2 * i);
    w.hubs.push_back(i == size / 2 ? 1 : 2 * i + 1);
  }
  return w;
}

std::optional<int> parse_size(const std::string& text) {
  if (text.empty() || text.size() > 2) return std::nullopt;
  if (!std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) return std::nullopt;
  return std::stoi(text);
}

}  // namespace

std::optional<FamilySpec> named_family(const std::string& name) {
  if (name == "Wd8_4") return from_labeling(name, 7, WheelLabeling{{1, 3, 5, 7}, {2, 4, 6, 4}});
  if (name == "DW10") return from_labeling(name, 8, WheelLabeling{{1, 3, 5, 7, 8}, {2, 4, 6, 4, 6}});
  if (name.size() > 2 && name.rfind("Wt", 0) == 0) {
    const auto size = parse_size(name.substr(2));
    if (!size || *size < 6 || *size % 2) return std::nullopt;
    auto spec = from_labeling(name, *size, twin_wheel_labeling(*size));
    return spec;
  }
  if (name.size() > 1 && name[0] == 'W') {
    const auto size = parse_size(name.substr(1));
    if (!size || *size < 6 || *size % 2) return std::nullopt;
    return from_labeling(name, *size, plain_wheel_labeling(*size));
  }
  if (name.size() > 1 && name[0] == 'L') {
    const auto size = parse_size(name.substr(1));
    if (!size || *size < 8 || *size % 2) return std::nullopt;
    auto presentation = ladder(*size);
    const int r = variety_threshold(presentation);
    return FamilySpec{name, std::move(presentation), ladder_binomial((*size - 2) / 2), r};
  }
  return std::nullopt;
}

std::vector<FamilySpec> eight_line_families() {
  std::vector<FamilySpec> out;
  for (const char* name : {"W6", "Wd8_4", "W8", "L8", "DW10"}) out.push_back(*named_family(name));
  return out;
}

namespace {

// Index appearing in exactly one factor of each product: the binomial is linear in it.
int linear_index(const DeltaBinomial& eq) {
  for (int s = eq.max_index(); s >= 1; --s) {
    auto count = [s](const std::vector<std::pair<int, int>>& f) {
      return std::count_if(f.begin(), f.end(), [s](const auto& p) { return p.first == s || p.second == s; });
    };
    if (count(eq.plus) == 1 && count(eq.minus) == 1) return s;
  }
  throw std::invalid_argument("binomial " + eq.to_string() + " is not linear in any single normal");
}

// Coefficients (A, B) with the product equal to A x + B y, where (x, y) is normal s.
std::pair<Rational, Rational> linear_part(const std::vector<std::pair<int, int>>& factors, int s,
                                          const std::vector<RationalVector>& normals) {
  Rational rest = 1;
  Rational ax = 0;
  Rational by = 0;
  for (const auto& [i, j] : factors) {
    if (i == s || j == s) {
      const int other = i == s ? j : i;
      const auto& m = normals[static_cast<std::size_t>(other - 1)];
      // Delta(s, m) = x m_y - y m_x; Delta(m, s) is its negative.
      ax = i == s ? m[1] : Rational(-m[1]);
      by = i == s ? Rational(-m[0]) : m[0];
    } else {
      const auto& u = normals[static_cast<std::size_t>(i - 1)];
      const auto& v = normals[static_cast<std::size_t>(j - 1)];
      rest *= u[0] * v[1] - u[1] * v[0];
    }
  }
  return {rest * ax, rest * by};
}

std::uint64_t derive_seed(std::uint64_t seed, int attempt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

SampledArrangement solve_on_variety(const FamilySpec& family, std::uint64_t seed, int height, int budget) {
  const int n = family.presentation.n();
  if (family.presentation.k() != 2) throw std::invalid_argument("solve_on_variety needs k = 2");
  const int s = linear_index(family.equation);
  for (int attempt = 0; attempt < budget; ++attempt) {
    const auto base = random_generic(n - 1, 2, attempt == 0 ? seed : derive_seed(seed, attempt), height);
    std::vector<RationalVector> normals;
    normals.reserve(static_cast<std::size_t>(n));
    for (int i = 1, b = 1; i <= n; ++i) normals.push_back(i == s ? RationalVector{1, 0} : base.arrangement.normal(b++));
    const auto [pa, pb] = linear_part(family.equation.plus, s, normals);
    const auto [ma, mb] = linear_part(family.equation.minus, s, normals);
    const Rational a_coeff = pa - ma;
    const Rational b_coeff = pb - mb;
    if (sgn(a_coeff) == 0 && sgn(b_coeff) == 0) continue;
    normals[static_cast<std::size_t>(s - 1)] = primitive_integer(RationalVector{b_coeff, Rational(-a_coeff)});
    Arrangement a(2, std::move(normals));
    if (!all_maximal_minors_nonzero(a)) continue;
    if (sgn(family.equation.evaluate(a)) != 0) continue;
    return {std::move(a), attempt};
  }
  throw BudgetExhausted("no generic arrangement on the variety of " + family.name + " within " +
                        std::to_string(budget) + " attempts (seed " + std::to_string(seed) + ")");
}

std::vector<EightLineHit> eight_line_report(const Arrangement& a) {
  if (a.k() != 2 || a.n() != 8) throw std::invalid_argument("eight_line_report needs 8 lines in the plane");
  if (!all_maximal_minors_nonzero(a)) throw std::invalid_argument("eight_line_report needs a generic arrangement");
  const auto deltas = delta_table(a);
  RankOracle oracle(a);
  std::vector<EightLineHit> hits;
  for (const auto& family : eight_line_families()) {
    const int m = family.presentation.n();
    std::set<std::vector<std::uint64_t>> seen;
    std::vector<int> perm(8);
    std::iota(perm.begin(), perm.end(), 1);
    do {
      const std::vector<int> sigma(perm.begin(), perm.begin() + m);
      std::vector<IndexSet> image;
      for (const auto& s : family.presentation.members()) image.push_back(permute(s, sigma));
      canonical_sort(image);
      std::vector<std::uint64_t> key;
      for (const auto& s : image) key.push_back(s.bits());
      if (!seen.insert(key).second) continue;
      if (sgn(family.equation.relabel(sigma).evaluate(deltas)) != 0) continue;
      EightLineHit hit{family.name, sigma, Presentation(8, 2, image), family.r, 0, false};
      const auto verdict = membership(oracle, image, family.r, FieldMode::rational());
      hit.rank = verdict.rank_certificate;
      hit.member = verdict.member;
      hits.push_back(std::move(hit));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return hits;
}

}  // namespace discrarr
