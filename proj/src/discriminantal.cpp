#include "discrarr/discriminantal.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace discrarr {

namespace {

void check_family(const Arrangement& a, const std::vector<IndexSet>& family) {
  for (const auto& s : family) {
    if (s.size() < 2) throw std::invalid_argument("member " + s.to_string(true) + " has fewer than two elements");
    if (s.max() > a.n()) throw std::out_of_range("member " + s.to_string(true) + " exceeds the arrangement size");
  }
}

RationalVector embed(const RationalVector& local, const IndexSet& s, int n) {
  RationalVector out(static_cast<std::size_t>(n), Rational(0));
  const auto idx = s.indices();
  for (std::size_t c = 0; c < idx.size(); ++c) out[static_cast<std::size_t>(idx[c] - 1)] = local[c];
  return out;
}

std::vector<RationalVector> stacked_dependencies(const Arrangement& a, const std::vector<IndexSet>& family) {
  std::vector<RationalVector> rows;
  for (const auto& s : family) {
    auto space = dependency_space(a, s);
    for (auto& v : space.basis) rows.push_back(std::move(v));
  }
  return rows;
}

RationalMatrix rows_to_matrix(const std::vector<RationalVector>& rows, std::size_t cols) {
  return RationalMatrix::from_rows(rows, cols);
}

template <class E>
std::size_t rank_of_rows(const PrimeField& f, const std::vector<const std::vector<E>*>& rows, std::size_t cols) {
  Matrix<E> m(rows.size(), cols, f.zero());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = (*rows[r])[c];
  return rank(f, std::move(m));
}

}  // namespace

CircuitNormal circuit_normal(const Arrangement& a, const IndexSet& c) {
  if (c.empty() || c.max() > a.n()) throw std::invalid_argument("circuit indices outside the arrangement");
  const auto cols = a.columns(c);
  const auto kernel = kernel_basis(cols);
  const bool full_support = kernel.size() == 1 && std::all_of(kernel.front().begin(), kernel.front().end(),
                                                               [](const Rational& x) { return sgn(x) != 0; });
  if (!full_support) throw std::invalid_argument(c.to_string(true) + " is not a circuit");
  const auto idx = c.indices();
  RationalVector local(idx.size());
  if (c.size() == a.k() + 1) {
    // Laplace expansion along a formal first row of ones.
    for (std::size_t m = 0; m < idx.size(); ++m) {
      IndexSet minor = c;
      minor.erase(idx[m]);
      const Rational d = det(a.columns(minor));
      local[m] = (m % 2 == 0) ? d : Rational(-d);
    }
  } else {
    const Rational scale = kernel.front().back();
    for (std::size_t m = 0; m < idx.size(); ++m) local[m] = kernel.front()[m] / scale;
  }
  return {c, embed(local, c, a.n())};
}

DependencySpace dependency_space(const Arrangement& a, const IndexSet& s) {
  if (s.empty()) throw std::invalid_argument("dependency space of an empty subset");
  if (s.max() > a.n()) throw std::out_of_range("subset exceeds the arrangement size");
  DependencySpace out{s, {}};
  for (const auto& v : kernel_basis(a.columns(s))) out.basis.push_back(embed(v, s, a.n()));
  return out;
}

std::size_t intersection_rank(const Arrangement& a, const std::vector<IndexSet>& family) {
  check_family(a, family);
  const auto rows = stacked_dependencies(a, family);
  if (rows.empty()) return 0;
  return rank(rows_to_matrix(rows, static_cast<std::size_t>(a.n())));
}

std::size_t intersection_rank(const Arrangement& a, const Presentation& t) {
  return intersection_rank(a, t.members());
}

std::size_t intersection_rank(const Arrangement& a, const std::vector<IndexSet>& family, const FieldMode& field) {
  if (field.kind == FieldMode::Kind::Rational) return intersection_rank(a, family);
  check_family(a, family);
  RankOracle oracle(a, field.prime);
  return oracle.rank_fp(family);
}

bool translation_in_DS(const Arrangement& a, const TranslationVector& t, const IndexSet& s) {
  if (t.size() != static_cast<std::size_t>(a.n()))
    throw std::invalid_argument("translation length " + std::to_string(t.size()) + " does not match n = " +
                                std::to_string(a.n()));
  if (s.empty()) return true;
  for (const auto& v : dependency_space(a, s).basis) {
    Rational dot = 0;
    for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * t[i];
    if (sgn(dot) != 0) return false;
  }
  return true;
}

Presentation canonical_presentation(const Arrangement& a, const TranslationVector& t) {
  const int n = a.n();
  const int k = a.k();
  if (t.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("translation length " + std::to_string(t.size()) + " does not match n = " +
                                std::to_string(n));
  if (n == 0) return Presentation(0, k, {});
  const int total_rank = static_cast<int>(a.span_rank(IndexSet::range(n)));
  bool has_pair_circuit = false;
  for (int i = 1; i <= n && !has_pair_circuit; ++i)
    for (int j = i + 1; j <= n && !has_pair_circuit; ++j)
      if (a.span_rank(IndexSet{i, j}) == 1) has_pair_circuit = true;
  const int min_size = has_pair_circuit ? 2 : k + 1;

  // Every maximal concurrent set contains a basis of the normal span, so it is the
  // set of hyperplanes through the point cut out by some basis.
  std::vector<IndexSet> concurrent;
  for_each_subset_of_size(n, total_rank, [&](IndexSet basis) {
    if (static_cast<int>(a.span_rank(basis)) != total_rank) return;
    const auto idx = basis.indices();
    RationalMatrix m(idx.size(), static_cast<std::size_t>(k), Rational(0));
    RationalVector rhs(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      for (int c = 0; c < k; ++c) m(r, static_cast<std::size_t>(c)) = a.normal(idx[r])[static_cast<std::size_t>(c)];
      rhs[r] = t[static_cast<std::size_t>(idx[r] - 1)];
    }
    const auto x = solve(m, rhs);
    if (!x) return;
    IndexSet through;
    for (int i = 1; i <= n; ++i) {
      Rational dot = 0;
      for (int c = 0; c < k; ++c) dot += a.normal(i)[static_cast<std::size_t>(c)] * (*x)[static_cast<std::size_t>(c)];
      if (dot == t[static_cast<std::size_t>(i - 1)]) through.insert(i);
    }
    if (through.size() >= min_size && static_cast<int>(a.span_rank(through)) < through.size() &&
        std::find(concurrent.begin(), concurrent.end(), through) == concurrent.end())
      concurrent.push_back(through);
  });
  std::vector<IndexSet> maximal;
  for (const auto& s : concurrent) {
    const bool dominated = std::any_of(concurrent.begin(), concurrent.end(),
                                       [&](const IndexSet& o) { return o != s && s.is_subset_of(o); });
    if (!dominated) maximal.push_back(s);
  }
  return Presentation(n, k, std::move(maximal));
}

RepresentativeResult representative(const Arrangement& a, const Presentation& t, std::uint64_t seed, int budget) {
  if (t.n() != a.n() || t.k() != a.k())
    throw std::invalid_argument("presentation context (n, k) does not match the arrangement");
  if (budget < 1) throw std::invalid_argument("representative budget must be positive");
  const auto rows = stacked_dependencies(a, t.members());
  const auto n = static_cast<std::size_t>(a.n());
  std::vector<RationalVector> kernel;
  if (rows.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      RationalVector e(n, Rational(0));
      e[i] = 1;
      kernel.push_back(std::move(e));
    }
  } else {
    kernel = kernel_basis(rows_to_matrix(rows, n));
  }
  RepresentativeResult out;
  out.seed = seed;
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < budget; ++attempt) {
    TranslationVector w(n, Rational(0));
    if (attempt > 0) {
      const long height = 2 + attempt;
      std::uniform_int_distribution<long> coeff(-height, height);
      for (const auto& v : kernel) {
        const Rational c(coeff(rng));
        for (std::size_t i = 0; i < n; ++i) w[i] += c * v[i];
      }
    }
    out.attempts = attempt + 1;
    auto achieved = canonical_presentation(a, w);
    if (achieved == t) {
      out.witness = std::move(w);
      out.achieved.reset();
      return out;
    }
    out.achieved = std::move(achieved);
  }
  return out;
}

RationalVector primitive_integer(const RationalVector& v) {
  mpz_class denominators = 1;
  for (const auto& x : v) denominators = lcm(denominators, x.get_den());
  mpz_class content = 0;
  for (const auto& x : v) content = gcd(content, mpz_class(x.get_num() * (denominators / x.get_den())));
  RationalVector out;
  out.reserve(v.size());
  for (const auto& x : v) {
    mpz_class scaled = x.get_num() * (denominators / x.get_den());
    if (content != 0) scaled /= content;
    out.emplace_back(scaled);
  }
  return out;
}

RankOracle::RankOracle(const Arrangement& a, std::uint64_t prime) : a_(a), field_(prime) {}

const RankOracle::Entry& RankOracle::entry(const IndexSet& s) {
  if (frozen_) {
    const auto it = cache_.find(s);
    if (it == cache_.end()) throw std::logic_error("subset " + s.to_string(true) + " missing from a frozen rank cache");
    return it->second;
  }
  {
    std::lock_guard lock(mutex_);
    const auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
  }
  Entry e;
  e.q = dependency_space(a_, s).basis;
  for (const auto& v : e.q) {
    std::vector<PrimeField::Element> row;
    row.reserve(v.size());
    for (const auto& x : primitive_integer(v)) row.push_back(field_.from_rational(x));
    e.fp.push_back(std::move(row));
  }
  std::lock_guard lock(mutex_);
  // unordered_map keeps references stable across rehashing.
  return cache_.emplace(s, std::move(e)).first->second;
}

void RankOracle::prefill(int max_size) {
  for (int size = 2; size <= std::min(max_size, a_.n()); ++size)
    for_each_subset_of_size(a_.n(), size, [&](IndexSet s) { entry(s); });
  frozen_ = true;
}

std::size_t RankOracle::rank_q(const std::vector<IndexSet>& family) {
  check_family(a_, family);
  std::vector<RationalVector> rows;
  for (const auto& s : family)
    for (const auto& v : entry(s).q) rows.push_back(v);
  if (rows.empty()) return 0;
  return rank(rows_to_matrix(rows, static_cast<std::size_t>(a_.n())));
}

std::size_t RankOracle::rank_fp(const std::vector<IndexSet>& family) {
  check_family(a_, family);
  std::vector<const std::vector<PrimeField::Element>*> rows;
  for (const auto& s : family)
    for (const auto& v : entry(s).fp) rows.push_back(&v);
  if (rows.empty()) return 0;
  return rank_of_rows(field_, rows, static_cast<std::size_t>(a_.n()));
}

}  // namespace discrarr
