#include "discrarr/arrangement.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

#include "discrarr/errors.hpp"

namespace discrarr {

namespace {

bool is_zero_vector(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

void check_index(const Arrangement& a, int i) {
  if (i < 1 || i > a.n())
    throw std::out_of_range("hyperplane index " + std::to_string(i) + " outside [1, " + std::to_string(a.n()) + "]");
}

}  // namespace

Arrangement::Arrangement(int k, std::vector<RationalVector> normals) : k_(k), normals_(std::move(normals)) {
  if (k < 1) throw std::invalid_argument("ambient rank k must be at least 1");
  if (normals_.size() > 63) throw std::invalid_argument("at most 63 hyperplanes are supported");
  for (std::size_t i = 0; i < normals_.size(); ++i) {
    if (normals_[i].size() != static_cast<std::size_t>(k))
      throw std::invalid_argument("normal " + std::to_string(i + 1) + " has length " +
                                  std::to_string(normals_[i].size()) + ", expected " + std::to_string(k));
    if (is_zero_vector(normals_[i]))
      throw std::invalid_argument("normal " + std::to_string(i + 1) + " is zero");
  }
  essential_ = !normals_.empty() && discrarr::rank(matrix()) == static_cast<std::size_t>(k);
}

Arrangement Arrangement::from_integer_normals(int k, const std::vector<std::vector<long>>& normals) {
  std::vector<RationalVector> rows;
  rows.reserve(normals.size());
  for (const auto& v : normals) {
    RationalVector r;
    r.reserve(v.size());
    for (long x : v) r.emplace_back(x);
    rows.push_back(std::move(r));
  }
  return Arrangement(k, std::move(rows));
}

const RationalVector& Arrangement::normal(int i) const {
  check_index(*this, i);
  return normals_[static_cast<std::size_t>(i - 1)];
}

RationalMatrix Arrangement::columns(const IndexSet& s) const {
  const auto idx = s.indices();
  RationalMatrix m(static_cast<std::size_t>(k_), idx.size(), Rational(0));
  for (std::size_t c = 0; c < idx.size(); ++c) {
    const auto& v = normal(idx[c]);
    for (int r = 0; r < k_; ++r) m(static_cast<std::size_t>(r), c) = v[static_cast<std::size_t>(r)];
  }
  return m;
}

RationalMatrix Arrangement::matrix() const { return columns(IndexSet::range(n())); }

std::size_t Arrangement::span_rank(const IndexSet& s) const { return discrarr::rank(columns(s)); }

std::vector<IndexSet> circuits(const Arrangement& a) {
  std::vector<IndexSet> out;
  const int max_size = std::min(a.n(), a.k() + 1);
  for (int size = 2; size <= max_size; ++size) {
    for_each_subset_of_size(a.n(), size, [&](IndexSet s) {
      const auto kernel = kernel_basis(a.columns(s));
      if (kernel.size() != 1) return;
      const auto& v = kernel.front();
      if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; })) out.push_back(s);
    });
  }
  return out;
}

bool is_generic(const Arrangement& a) {
  for (const auto& c : circuits(a))
    if (c.size() != a.k() + 1) return false;
  return true;
}

bool all_maximal_minors_nonzero(const Arrangement& a) {
  if (a.n() < a.k()) return false;
  bool ok = true;
  for_each_subset_of_size(a.n(), a.k(), [&](IndexSet s) {
    if (ok && sgn(det(a.columns(s))) == 0) ok = false;
  });
  return ok;
}

Rational delta(const Arrangement& a, int i, int j) {
  if (a.k() != 2) throw std::invalid_argument("delta needs k = 2; use maximal_minor");
  const auto& u = a.normal(i);
  const auto& v = a.normal(j);
  return u[0] * v[1] - u[1] * v[0];
}

Rational maximal_minor(const Arrangement& a, const IndexSet& s) {
  if (s.size() != a.k())
    throw std::invalid_argument("maximal minor needs a " + std::to_string(a.k()) + "-subset, got " +
                                std::to_string(s.size()) + " indices");
  if (s.max() > a.n()) throw std::out_of_range("subset exceeds the ground set");
  return det(a.columns(s));
}

Arrangement delete_hyperplane(const Arrangement& a, int i) {
  check_index(a, i);
  std::vector<RationalVector> rest;
  rest.reserve(static_cast<std::size_t>(a.n() - 1));
  for (int j = 1; j <= a.n(); ++j)
    if (j != i) rest.push_back(a.normal(j));
  return Arrangement(a.k(), std::move(rest));
}

Arrangement restrict_to(const Arrangement& a, int i) {
  check_index(a, i);
  if (a.k() == 1) throw std::invalid_argument("cannot restrict a rank-1 arrangement");
  RationalMatrix row(1, static_cast<std::size_t>(a.k()), Rational(0));
  for (int c = 0; c < a.k(); ++c) row(0, static_cast<std::size_t>(c)) = a.normal(i)[static_cast<std::size_t>(c)];
  const auto basis = kernel_basis(row);  // k - 1 vectors spanning H_i
  std::vector<RationalVector> restricted;
  for (int j = 1; j <= a.n(); ++j) {
    if (j == i) continue;
    RationalVector v;
    v.reserve(basis.size());
    for (const auto& b : basis) {
      Rational dot = 0;
      for (int c = 0; c < a.k(); ++c) dot += a.normal(j)[static_cast<std::size_t>(c)] * b[static_cast<std::size_t>(c)];
      v.push_back(dot);
    }
    if (is_zero_vector(v))
      throw std::invalid_argument("normal " + std::to_string(j) + " is parallel to normal " + std::to_string(i) +
                                  "; its restriction is not a hyperplane");
    restricted.push_back(std::move(v));
  }
  return Arrangement(a.k() - 1, std::move(restricted));
}

Arrangement normal_form(const Arrangement& a) {
  const int k = a.k();
  const int n = a.n();
  if (!a.essential() || !all_maximal_minors_nonzero(a))
    throw std::invalid_argument("normal form needs a generic essential arrangement");
  // Left-multiply by the inverse of the first k columns.
  const auto head = a.columns(IndexSet::range(k));
  RationalMatrix inverse(static_cast<std::size_t>(k), static_cast<std::size_t>(k), Rational(0));
  {
    RationalMatrix aug(static_cast<std::size_t>(k), static_cast<std::size_t>(2 * k), Rational(0));
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) aug(r, c) = head(r, c);
      aug(r, k + r) = 1;
    }
    const auto ech = row_reduce(RationalField{}, aug);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) inverse(r, c) = ech.reduced(r, k + c);
  }
  std::vector<RationalVector> cols(static_cast<std::size_t>(n), RationalVector(static_cast<std::size_t>(k), Rational(0)));
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < k; ++r) {
      Rational s = 0;
      for (int c = 0; c < k; ++c) s += inverse(r, c) * a.normals()[j][c];
      cols[j][r] = s;
    }
  // Row scaling turns column k+1 into all ones; column scaling restores the identity block.
  if (n > k) {
    const RationalVector pivot = cols[static_cast<std::size_t>(k)];
    for (auto& col : cols)
      for (int r = 0; r < k; ++r) col[r] /= pivot[r];
  }
  for (int j = 0; j < k; ++j) {
    const Rational s = cols[j][j];
    for (int r = 0; r < k; ++r) cols[j][r] /= s;
  }
  // Scale the remaining columns so the last row is one.
  for (int j = k + 1; j < n; ++j) {
    const Rational s = cols[j][k - 1];
    for (int r = 0; r < k; ++r) cols[j][r] /= s;
  }
  return Arrangement(k, std::move(cols));
}

SampledArrangement random_generic(int n, int k, std::uint64_t seed, int height, int max_attempts) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (n < k) throw std::invalid_argument("n < k: the arrangement cannot be essential");
  if (height < 1) throw std::invalid_argument("height must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> entry(-height, height);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<std::vector<long>> normals(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(k)));
    bool has_zero = false;
    for (auto& v : normals) {
      for (auto& x : v) x = entry(rng);
      has_zero = has_zero || std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
    }
    if (has_zero) continue;
    auto a = Arrangement::from_integer_normals(k, normals);
    if (all_maximal_minors_nonzero(a)) return {std::move(a), attempt};
  }
  throw BudgetExhausted("no generic arrangement with n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                        " found within " + std::to_string(max_attempts) + " draws at height " +
                        std::to_string(height));
}

Arrangement permute(const Arrangement& a, const std::vector<int>& sigma) {
  if (static_cast<int>(sigma.size()) != a.n()) throw std::invalid_argument("permutation length must equal n");
  std::vector<RationalVector> out(sigma.size());
  std::vector<bool> seen(sigma.size(), false);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const int image = sigma[i];
    if (image < 1 || image > a.n() || seen[static_cast<std::size_t>(image - 1)])
      throw std::invalid_argument("not a permutation of [n]");
    seen[static_cast<std::size_t>(image - 1)] = true;
    out[static_cast<std::size_t>(image - 1)] = a.normals()[i];
  }
  return Arrangement(a.k(), std::move(out));
}

}  // namespace discrarr
