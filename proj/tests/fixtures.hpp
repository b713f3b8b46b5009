#pragma once

// Worked arrangements and slow, independent oracles shared by the test binaries.
// Oracles avoid the library's elimination code: determinants by permutation
// expansion, ranks by largest nonzero minor, concurrency by direct substitution.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "discrarr/arrangement.hpp"
#include "discrarr/discriminantal.hpp"
#include "discrarr/exact.hpp"
#include "discrarr/index_set.hpp"
#include "discrarr/presentation.hpp"

namespace fixtures {

using discrarr::Arrangement;
using discrarr::IndexSet;
using discrarr::Presentation;
using discrarr::Rational;
using discrarr::RationalMatrix;
using discrarr::RationalVector;

inline Arrangement crapo(const Rational& lambda) {
  using V = RationalVector;
  return Arrangement(2, {V{1, 0}, V{2, 1}, V{1, 1}, V{1, 2}, V{0, 1}, V{lambda, 1}});
}

inline Arrangement section5_example() { return Arrangement::from_integer_normals(2, {{1, 0}, {2, 0}, {0, 1}, {1, 1}}); }

// Columns of the 3 x 10 matrix; entry (1,9) is the first coordinate of normal 9.
inline std::vector<std::vector<long>> ten_line_columns() {
  return {{0, 10, 3}, {20, 0, -9}, {2, -3, 0},   {3, 1, 0},       {0, 0, 1},
          {1, -1, 1}, {1, 2, 2},   {4, -1, -3}, {314, -40, -197}, {139, 30, -43}};
}

inline Arrangement ten_lines() { return Arrangement::from_integer_normals(3, ten_line_columns()); }

inline Arrangement ten_lines_perturbed() {
  auto cols = ten_line_columns();
  cols[8][0] += 1;
  return Arrangement::from_integer_normals(3, cols);
}

inline Presentation ten_line_family() {
  return discrarr::parse_presentation("[1 2 3 4],[1 5 6 7],[2 5 8 9],[3 6 8 10],[4 7 9 10]", 10, 3);
}

inline Arrangement nine_lines() {
  std::vector<std::vector<long>> cols;
  for (long i = 1; i <= 9; ++i) cols.push_back({i - 5, 1});
  return Arrangement::from_integer_normals(2, cols);
}

inline Presentation t0() { return discrarr::parse_presentation("123,456,789,147,258,369", 9, 2); }

// T1..T9 are 8-wheels (r = 5); T10..T15 are degenerated 12-wheels (r = 6).
inline std::vector<std::string> nine_line_varieties() {
  return {"123,456,147,258,3678", "123,789,147,258,3459", "123,456,147,369,2579",
          "123,789,147,369,2468", "123,456,258,369,1489", "123,789,258,369,1567",
          "456,789,147,258,1269", "456,789,147,369,1358", "456,789,258,369,2347",
          "123,456,789,147,258,369,159", "123,456,789,147,258,369,168", "123,456,789,147,258,369,249",
          "123,456,789,147,258,369,267", "123,456,789,147,258,369,348", "123,456,789,147,258,369,357"};
}

// ---- determinant and rank oracles ----

inline Rational leibniz_det(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, p[i]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

inline RationalMatrix submatrix(const RationalMatrix& m, const std::vector<std::size_t>& rows,
                                const std::vector<std::size_t>& cols) {
  RationalMatrix s(rows.size(), cols.size(), Rational(0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = m(rows[i], cols[j]);
  return s;
}

inline void for_each_combination(std::size_t n, std::size_t r, const auto& fn) {
  if (r > n) return;
  std::vector<std::size_t> c(r);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    fn(c);
    std::size_t i = r;
    while (i > 0 && c[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
  }
}

// Largest r with a nonzero r x r minor. Only for small matrices.
inline std::size_t minor_rank(const RationalMatrix& m) {
  for (std::size_t r = std::min(m.rows(), m.cols()); r > 0; --r) {
    bool found = false;
    for_each_combination(m.rows(), r, [&](const std::vector<std::size_t>& rows) {
      if (found) return;
      for_each_combination(m.cols(), r, [&](const std::vector<std::size_t>& cols) {
        if (!found && sgn(leibniz_det(submatrix(m, rows, cols))) != 0) found = true;
      });
    });
    if (found) return r;
  }
  return 0;
}

// ---- arrangement oracles ----

inline std::size_t span_rank_oracle(const Arrangement& a, const IndexSet& s) {
  if (s.empty()) return 0;
  return minor_rank(a.columns(s));
}

inline std::vector<IndexSet> circuits_oracle(const Arrangement& a) {
  std::vector<IndexSet> out;
  for (int size = 1; size <= std::min(a.n(), a.k() + 1); ++size) {
    discrarr::for_each_subset_of_size(a.n(), size, [&](IndexSet s) {
      if (span_rank_oracle(a, s) == static_cast<std::size_t>(size)) return;
      for (int i : s.indices()) {
        IndexSet t = s;
        t.erase(i);
        if (span_rank_oracle(a, t) < static_cast<std::size_t>(t.size())) return;
      }
      out.push_back(s);
    });
  }
  std::sort(out.begin(), out.end(), [](const IndexSet& x, const IndexSet& y) { return canonical_less(x, y); });
  return out;
}

inline std::vector<IndexSet> sorted(std::vector<IndexSet> v) {
  std::sort(v.begin(), v.end(), [](const IndexSet& x, const IndexSet& y) { return canonical_less(x, y); });
  return v;
}

// Codim of the intersection of the D_S: for k = 2, D_S^perp is spanned by the 2x2-minor
// dependencies of (p, q, x) for a fixed independent pair p, q in S and every other x.
// Independent of the library's kernel computation.
inline std::size_t intersection_rank_oracle_k2(const Arrangement& a, const std::vector<IndexSet>& family) {
  std::vector<RationalVector> rows;
  auto det2 = [&](int i, int j) -> Rational { return a.normal(i)[0] * a.normal(j)[1] - a.normal(i)[1] * a.normal(j)[0]; };
  for (const auto& s : family) {
    const auto idx = s.indices();
    int p = idx[0], q = -1;
    for (int x : idx)
      if (x != p && sgn(det2(p, x)) != 0) {
        q = x;
        break;
      }
    if (q < 0) {
      // All parallel: dependencies c_x alpha_p - c_p alpha_x for every x.
      for (int x : idx) {
        if (x == p) continue;
        RationalVector v(static_cast<std::size_t>(a.n()), Rational(0));
        const int c = sgn(a.normal(p)[0]) != 0 ? 0 : 1;
        v[static_cast<std::size_t>(p - 1)] = a.normal(x)[static_cast<std::size_t>(c)];
        v[static_cast<std::size_t>(x - 1)] = -a.normal(p)[static_cast<std::size_t>(c)];
        rows.push_back(v);
      }
      continue;
    }
    for (int x : idx) {
      if (x == p || x == q) continue;
      // det(q,x) alpha_p - det(p,x) alpha_q + det(p,q) alpha_x = 0
      RationalVector v(static_cast<std::size_t>(a.n()), Rational(0));
      v[static_cast<std::size_t>(p - 1)] = det2(q, x);
      v[static_cast<std::size_t>(q - 1)] = -det2(p, x);
      v[static_cast<std::size_t>(x - 1)] = det2(p, q);
      rows.push_back(v);
    }
  }
  if (rows.empty()) return 0;
  // Plain forward elimination, written out here.
  std::size_t rank = 0;
  const std::size_t cols = static_cast<std::size_t>(a.n());
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && sgn(rows[piv][c]) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

// True iff the translated lines indexed by s share a point (k = 2), by direct substitution.
inline bool concurrent_oracle_k2(const Arrangement& a, const RationalVector& t, const IndexSet& s) {
  const auto idx = s.indices();
  for (std::size_t x = 0; x < idx.size(); ++x)
    for (std::size_t y = x + 1; y < idx.size(); ++y) {
      const auto& u = a.normal(idx[x]);
      const auto& v = a.normal(idx[y]);
      const Rational d = u[0] * v[1] - u[1] * v[0];
      if (sgn(d) == 0) continue;
      const Rational& tu = t[static_cast<std::size_t>(idx[x] - 1)];
      const Rational& tv = t[static_cast<std::size_t>(idx[y] - 1)];
      const Rational px = (tu * v[1] - u[1] * tv) / d;
      const Rational py = (u[0] * tv - tu * v[0]) / d;
      for (int i : idx)
        if (a.normal(i)[0] * px + a.normal(i)[1] * py != t[static_cast<std::size_t>(i - 1)]) return false;
      return true;
    }
  // All parallel: concurrent only if they coincide as translated lines.
  for (int i : idx)
    for (int j : idx) {
      const auto& u = a.normal(i);
      const auto& v = a.normal(j);
      const int c = sgn(u[0]) != 0 ? 0 : 1;
      if (u[static_cast<std::size_t>(c)] * t[static_cast<std::size_t>(j - 1)] !=
          v[static_cast<std::size_t>(c)] * t[static_cast<std::size_t>(i - 1)])
        return false;
    }
  return true;
}

// ---- combinatorial oracles ----

// Minimum serialized form over all n! relabelings.
inline Presentation brute_canonical_form(const Presentation& t) {
  std::vector<int> sigma(static_cast<std::size_t>(t.n()));
  std::iota(sigma.begin(), sigma.end(), 1);
  std::optional<Presentation> best;
  do {
    auto p = discrarr::permute(t, sigma);
    if (!best || serialized_less(p, *best)) best = p;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return *best;
}

// Every Q(n,k) family whose members are drawn from subsets of [n] with size >= k+1, with
// nu <= nu_max. Members are added in canonical order; no other pruning.
inline std::vector<std::vector<IndexSet>> all_q_families(int n, int k, int nu_max) {
  std::vector<IndexSet> pool;
  for (int size = k + 1; size <= n; ++size) discrarr::for_each_subset_of_size(n, size, [&](IndexSet s) { pool.push_back(s); });
  std::vector<std::vector<IndexSet>> out;
  std::vector<IndexSet> cur;
  auto rec = [&](auto&& self, std::size_t start, int nu_used) -> void {
    out.push_back(cur);
    for (std::size_t i = start; i < pool.size(); ++i) {
      const int cost = pool[i].size() - k;
      if (nu_used + cost > nu_max) continue;
      bool ok = true;
      for (const auto& s : cur)
        if ((s & pool[i]).size() >= k || s.is_subset_of(pool[i]) || pool[i].is_subset_of(s)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(pool[i]);
      self(self, i + 1, nu_used + cost);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

// Condition (P) straight from the definition: every subfamily with >= 2 members has
// nu({union}) > nu(subfamily).
inline bool bba_oracle(const std::vector<IndexSet>& members, int k) {
  const std::size_t m = members.size();
  for (std::uint64_t mask = 1; mask < (1ULL << m); ++mask) {
    if (std::popcount(mask) < 2) continue;
    IndexSet u;
    int nu_sub = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) {
        u = u | members[i];
        nu_sub += members[i].size() - k;
      }
    if (u.size() - k <= nu_sub) return false;
  }
  return true;
}

// Random Q(n,k) family: members of size k+1..k+max_extra+1 drawn at random and kept when
// (Q0) and (Q2) still hold.
inline std::vector<IndexSet> random_q_family(int n, int k, std::mt19937_64& rng, int attempts = 12, int max_extra = 2) {
  std::vector<IndexSet> out;
  for (int a = 0; a < attempts; ++a) {
    const int size = k + 1 + static_cast<int>(rng() % static_cast<unsigned>(max_extra + 1));
    if (size > n) continue;
    auto perm = std::vector<int>(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    IndexSet s;
    for (int i = 0; i < size; ++i) s.insert(perm[static_cast<std::size_t>(i)]);
    bool ok = true;
    for (const auto& m : out)
      if ((m & s).size() >= k) ok = false;
    if (ok) out.push_back(s);
  }
  discrarr::canonical_sort(out);
  return out;
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Random multiarrangement with small entries so that dependencies and parallels occur.
inline Arrangement random_multiarrangement(int n, int k, std::mt19937_64& rng, int height = 2) {
  std::uniform_int_distribution<long> d(-height, height);
  std::vector<std::vector<long>> cols;
  while (static_cast<int>(cols.size()) < n) {
    std::vector<long> v(static_cast<std::size_t>(k));
    bool nonzero = false;
    for (auto& x : v) {
      x = d(rng);
      nonzero |= x != 0;
    }
    if (nonzero) cols.push_back(v);
  }
  return Arrangement::from_integer_normals(k, cols);
}

// Structural filter of the audit's candidate families, applied to a raw family on [m]:
// support exactly [m], every index in two members, 2m/3 <= nu <= m - 2.
inline bool candidate_shape(const std::vector<IndexSet>& members, int m) {
  IndexSet u;
  int nu = 0;
  for (const auto& s : members) {
    u = u | s;
    nu += s.size() - 2;
  }
  if (u.size() != m || (m > 0 && !u.contains(m))) return false;
  for (int i = 1; i <= m; ++i) {
    int c = 0;
    for (const auto& s : members) c += s.contains(i);
    if (c < 2) return false;
  }
  return 3 * nu >= 2 * m && nu <= m - 2;
}

// Audit of a k = 2 arrangement by exhaustion: every Q(n,2) family with nu <= n - 2 whose
// support, relabeled in increasing order onto [m], has the candidate shape and whose
// oracle rank drops below nu. Keys are presentation strings on [n].
inline std::map<std::string, std::size_t> audit_oracle_k2(const Arrangement& a) {
  const int n = a.n();
  std::map<std::string, std::size_t> out;
  for (const auto& fam : all_q_families(n, 2, n - 2)) {
    IndexSet u;
    int nu = 0;
    for (const auto& s : fam) {
      u = u | s;
      nu += s.size() - 2;
    }
    const auto order = u.indices();
    std::vector<IndexSet> relabeled;
    for (const auto& s : fam) {
      IndexSet r;
      for (std::size_t j = 0; j < order.size(); ++j)
        if (s.contains(order[j])) r.insert(static_cast<int>(j) + 1);
      relabeled.push_back(r);
    }
    if (!candidate_shape(relabeled, u.size())) continue;
    const auto rank = intersection_rank_oracle_k2(a, fam);
    if (static_cast<int>(rank) < nu) out[Presentation(n, 2, fam).to_string()] = rank;
  }
  return out;
}

}  // namespace fixtures
