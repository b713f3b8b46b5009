#include <doctest.h>

#include <random>

#include "discrarr/arrangement.hpp"
#include "discrarr/errors.hpp"
#include "fixtures.hpp"

using namespace discrarr;
using fixtures::circuits_oracle;
using fixtures::crapo;
using fixtures::sorted;

namespace {

std::vector<IndexSet> sets(std::initializer_list<std::initializer_list<int>> s) {
  std::vector<IndexSet> out;
  for (auto x : s) out.push_back(IndexSet(x));
  return sorted(out);
}

IndexSet renumber_after_delete(const IndexSet& s, int i) {
  IndexSet out;
  for (int x : s.indices()) out.insert(x < i ? x : x - 1);
  return out;
}

// Minimal nonempty sets among {C \ {i}} over all circuits C: circuits of the contraction.
std::vector<IndexSet> contraction_circuits(const std::vector<IndexSet>& cs, int i) {
  std::vector<IndexSet> cand;
  for (const auto& c : cs) {
    IndexSet d = c;
    d.erase(i);
    if (!d.empty()) cand.push_back(d);
  }
  std::vector<IndexSet> out;
  for (const auto& c : cand) {
    bool minimal = true;
    for (const auto& d : cand)
      if (d != c && d.is_subset_of(c)) minimal = false;
    const IndexSet r = renumber_after_delete(c, i);
    if (minimal && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  return sorted(out);
}

bool has_parallel_to(const Arrangement& a, int i) {
  for (int j = 1; j <= a.n(); ++j)
    if (j != i && a.span_rank(IndexSet{i, j}) == 1) return true;
  return false;
}

}  // namespace

TEST_CASE("circuits examples") {
  CHECK(sorted(circuits(fixtures::section5_example())) == sets({{1, 2}, {1, 3, 4}, {2, 3, 4}}));
  std::vector<IndexSet> triples;
  for_each_subset_of_size(6, 3, [&](IndexSet s) { triples.push_back(s); });
  CHECK(sorted(circuits(crapo(3))) == sorted(triples));
  CHECK(circuits(Arrangement::from_integer_normals(2, {{1, 1}})).empty());
}

TEST_CASE("genericity examples") {
  CHECK(is_generic(crapo(3)));
  CHECK_FALSE(is_generic(crapo(2)));
  CHECK_FALSE(is_generic(fixtures::section5_example()));
  CHECK(all_maximal_minors_nonzero(crapo(3)));
  CHECK_FALSE(all_maximal_minors_nonzero(crapo(2)));
}

TEST_CASE("delta examples") {
  const auto a = crapo(Rational(7, 3));
  CHECK(delta(a, 2, 4) == 3);
  for (int i = 1; i <= 6; ++i) CHECK(delta(a, i, i) == 0);
  CHECK(delta(a, 2, 6) == 2 - Rational(7, 3));
  for (int i = 1; i <= 6; ++i)
    for (int j = 1; j <= 6; ++j) CHECK(delta(a, i, j) == -delta(a, j, i));
  CHECK_THROWS_AS(delta(fixtures::ten_lines(), 1, 2), std::invalid_argument);
}

TEST_CASE("maximal minor") {
  const auto a = crapo(5);
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) CHECK(maximal_minor(a, IndexSet{i, j}) == delta(a, i, j));
  CHECK_THROWS_AS(maximal_minor(fixtures::nine_lines(), IndexSet{1, 2, 9}), std::invalid_argument);
  const auto ten = fixtures::ten_lines();
  // Columns 1, 2, 5 of the 3 x 10 matrix by permutation expansion: 20*10 = 200, with sign.
  const Rational oracle = fixtures::leibniz_det(ten.columns(IndexSet{1, 2, 5}));
  CHECK(oracle == -200);
  CHECK(maximal_minor(ten, IndexSet{1, 2, 5}) == oracle);
}

TEST_CASE("delete examples") {
  const auto d = delete_hyperplane(fixtures::section5_example(), 2);
  CHECK(sorted(circuits(d)) == sets({{1, 2, 3}}));
  const auto g = random_generic(6, 2, 5, 20).arrangement;
  CHECK(is_generic(delete_hyperplane(g, 4)));
  CHECK(delete_hyperplane(g, 4).n() == 5);
  const auto empty = delete_hyperplane(Arrangement::from_integer_normals(2, {{1, 3}}), 1);
  CHECK(empty.n() == 0);
  CHECK_FALSE(empty.essential());
  CHECK_THROWS_AS(delete_hyperplane(g, 7), std::out_of_range);
  CHECK_THROWS_AS(delete_hyperplane(g, 0), std::out_of_range);
}

TEST_CASE("restrict examples") {
  const auto g = random_generic(6, 2, 11, 20).arrangement;
  const auto r = restrict_to(g, 1);
  CHECK(r.k() == 1);
  CHECK(r.n() == 5);
  CHECK(is_generic(r));
  for (int i = 1; i <= 5; ++i) CHECK(sgn(r.normal(i)[0]) != 0);
  // Rank 1: every pair is a circuit, so the discriminantal arrangement is the braid arrangement.
  const auto pairs = circuits(r);
  CHECK(pairs.size() == 10);
  for (const auto& c : pairs) CHECK(c.size() == 2);

  // Section 5 example on H3 = {y = 0}: normals 1, 2, 4 restrict to 1, 2, 1.
  const auto s = restrict_to(fixtures::section5_example(), 3);
  REQUIRE(s.n() == 3);
  CHECK(s.normal(1)[0] == s.normal(3)[0]);
  CHECK(s.normal(2)[0] == 2 * s.normal(1)[0]);
  CHECK_THROWS_AS(restrict_to(r, 1), std::invalid_argument);
  CHECK_THROWS_AS(restrict_to(fixtures::section5_example(), 1), std::invalid_argument);
}

TEST_CASE("normal form") {
  const auto a = crapo(-1);
  const auto nf = normal_form(a);
  CHECK(normal_form(nf) == nf);
  for (int i = 1; i <= 2; ++i)
    for (int r = 0; r < 2; ++r) CHECK(nf.normal(i)[static_cast<std::size_t>(r)] == (r == i - 1 ? 1 : 0));
  for (int i = 3; i <= 6; ++i) CHECK(nf.normal(i)[1] == 1);
  CHECK(nf.normal(3)[0] == 1);
  CHECK(sorted(circuits(nf)) == sorted(circuits(a)));
  const auto one = normal_form(Arrangement::from_integer_normals(1, {{2}, {3}, {5}}));
  for (int i = 1; i <= 3; ++i) CHECK(one.normal(i)[0] == 1);
  CHECK_THROWS_AS(normal_form(fixtures::section5_example()), std::invalid_argument);

  const auto ten = normal_form(fixtures::ten_lines());
  CHECK(normal_form(ten) == ten);
  for (int i = 4; i <= 10; ++i) CHECK(ten.normal(i)[2] == 1);
  for (int r = 0; r < 3; ++r) CHECK(ten.normal(4)[static_cast<std::size_t>(r)] == 1);
}

TEST_CASE("random generic sampling") {
  const auto a = random_generic(6, 2, 1, 10);
  const auto b = random_generic(6, 2, 1, 10);
  CHECK(a.arrangement == b.arrangement);
  CHECK(a.resamples == b.resamples);
  CHECK_FALSE(random_generic(6, 2, 2, 10).arrangement == a.arrangement);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_generic(7, 3, seed, 5).arrangement;
    CHECK(sorted(circuits(s)) == circuits_oracle(s));
    for (const auto& c : circuits(s)) CHECK(c.size() == 4);
    for (const auto& v : s.normals())
      for (const auto& x : v) {
        CHECK(x.get_den() == 1);
        CHECK(abs(x) <= 5);
      }
  }
  CHECK_THROWS_AS(random_generic(3, 4, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(random_generic(10, 2, 1, 1, 50), BudgetExhausted);
}

TEST_CASE("circuit properties on random multiarrangements") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 3);
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto a = fixtures::random_multiarrangement(n, k, rng, 1 + static_cast<int>(rng() % 2));
    const auto cs = sorted(circuits(a));
    CHECK(cs == circuits_oracle(a));
    for (const auto& c : cs)
      for (const auto& d : cs)
        if (c != d) CHECK_FALSE(c.is_subset_of(d));

    // Generic iff all circuits have size k+1 iff all maximal minors are nonzero.
    bool sizes = true;
    for (const auto& c : cs) sizes &= c.size() == k + 1;
    CHECK(is_generic(a) == sizes);
    if (n >= k) {
      bool minors = true;
      for_each_subset_of_size(n, k, [&](IndexSet s) { minors &= sgn(maximal_minor(a, s)) != 0; });
      CHECK(all_maximal_minors_nonzero(a) == minors);
      CHECK(is_generic(a) == minors);
    }

    // Deletion keeps exactly the circuits avoiding i.
    const int i = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    std::vector<IndexSet> kept;
    for (const auto& c : cs)
      if (!c.contains(i)) kept.push_back(renumber_after_delete(c, i));
    CHECK(sorted(circuits(delete_hyperplane(a, i))) == sorted(kept));

    // Restriction: the contraction circuit formula, when no other normal is parallel to alpha_i.
    if (k >= 2 && !has_parallel_to(a, i)) {
      const auto r = restrict_to(a, i);
      CHECK(r.k() == k - 1);
      CHECK(sorted(circuits(r)) == contraction_circuits(cs, i));
    }

    if (k == 2 && n >= 2) {
      for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) CHECK(delta(a, x, y) == -delta(a, y, x));
    }
  }
}

TEST_CASE("normal form preserves circuits and spans") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int k = 2 + static_cast<int>(seed % 2);
    const auto a = random_generic(7, k, seed, 9).arrangement;
    const auto nf = normal_form(a);
    CHECK(normal_form(nf) == nf);
    CHECK(sorted(circuits(nf)) == sorted(circuits(a)));
    for_each_subset_of_size(7, k, [&](IndexSet s) { CHECK(nf.span_rank(s) == a.span_rank(s)); });
  }
}

TEST_CASE("permute arrangement") {
  const auto a = crapo(3);
  const std::vector<int> sigma{2, 3, 1, 5, 6, 4};
  const auto p = permute(a, sigma);
  for (int i = 1; i <= 6; ++i) CHECK(p.normal(sigma[static_cast<std::size_t>(i - 1)]) == a.normal(i));
  CHECK_THROWS(permute(a, {1, 1, 2, 3, 4, 5}));
  CHECK_THROWS(permute(a, {1, 2, 3}));
}

TEST_CASE("construction guards") {
  using V = RationalVector;
  CHECK_THROWS_AS(Arrangement(2, {V{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Arrangement(2, {V{1, 0, 0}}), std::invalid_argument);
  CHECK(Arrangement(2, {V{1, 0}, V{2, 0}}).essential() == false);
  CHECK(crapo(3).essential());
}
