#include <doctest.h>

#include <random>

#include "discrarr/exact.hpp"
#include "fixtures.hpp"

using namespace discrarr;
using fixtures::leibniz_det;
using fixtures::minor_rank;

namespace {

RationalMatrix rows(const std::vector<std::vector<Rational>>& r) { return RationalMatrix::from_rows(r, r.empty() ? 0 : r[0].size()); }

// The four Crapo circuit normals written out by hand, as rows over e*_1..e*_6.
RationalMatrix crapo_stack(const Rational& l) {
  return rows({{1, -1, 1, 0, 0, 0},
               {-l, 0, 0, 0, -1, 1},
               {0, 1 - 2 * l, 0, l - 2, 0, 3},
               {0, 0, 1, -1, 1, 0}});
}

RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int h) {
  std::uniform_int_distribution<int> d(-h, h);
  std::uniform_int_distribution<int> den(1, 3);
  RationalMatrix m(r, c, Rational(0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      Rational q(d(rng), den(rng));
      q.canonicalize();
      m(i, j) = q;
    }
  return m;
}

// Low-rank matrix as a product of random factors so that rank deficiency is common.
RationalMatrix random_low_rank(std::mt19937_64& rng, std::size_t r, std::size_t c, std::size_t inner) {
  const auto a = random_matrix(rng, r, inner, 2);
  const auto b = random_matrix(rng, inner, c, 2);
  RationalMatrix m(r, c, Rational(0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t x = 0; x < inner; ++x) m(i, j) += a(i, x) * b(x, j);
  return m;
}

}  // namespace

TEST_CASE("rank of identity and the Crapo normal stack") {
  CHECK(rank(rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 3);
  CHECK(rank(crapo_stack(-1)) == 3);
  CHECK(rank(crapo_stack(3)) == 4);
  CHECK(rank(RationalMatrix(0, 0, Rational(0))) == 0);
}

TEST_CASE("kernel basis examples") {
  CHECK(kernel_basis(RationalMatrix(2, 3, Rational(0))).size() == 3);
  const auto k = kernel_basis(rows({{1, -1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == k[0][1]);
  CHECK(sgn(k[0][0]) != 0);
  const auto m = crapo_stack(-1);
  const auto kc = kernel_basis(m);
  CHECK(kc.size() == 3);
  for (const auto& v : kc)
    for (std::size_t r = 0; r < m.rows(); ++r) {
      Rational s = 0;
      for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * v[c];
      CHECK(s == 0);
    }
}

TEST_CASE("determinant examples") {
  CHECK(det(rows({{1, 0}, {2, 1}})) == 1);
  CHECK(det(rows({{Rational(7, 3)}})) == Rational(7, 3));
  for (int l : {-5, 0, 2, 11}) CHECK(det(rows({{1, 0}, {l, 1}})) == 1);
  CHECK_THROWS_AS(det(RationalMatrix(2, 3, Rational(0))), std::invalid_argument);
}

TEST_CASE("solve examples") {
  const RationalVector b{3, Rational(-1, 2), 7};
  const auto x = solve(rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), b);
  REQUIRE(x);
  CHECK(*x == b);
  const RationalVector two{2};
  const auto y = solve(rows({{1, 1}}), two);
  REQUIRE(y);
  CHECK((*y)[0] + (*y)[1] == 2);
  const RationalVector one{1};
  CHECK_FALSE(solve(rows({{0, 0}}), one));
  CHECK_THROWS_AS(solve(rows({{1, 0}, {0, 1}}), one), std::invalid_argument);
}

TEST_CASE("rational text form") {
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(-6, 4)) == "-3/2");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(parse_rational("-10/4") == Rational(-5, 2));
  CHECK(parse_rational("+7") == 7);
  CHECK(to_string(parse_rational("0/5")) == "0");
  for (const char* bad : {"", "-", "1/0", "1/", "/2", "1.5", "2a", " 3", "1/-2"})
    CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
}

TEST_CASE("prime field") {
  CHECK(is_prime(2147483647ULL));
  CHECK_FALSE(is_prime(2147483649ULL));
  CHECK(is_prime((1ULL << 61) - 1));
  CHECK_THROWS(PrimeField(97));           // too small
  CHECK_THROWS(PrimeField(1000000));      // composite
  PrimeField f(PrimeField::kDefaultPrime);
  const auto half = f.from_rational(Rational(1, 2));
  CHECK(f.mul(half, f.from_int(2)) == 1);
  CHECK(f.from_int(-1) == f.modulus() - 1);
  CHECK_THROWS_AS(f.from_rational(Rational(1, static_cast<long>(PrimeField::kDefaultPrime))), std::domain_error);
  const PrimeField big((1ULL << 61) - 1);
  CHECK(big.mul(big.from_int(-1), big.from_int(-1)) == 1);
}

TEST_CASE("field mode parsing") {
  CHECK(FieldMode::parse("Q") == FieldMode::rational());
  CHECK(FieldMode::parse("Fp").prime == PrimeField::kDefaultPrime);
  CHECK(FieldMode::parse("Fp:2305843009213693951").prime == 2305843009213693951ULL);
  CHECK(FieldMode::parse("Fp:2147483647").to_string() == "Fp:2147483647");
  CHECK(FieldMode::parse("Fp:2147483647").label() == "Fp");
  CHECK_THROWS(FieldMode::parse("Fp:15"));
  CHECK_THROWS(FieldMode::parse("R"));
  CHECK_THROWS(FieldMode::parse("Fp:"));
}

TEST_CASE("matrix invariants on seeded random matrices") {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    const auto m = trial % 2 ? random_matrix(rng, r, c, 3) : random_low_rank(rng, r, c, 1 + rng() % 3);
    const std::size_t rk = rank(m);
    CHECK(rk == minor_rank(m));
    CHECK(rk == rank(m.transpose()));
    CHECK(rk <= std::min(r, c));

    const auto kb = kernel_basis(m);
    CHECK(kb.size() + rk == c);
    if (!kb.empty()) {
      CHECK(rank(RationalMatrix::from_rows(kb, c)) == kb.size());
      for (const auto& v : kb)
        for (std::size_t i = 0; i < r; ++i) {
          Rational s = 0;
          for (std::size_t j = 0; j < c; ++j) s += m(i, j) * v[j];
          CHECK(s == 0);
        }
    }

    // Row scaling and row permutation keep the rank.
    auto scaled = m;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) scaled(i, j) *= Rational(static_cast<long>(i) + 2, 3) * (i % 2 ? -1 : 1);
    CHECK(rank(scaled) == rk);
    auto swapped = m;
    swapped.swap_rows(0, r - 1);
    CHECK(rank(swapped) == rk);

    // The prime-field rank never exceeds the rational rank.
    const PrimeField f(PrimeField::kDefaultPrime);
    CHECK(discrarr::rank(f, convert(f, m)) <= rk);

    if (r == c) {
      CHECK(det(m) == leibniz_det(m));
      auto twin = m;
      for (std::size_t j = 0; j < c && r >= 2; ++j) twin(1, j) = twin(0, j);
      if (r >= 2) CHECK(det(twin) == 0);
    }

    // A consistent right-hand side is solved exactly.
    RationalVector x(c);
    for (auto& v : x) v = Rational(static_cast<long>(rng() % 7) - 3);
    RationalVector b(r, Rational(0));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) b[i] += m(i, j) * x[j];
    const auto sol = solve(m, b);
    REQUIRE(sol);
    for (std::size_t i = 0; i < r; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < c; ++j) s += m(i, j) * (*sol)[j];
      CHECK(s == b[i]);
    }
  }
}
