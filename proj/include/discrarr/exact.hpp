#pragma once

// Exact scalar and dense matrix arithmetic.
//
// Elements live in a field object in the style of FFLAS/Givaro: algorithms
// take `const Field&` and only touch elements through it, so the same
// elimination code runs over the rationals and over a prime field.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace discrarr {

using Rational = mpq_class;

/// Canonical "p/q" (or "p" when q = 1), sign on the numerator.
std::string to_string(const Rational& q);

/// Parses "p", "-p", "p/q"; rejects q = 0 and stray characters.
Rational parse_rational(std::string_view text);

class RationalField {
 public:
  using Element = Rational;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_rational(const Rational& q) const { return q; }

  bool is_zero(const Element& x) const { return sgn(x) == 0; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const;

  std::string name() const { return "Q"; }
};

/// Z/pZ for a prime p > 2^20 (p < 2^63). Primality is checked on construction.
class PrimeField {
 public:
  using Element = std::uint64_t;

  explicit PrimeField(std::uint64_t prime);

  std::uint64_t modulus() const { return p_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const;
  /// Throws std::domain_error when the denominator vanishes mod p.
  Element from_rational(const Rational& q) const;

  bool is_zero(Element x) const { return x == 0; }
  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element mul(Element a, Element b) const;
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element inv(Element a) const;

  std::string name() const { return "Fp:" + std::to_string(p_); }

  static constexpr std::uint64_t kDefaultPrime = 2147483647ULL;  // 2^31 - 1

 private:
  std::uint64_t p_;
};

bool is_prime(std::uint64_t n);

template <class E>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const E& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<E> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw std::invalid_argument("matrix entry count does not match shape");
  }

  static Matrix from_rows(const std::vector<std::vector<E>>& rows, std::size_t cols) {
    Matrix m;
    m.rows_ = rows.size();
    m.cols_ = cols;
    m.data_.reserve(m.rows_ * cols);
    for (const auto& r : rows) {
      if (r.size() != cols) throw std::invalid_argument("ragged matrix rows");
      m.data_.insert(m.data_.end(), r.begin(), r.end());
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  E& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const E& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<E> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const E> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Matrix transpose() const {
    Matrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.data_.reserve(data_.size());
    for (std::size_t c = 0; c < cols_; ++c)
      for (std::size_t r = 0; r < rows_; ++r) t.data_.push_back((*this)(r, c));
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<E> data_;
};

using RationalMatrix = Matrix<Rational>;
using RationalVector = std::vector<Rational>;

template <class Field>
struct Echelon {
  Matrix<typename Field::Element> reduced;  // reduced row echelon form
  std::vector<std::size_t> pivot_cols;
};

/// Gauss-Jordan elimination to reduced row echelon form. Exact; zero means zero.
template <class Field>
Echelon<Field> row_reduce(const Field& f, Matrix<typename Field::Element> m) {
  Echelon<Field> out;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    std::size_t found = m.rows();
    for (std::size_t r = pivot_row; r < m.rows(); ++r) {
      if (!f.is_zero(m(r, c))) {
        found = r;
        break;
      }
    }
    if (found == m.rows()) continue;
    m.swap_rows(found, pivot_row);
    const auto inv = f.inv(m(pivot_row, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(pivot_row, j) = f.mul(m(pivot_row, j), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == pivot_row || f.is_zero(m(r, c))) continue;
      const auto factor = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        m(r, j) = f.sub(m(r, j), f.mul(factor, m(pivot_row, j)));
    }
    out.pivot_cols.push_back(c);
    ++pivot_row;
  }
  out.reduced = std::move(m);
  return out;
}

/// Forward elimination only; cheaper than row_reduce when only the rank matters.
template <class Field>
std::size_t rank(const Field& f, Matrix<typename Field::Element> m) {
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    std::size_t found = m.rows();
    for (std::size_t r = pivot_row; r < m.rows(); ++r) {
      if (!f.is_zero(m(r, c))) {
        found = r;
        break;
      }
    }
    if (found == m.rows()) continue;
    m.swap_rows(found, pivot_row);
    const auto inv = f.inv(m(pivot_row, c));
    for (std::size_t r = pivot_row + 1; r < m.rows(); ++r) {
      if (f.is_zero(m(r, c))) continue;
      const auto factor = f.mul(m(r, c), inv);
      for (std::size_t j = c; j < m.cols(); ++j)
        m(r, j) = f.sub(m(r, j), f.mul(factor, m(pivot_row, j)));
    }
    ++pivot_row;
  }
  return pivot_row;
}

/// Basis of {x : m x = 0}, one vector per free column, free entry set to one.
template <class Field>
std::vector<std::vector<typename Field::Element>> kernel_basis(
    const Field& f, const Matrix<typename Field::Element>& m) {
  const auto ech = row_reduce(f, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<typename Field::Element>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename Field::Element> v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i)
      v[ech.pivot_cols[i]] = f.neg(ech.reduced(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class Field>
typename Field::Element determinant(const Field& f, Matrix<typename Field::Element> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  auto det = f.one();
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t found = n;
    for (std::size_t r = c; r < n; ++r) {
      if (!f.is_zero(m(r, c))) {
        found = r;
        break;
      }
    }
    if (found == n) return f.zero();
    if (found != c) {
      m.swap_rows(found, c);
      det = f.neg(det);
    }
    det = f.mul(det, m(c, c));
    const auto inv = f.inv(m(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      if (f.is_zero(m(r, c))) continue;
      const auto factor = f.mul(m(r, c), inv);
      for (std::size_t j = c; j < n; ++j) m(r, j) = f.sub(m(r, j), f.mul(factor, m(c, j)));
    }
  }
  return det;
}

/// One solution of m x = b, or nullopt when the system is inconsistent.
template <class Field>
std::optional<std::vector<typename Field::Element>> solve(
    const Field& f, const Matrix<typename Field::Element>& m,
    std::span<const typename Field::Element> b) {
  if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length does not match rows");
  Matrix<typename Field::Element> aug(m.rows(), m.cols() + 1, f.zero());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const auto ech = row_reduce(f, std::move(aug));
  if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == m.cols()) return std::nullopt;
  std::vector<typename Field::Element> x(m.cols(), f.zero());
  for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i)
    x[ech.pivot_cols[i]] = ech.reduced(i, m.cols());
  return x;
}

// Rational conveniences.
std::size_t rank(const RationalMatrix& m);
std::vector<RationalVector> kernel_basis(const RationalMatrix& m);
Rational det(const RationalMatrix& m);
std::optional<RationalVector> solve(const RationalMatrix& m, std::span<const Rational> b);

template <class Field>
Matrix<typename Field::Element> convert(const Field& f, const RationalMatrix& m) {
  std::vector<typename Field::Element> entries;
  entries.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) entries.push_back(f.from_rational(m(r, c)));
  return Matrix<typename Field::Element>(m.rows(), m.cols(), std::move(entries));
}

/// Which field a verdict was computed over.
struct FieldMode {
  enum class Kind { Rational, Prime };
  Kind kind = Kind::Rational;
  std::uint64_t prime = PrimeField::kDefaultPrime;

  static FieldMode rational() { return {}; }
  static FieldMode prime_field(std::uint64_t p) { return {Kind::Prime, p}; }
  /// "Q" or "Fp:<prime>"; "Fp" alone selects the default prime.
  static FieldMode parse(std::string_view text);

  std::string label() const;  // "Q" or "Fp"
  std::string to_string() const;

  bool operator==(const FieldMode&) const = default;
};

}  // namespace discrarr
