#pragma once

#include <cstdint>
#include <vector>

#include "discrarr/exact.hpp"
#include "discrarr/index_set.hpp"

namespace discrarr {

/// A central (multi)arrangement: n nonzero normal covectors in K^k, indexed 1..n by
/// position. Parallel and repeated normals are allowed.
class Arrangement {
 public:
  /// Throws std::invalid_argument on a zero normal or a normal of the wrong length.
  Arrangement(int k, std::vector<RationalVector> normals);

  /// Convenience for integer data given column by column.
  static Arrangement from_integer_normals(int k, const std::vector<std::vector<long>>& normals);

  int k() const { return k_; }
  int n() const { return static_cast<int>(normals_.size()); }
  bool essential() const { return essential_; }

  /// 1-based.
  const RationalVector& normal(int i) const;
  const std::vector<RationalVector>& normals() const { return normals_; }

  /// k x |s| matrix whose columns are the normals indexed by s (increasing order).
  RationalMatrix columns(const IndexSet& s) const;
  /// k x n matrix of all normals.
  RationalMatrix matrix() const;

  /// Rank of the span of the normals indexed by s.
  std::size_t span_rank(const IndexSet& s) const;

  bool operator==(const Arrangement&) const = default;

 private:
  int k_;
  std::vector<RationalVector> normals_;
  bool essential_;
};

/// All minimal dependent subsets of the normals (size <= k + 1).
std::vector<IndexSet> circuits(const Arrangement& a);

/// Every circuit has exactly k + 1 elements.
bool is_generic(const Arrangement& a);

/// Every maximal minor is nonzero (n >= k). Equivalent to is_generic when n >= k.
bool all_maximal_minors_nonzero(const Arrangement& a);

/// det(alpha_i, alpha_j) for k = 2.
Rational delta(const Arrangement& a, int i, int j);

/// Determinant of the k x k column submatrix indexed by s in increasing order.
Rational maximal_minor(const Arrangement& a, const IndexSet& s);

/// Removes the i-th normal; the remaining normals are renumbered 1..n-1.
Arrangement delete_hyperplane(const Arrangement& a, int i);

/// Restriction to H_i as a rank k-1 multiarrangement on the other n-1 hyperplanes,
/// written in the kernel basis of alpha_i read off its reduced row echelon form.
/// Throws if k = 1 or if some other normal is parallel to alpha_i (its restriction vanishes).
Arrangement restrict_to(const Arrangement& a, int i);

/// Linearly equivalent representative with an identity block in columns 1..k, an
/// all-ones column k+1 and ones along the last row from column k on. Needs a generic,
/// essential arrangement.
Arrangement normal_form(const Arrangement& a);

struct SampledArrangement {
  Arrangement arrangement;
  int resamples = 0;
};

/// Seeded generic arrangement with integer entries in [-height, height]; resamples
/// until generic. Throws BudgetExhausted after `max_attempts` draws.
SampledArrangement random_generic(int n, int k, std::uint64_t seed, int height, int max_attempts = 1000);

/// Relabels hyperplanes: the result's normal sigma(i) is a's normal i (sigma 1-based images).
Arrangement permute(const Arrangement& a, const std::vector<int>& sigma);

}  // namespace discrarr
