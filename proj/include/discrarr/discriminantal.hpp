#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "discrarr/arrangement.hpp"
#include "discrarr/exact.hpp"
#include "discrarr/index_set.hpp"
#include "discrarr/presentation.hpp"

namespace discrarr {

/// Translation t in K^n; hyperplane i is moved to {x : alpha_i . x = t_i}.
using TranslationVector = RationalVector;

/// Normal covector of D_C in the space of translations, supported on the circuit.
struct CircuitNormal {
  IndexSet circuit;
  RationalVector coefficients;  // length n
};

/// Linear dependencies among the normals indexed by `subset`, embedded in K^n.
/// D_S is the common kernel of these covectors.
struct DependencySpace {
  IndexSet subset;
  std::vector<RationalVector> basis;
};

/// For |c| = k + 1 the coefficient of e*_{i_m} is (-1)^(m+1) times the minor
/// without i_m. Smaller circuits use the dependency scaled to 1 on the largest index.
/// Throws std::invalid_argument if c is not a circuit.
CircuitNormal circuit_normal(const Arrangement& a, const IndexSet& c);

DependencySpace dependency_space(const Arrangement& a, const IndexSet& s);

/// Rank of the span of all dependency covectors of the members: codim of the
/// intersection of the D_S. Members need at least two elements; an empty family gives 0.
std::size_t intersection_rank(const Arrangement& a, const std::vector<IndexSet>& family);
std::size_t intersection_rank(const Arrangement& a, const Presentation& t);

/// Rank over the given field. The prime-field rank of the integer-scaled covectors is a
/// lower bound for the rational rank.
std::size_t intersection_rank(const Arrangement& a, const std::vector<IndexSet>& family, const FieldMode& field);

/// True iff the translated hyperplanes indexed by s share a point.
bool translation_in_DS(const Arrangement& a, const TranslationVector& t, const IndexSet& s);

/// Maximal index sets whose translated hyperplanes share a point, restricted to
/// dependent sets of size >= k + 1 (>= 2 when the arrangement has 2-circuits).
Presentation canonical_presentation(const Arrangement& a, const TranslationVector& t);

struct RepresentativeResult {
  std::optional<TranslationVector> witness;
  /// Presentation of the last translation tried when no witness was found.
  std::optional<Presentation> achieved;
  std::uint64_t seed = 0;
  int attempts = 0;
};

/// Seeded search in the common kernel of the dependency covectors of t for a
/// translation whose canonical presentation is exactly t.
RepresentativeResult representative(const Arrangement& a, const Presentation& t, std::uint64_t seed = 0,
                                     int budget = 64);

/// Caches dependency covectors per subset (rational and integer-scaled mod p) so many
/// rank queries against one arrangement stay cheap. Safe to share between threads.
class RankOracle {
 public:
  explicit RankOracle(const Arrangement& a, std::uint64_t prime = PrimeField::kDefaultPrime);

  const Arrangement& arrangement() const { return a_; }
  std::uint64_t prime() const { return field_.modulus(); }

  std::size_t rank_q(const std::vector<IndexSet>& family);
  std::size_t rank_fp(const std::vector<IndexSet>& family);

  /// Caches every subset with 2..max_size elements and freezes the cache, after which
  /// lookups take no lock. Querying an uncached subset afterwards throws std::logic_error.
  void prefill(int max_size);

 private:
  struct Entry {
    std::vector<RationalVector> q;
    std::vector<std::vector<PrimeField::Element>> fp;
  };
  const Entry& entry(const IndexSet& s);

  Arrangement a_;
  PrimeField field_;
  std::mutex mutex_;
  std::unordered_map<IndexSet, Entry, IndexSetHash> cache_;
  bool frozen_ = false;
};

/// Scales a rational vector to a primitive integer vector (same direction).
RationalVector primitive_integer(const RationalVector& v);

}  // namespace discrarr
