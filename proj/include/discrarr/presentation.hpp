#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "discrarr/index_set.hpp"

namespace discrarr {

/// A family T of subsets of [n] with rank context k. Members never contain one another
/// (condition Q0) and are kept in canonical order: by size, then lexicographically.
class Presentation {
 public:
  Presentation(int n, int k, std::vector<IndexSet> members);

  int n() const { return n_; }
  int k() const { return k_; }
  const std::vector<IndexSet>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  /// Union of all members.
  IndexSet support() const;

  /// Same members over a different ground set or rank context.
  Presentation with_context(int n, int k) const { return Presentation(n, k, members_); }

  /// Comma-separated digit groups, or bracketed groups when n >= 10.
  std::string to_string() const;

  bool operator==(const Presentation& o) const { return n_ == o.n_ && k_ == o.k_ && members_ == o.members_; }

  /// Lexicographic comparison of the canonical member sequences (same context assumed).
  friend bool serialized_less(const Presentation& a, const Presentation& b);

 private:
  int n_;
  int k_;
  std::vector<IndexSet> members_;
};

bool serialized_less(const Presentation& a, const Presentation& b);

/// Parses "123,156,246,345" or "[1 2 13],[4 5 6]". Throws ParseError with a byte offset.
std::vector<IndexSet> parse_members(std::string_view text);
Presentation parse_presentation(std::string_view text, int n, int k);

/// Sort members canonically in place.
void canonical_sort(std::vector<IndexSet>& members);

/// Conditions Q0, Q1 (|S| >= k+1) and Q2 (a k-subset lies in at most one member).
bool validate_q(const Presentation& t);
bool satisfies_q2(const std::vector<IndexSet>& members, int k);

/// Sum over members of (|S| - k).
int nu(const Presentation& t);
int nu(const std::vector<IndexSet>& members, int k);

/// t1 <= t2: every member of t1 lies inside some member of t2.
bool leq(const Presentation& t1, const Presentation& t2);

struct BbaVerdict {
  bool ok = true;
  /// A smallest subfamily violating (P) when ok is false.
  std::optional<Presentation> witness;
};

/// Bayer-Brandt-Athanasiadis condition. Throws std::invalid_argument if validate_q fails.
BbaVerdict bba_check(const Presentation& t);
/// Membership in P(n,k) without building a witness.
bool satisfies_bba(const std::vector<IndexSet>& members, int k);

struct MinNuAbove {
  enum class Status {
    Resolved,      // value holds the exact minimum
    NoUpperBound,  // t has no strict upper bound in P(n,k)
    Unresolved,    // state budget exceeded; no value claimed
  };
  Status status = Status::Unresolved;
  int value = 0;
  std::size_t visited = 0;
};

/// min{ nu(T') : T' in P(n,k), t < T' }, exact within the state budget.
MinNuAbove min_nu_above(const Presentation& t, std::size_t budget = 1'000'000);

struct Degeneration {
  Presentation result;
  int gamma = 0;
};

/// Degeneration of t from index `from` (= t.n()) to index `to` < from; result lives on [from - 1].
Degeneration degenerate(const Presentation& t, int from, int to);

/// Least element of Q(n,k) above a family: merge members sharing >= k indices and drop
/// contained members until nothing changes. Members below size k+1 are kept as given.
std::vector<IndexSet> merge_closure(std::vector<IndexSet> members, int k);

/// Relabels every member by sigma (1-based images of 1..n).
Presentation permute(const Presentation& t, const std::vector<int>& sigma);
IndexSet permute(const IndexSet& s, const std::vector<int>& sigma);

/// The 2n-wheel {2i-1, 2i, 2i+1} (indices mod 2n) plus the even hub {2, 4, ..., 2n}.
Presentation wheel(int size);
/// Its twin {2i, 2i+1, 2i+2} plus the odd hub {1, 3, ..., 2n-1}.
Presentation twin_wheel(int size);
/// The (2n+2)-ladder.
Presentation ladder(int size);

}  // namespace discrarr
