#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "discrarr/arrangement.hpp"
#include "discrarr/discriminantal.hpp"
#include "discrarr/exact.hpp"
#include "discrarr/presentation.hpp"

namespace discrarr {

/// V_(T,r). Without r the threshold is min_nu_above(T) - 1, computed on demand.
struct VarietyQuery {
  Presentation presentation;
  std::optional<int> r;
};

struct MembershipVerdict {
  bool member = false;
  std::size_t rank_certificate = 0;
  int r = 0;
  /// Field the certificate was computed over. A prime-field rank above r already
  /// proves non-membership over Q; anything else is settled over Q.
  FieldMode field;
};

/// min_nu_above(t) - 1. Throws BudgetExhausted when the search is unresolved and
/// std::invalid_argument when t has no strict upper bound in P(n,k).
int variety_threshold(const Presentation& t, std::size_t budget = 1'000'000);

MembershipVerdict membership(const Arrangement& a, const Presentation& t, int r,
                             const FieldMode& field = FieldMode::rational());
MembershipVerdict membership(const Arrangement& a, const VarietyQuery& q,
                             const FieldMode& field = FieldMode::rational(), std::size_t budget = 1'000'000);
/// Same, with covectors served from a shared cache.
MembershipVerdict membership(RankOracle& oracle, const std::vector<IndexSet>& family, int r, const FieldMode& field);

/// Rim (i_1, ..., i_m) and hubs (j_1, ..., j_m): spokes {i_l, i_{l+1}, j_l} and the hub set.
struct WheelLabeling {
  std::vector<int> rim;
  std::vector<int> hubs;

  /// Throws std::invalid_argument unless m >= 3, the rim has no repeats and no hub lies on the rim.
  void validate() const;
  /// Plain wheels have pairwise distinct hubs.
  bool plain() const;
  std::vector<IndexSet> spokes() const;
  /// Spokes plus the hub set, on [n].
  Presentation presentation(int n) const;
};

/// prod Delta_{p} - prod Delta_{q} over index pairs.
struct DeltaBinomial {
  std::vector<std::pair<int, int>> plus;
  std::vector<std::pair<int, int>> minus;

  Rational evaluate(const Arrangement& a) const;
  /// Evaluation with Delta values read from a table indexed [i][j] (1-based).
  Rational evaluate(const std::vector<std::vector<Rational>>& deltas) const;
  DeltaBinomial relabel(const std::vector<int>& sigma) const;
  int max_index() const;
  std::string to_string() const;
};

/// prod Delta_{j_l i_l} - prod Delta_{j_l i_{l+1}}.
DeltaBinomial wheel_binomial(const WheelLabeling& w);
/// prod Delta_{2i,2n+2} Delta_{2i-1,2n+1} - prod Delta_{2i,2n+1} Delta_{2i-1,2n+2}, i = 1..n.
DeltaBinomial ladder_binomial(int n);
/// Labels (l1..l6): D16 D24 D35 - D15 D26 D34. Labels (l1..l7): D14 D16 D27 D35 - D17 D15 D26 D34.
DeltaBinomial crapo_binomial(const std::vector<int>& labels);

/// Throws std::invalid_argument if k != 2, a label exceeds n, or (for plain wheels) two
/// lines at distance 1 or 2 along the wheel i_1, j_1, i_2, j_2, ... coincide.
Rational wheel_poly(const Arrangement& a, const WheelLabeling& w, bool plain);
Rational ladder_poly(const Arrangement& a, int n);
Rational crapo_poly(const Arrangement& a, const std::vector<int>& labels);

/// Delta table of a rank-2 arrangement, indexed [i][j] for 1 <= i, j <= n.
std::vector<std::vector<Rational>> delta_table(const Arrangement& a);

/// A presentation with the binomial cutting out its singularity variety among generic
/// line arrangements, and the threshold r of V_T.
struct FamilySpec {
  std::string name;
  Presentation presentation;
  DeltaBinomial equation;
  int r = 0;
};

/// "W6", "Wd8_4", "W8", "L8", "DW10", or the parametric "W<2m>", "Wt<2m>", "L<2m+2>".
std::optional<FamilySpec> named_family(const std::string& name);
/// The five families of minimal non-very generic intersections for eight lines.
std::vector<FamilySpec> eight_line_families();

/// Generic line arrangement on the family's variety: n - 1 normals from random_generic,
/// the remaining one solved from the binomial (linear in it). Retries with derived seeds
/// until the result is generic and the binomial vanishes; throws BudgetExhausted otherwise.
SampledArrangement solve_on_variety(const FamilySpec& family, std::uint64_t seed, int height = 30,
                                    int budget = 64);

struct EightLineHit {
  std::string family;
  std::vector<int> labels;  // labels[i-1] = image of family index i
  Presentation image;
  int r = 0;
  std::size_t rank = 0;
  bool member = false;
};

/// Every relabeling of the five families into [8] (one per distinct image) whose
/// binomial vanishes on a, with its membership certificate.
std::vector<EightLineHit> eight_line_report(const Arrangement& a);

}  // namespace discrarr
