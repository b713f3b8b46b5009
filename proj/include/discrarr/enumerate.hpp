#pragma once

#include <optional>
#include <string>
#include <vector>

#include "discrarr/arrangement.hpp"
#include "discrarr/exact.hpp"
#include "discrarr/presentation.hpp"

namespace discrarr {

struct CandidateOptions {
  /// Also return families that satisfy the BBA condition (still under the covering and
  /// nu bounds). Those can only be detected by a rank drop, never by combinatorics.
  bool include_bba = false;
};

/// Families T in Q(n',2) \ P(n',2) on exactly [n'] for n' <= min(n, nprime_max), with every
/// index in at least two members and 2n'/3 <= nu(T) <= n' - 2, one per isomorphism class.
/// Each is returned in its minimum serialized form over all relabelings of [n'].
/// Only k = 2 is supported.
std::vector<Presentation> enumerate_candidates(int n, int k, int nprime_max, CandidateOptions options = {});

/// A bijection sigma with permute(a, sigma) == b, if one exists.
std::optional<std::vector<int>> find_isomorphism(const Presentation& a, const Presentation& b);

struct AuditHit {
  Presentation family;      // class representative on [n']
  std::string family_name;  // named family if the class matches one, else its text form
  std::vector<int> labels;  // labels[i-1] = image of class index i in [n]
  Presentation image;       // the relabeled family on [n]
  int r = 0;
  std::size_t rank = 0;
};

struct AuditReport {
  std::vector<AuditHit> hits;
  std::size_t classes = 0;
  std::size_t images = 0;
  FieldMode field;
  int nprime_max = 0;

  /// Fixed caveat printed with every report.
  static constexpr const char* kScopeNote =
      "an empty hit list means no non-very generic witness within the searched family bound; "
      "it is not a proof of very genericity";
};

/// Tests every candidate class (including families satisfying the BBA condition) and
/// every injective relabeling into [n] for a rank drop below nu. Ranks are screened over
/// the prime field when one is configured; every reported hit is confirmed over Q.
AuditReport audit_arrangement(const Arrangement& a, int nprime_max, const FieldMode& field = FieldMode::rational(),
                              unsigned threads = 1);

/// Name of the eight-line family isomorphic to t ("W6", "Wd8_4", "W8", "L8", "DW10"), if any.
std::optional<std::string> eight_line_family_name(const Presentation& t);

}  // namespace discrarr
