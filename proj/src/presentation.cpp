#include "discrarr/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

#include "discrarr/errors.hpp"

namespace discrarr {

void canonical_sort(std::vector<IndexSet>& members) {
  std::sort(members.begin(), members.end(), [](const IndexSet& a, const IndexSet& b) { return canonical_less(a, b); });
}

Presentation::Presentation(int n, int k, std::vector<IndexSet> members) : n_(n), k_(k), members_(std::move(members)) {
  if (n < 0 || n >= IndexSet::kMaxIndex) throw std::invalid_argument("ground set size must lie in [0, 63]");
  if (k < 1) throw std::invalid_argument("rank context k must be at least 1");
  for (const auto& s : members_) {
    if (s.empty()) throw std::invalid_argument("empty member in presentation");
    if (s.max() > n)
      throw std::invalid_argument("member " + s.to_string(true) + " exceeds the ground set [" + std::to_string(n) + "]");
  }
  canonical_sort(members_);
  for (std::size_t i = 0; i < members_.size(); ++i)
    for (std::size_t j = 0; j < members_.size(); ++j)
      if (i != j && members_[i].is_subset_of(members_[j]))
        throw std::invalid_argument("member " + members_[i].to_string(true) + " is contained in " +
                                    members_[j].to_string(true) + " (Q0)");
}

IndexSet Presentation::support() const {
  IndexSet u;
  for (const auto& s : members_) u = u | s;
  return u;
}

std::string Presentation::to_string() const {
  const bool bracketed = n_ >= 10;
  std::string out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ',';
    out += members_[i].to_string(bracketed);
  }
  return out;
}

bool serialized_less(const Presentation& a, const Presentation& b) {
  return std::lexicographical_compare(a.members_.begin(), a.members_.end(), b.members_.begin(), b.members_.end(),
                                      [](const IndexSet& x, const IndexSet& y) { return canonical_less(x, y); });
}

std::vector<IndexSet> parse_members(std::string_view text) {
  std::vector<IndexSet> out;
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto add_index = [&](IndexSet& s, long value, std::size_t at) {
    if (value < 1 || value >= IndexSet::kMaxIndex) throw ParseError(at, "index out of range");
    if (s.contains(static_cast<int>(value))) throw ParseError(at, "repeated index in member");
    s.insert(static_cast<int>(value));
  };
  skip_space();
  if (pos == text.size()) return out;
  while (true) {
    skip_space();
    if (pos >= text.size()) throw ParseError(pos, "expected a member");
    IndexSet member;
    if (text[pos] == '[') {
      ++pos;
      while (true) {
        while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',')) ++pos;
        if (pos >= text.size()) throw ParseError(pos, "unterminated '['");
        if (text[pos] == ']') {
          ++pos;
          break;
        }
        if (!std::isdigit(static_cast<unsigned char>(text[pos])))
          throw ParseError(pos, std::string("unexpected character '") + text[pos] + "'");
        const std::size_t start = pos;
        long value = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          value = value * 10 + (text[pos] - '0');
          if (value > 1000) throw ParseError(start, "index too large");
          ++pos;
        }
        add_index(member, value, start);
      }
    } else {
      const std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        add_index(member, text[pos] - '0', pos);
        ++pos;
      }
      if (pos == start) throw ParseError(pos, std::string("unexpected character '") + text[pos] + "'");
    }
    if (member.empty()) throw ParseError(pos, "empty member");
    out.push_back(member);
    skip_space();
    if (pos == text.size()) break;
    if (text[pos] != ',') throw ParseError(pos, std::string("expected ',' but found '") + text[pos] + "'");
    ++pos;
  }
  return out;
}

Presentation parse_presentation(std::string_view text, int n, int k) {
  return Presentation(n, k, parse_members(text));
}

bool satisfies_q2(const std::vector<IndexSet>& members, int k) {
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if ((members[i] & members[j]).size() >= k) return false;
  return true;
}

bool validate_q(const Presentation& t) {
  // Q0 is enforced by construction.
  for (const auto& s : t.members())
    if (s.size() < t.k() + 1) return false;
  return satisfies_q2(t.members(), t.k());
}

int nu(const std::vector<IndexSet>& members, int k) {
  int total = 0;
  for (const auto& s : members) total += s.size() - k;
  return total;
}

int nu(const Presentation& t) { return nu(t.members(), t.k()); }

bool leq(const Presentation& t1, const Presentation& t2) {
  if (t1.n() != t2.n() || t1.k() != t2.k()) throw std::invalid_argument("comparing presentations with different contexts");
  for (const auto& s1 : t1.members()) {
    const bool covered =
        std::any_of(t2.members().begin(), t2.members().end(), [&](const IndexSet& s2) { return s1.is_subset_of(s2); });
    if (!covered) return false;
  }
  return true;
}

namespace {

// Violation of (P) by the subfamily selected by `mask`.
bool violates_p(const std::vector<IndexSet>& members, int k, std::uint32_t mask) {
  IndexSet u;
  int sub_nu = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!((mask >> i) & 1U)) continue;
    u = u | members[i];
    sub_nu += members[i].size() - k;
  }
  return u.size() - k <= sub_nu;
}

std::optional<std::uint32_t> smallest_p_violation(const std::vector<IndexSet>& members, int k) {
  const std::size_t m = members.size();
  if (m > 24) throw std::invalid_argument("BBA check supports at most 24 members");
  for (int size = 2; size <= static_cast<int>(m); ++size) {
    std::optional<std::uint32_t> found;
    for_each_subset_of_size(static_cast<int>(m), size, [&](IndexSet sub) {
      if (!found && violates_p(members, k, static_cast<std::uint32_t>(sub.bits()))) found = static_cast<std::uint32_t>(sub.bits());
    });
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace

bool satisfies_bba(const std::vector<IndexSet>& members, int k) {
  for (const auto& s : members)
    if (s.size() < k + 1) return false;
  return !smallest_p_violation(members, k).has_value();
}

BbaVerdict bba_check(const Presentation& t) {
  if (!validate_q(t)) throw std::invalid_argument("BBA check needs a family in Q(n,k): " + t.to_string());
  const auto violation = smallest_p_violation(t.members(), t.k());
  if (!violation) return {true, std::nullopt};
  std::vector<IndexSet> witness;
  for (std::size_t i = 0; i < t.members().size(); ++i)
    if ((*violation >> i) & 1U) witness.push_back(t.members()[i]);
  return {false, Presentation(t.n(), t.k(), std::move(witness))};
}

namespace {

// Strict upper bounds of T in P(n,k) either merge some members of T into their unions
// (and then nothing else helps: shrinking a member of a P-family back to the union of
// the T-members it covers keeps Q2 and (P)), or keep every member separate and add
// material, which is possible only if T itself is in P and one single addition is.
class MinNuSearch {
 public:
  MinNuSearch(const Presentation& t, std::size_t budget) : t_(t), budget_(budget), members_(t.members()) {}

  MinNuAbove run() {
    const int k = t_.k();
    const int base = nu(members_, k);
    if (satisfies_bba(members_, k) && single_addition_exists()) {
      return finish(base + 1);
    }
    groups_.clear();
    assign(0, 0);
    if (exhausted_) return {MinNuAbove::Status::Unresolved, 0, visited_};
    if (best_ == kNone) return {MinNuAbove::Status::NoUpperBound, 0, visited_};
    return finish(best_);
  }

 private:
  static constexpr int kNone = std::numeric_limits<int>::max();

  MinNuAbove finish(int value) const { return {MinNuAbove::Status::Resolved, value, visited_}; }

  bool tick() {
    if (++visited_ > budget_) exhausted_ = true;
    return !exhausted_;
  }

  bool single_addition_exists() {
    const int k = t_.k();
    const int n = t_.n();
    std::vector<IndexSet> trial = members_;
    for (std::size_t j = 0; j < members_.size(); ++j) {
      for (int x = 1; x <= n; ++x) {
        if (members_[j].contains(x)) continue;
        if (!tick()) return false;
        trial[j] = members_[j] | IndexSet{x};
        if (satisfies_q2(trial, k) && satisfies_bba(trial, k)) return true;
      }
      trial[j] = members_[j];
    }
    bool found = false;
    for_each_subset_of_size(n, k + 1, [&](IndexSet e) {
      if (found || exhausted_ || !tick()) return;
      trial.push_back(e);
      if (satisfies_q2(trial, k) && satisfies_bba(trial, k)) found = true;
      trial.pop_back();
    });
    return found;
  }

  int partial_nu() const {
    int total = 0;
    for (const auto& g : groups_) total += g.size() - t_.k();
    return total;
  }

  // Restricted-growth enumeration of set partitions of the members.
  void assign(std::size_t index, int merges) {
    if (exhausted_ || !tick()) return;
    if (partial_nu() >= best_) return;
    if (index == members_.size()) {
      if (merges > 0 && satisfies_bba(groups_, t_.k())) best_ = std::min(best_, partial_nu());
      return;
    }
    const IndexSet s = members_[index];
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      const IndexSet before = groups_[g];
      groups_[g] = before | s;
      if (compatible(g)) assign(index + 1, merges + 1);
      groups_[g] = before;
    }
    groups_.push_back(s);
    if (compatible(groups_.size() - 1)) assign(index + 1, merges);
    groups_.pop_back();
  }

  // Group unions only grow, so a Q2 clash between two groups is final.
  bool compatible(std::size_t changed) const {
    for (std::size_t h = 0; h < groups_.size(); ++h)
      if (h != changed && (groups_[h] & groups_[changed]).size() >= t_.k()) return false;
    return true;
  }

  const Presentation& t_;
  std::size_t budget_;
  std::vector<IndexSet> members_;
  std::vector<IndexSet> groups_;
  int best_ = kNone;
  std::size_t visited_ = 0;
  bool exhausted_ = false;
};

}  // namespace

MinNuAbove min_nu_above(const Presentation& t, std::size_t budget) {
  if (!validate_q(t)) throw std::invalid_argument("min_nu_above needs a family in Q(n,k): " + t.to_string());
  return MinNuSearch(t, budget).run();
}

std::vector<IndexSet> merge_closure(std::vector<IndexSet> members, int k) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < members.size() && !changed; ++i) {
      for (std::size_t j = 0; j < members.size() && !changed; ++j) {
        if (i == j) continue;
        if (members[i].is_subset_of(members[j])) {
          members.erase(members.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
        } else if ((members[i] & members[j]).size() >= k) {
          members[i] = members[i] | members[j];
          members.erase(members.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        }
      }
    }
  }
  canonical_sort(members);
  return members;
}

Degeneration degenerate(const Presentation& t, int from, int to) {
  if (from != t.n()) throw std::invalid_argument("degeneration starts from the largest index n");
  if (to < 1 || to >= from) throw std::invalid_argument("degeneration target must lie in [1, n-1]");
  if (!validate_q(t)) throw std::invalid_argument("degeneration needs a family in Q(n,k)");
  const int k = t.k();
  std::vector<IndexSet> tilde;
  int gamma = 0;
  for (const auto& s : t.members()) {
    if (s.contains(from) && s.contains(to)) ++gamma;
    IndexSet image = s;
    if (s.contains(from)) {
      image.erase(from);
      image.insert(to);
    }
    if (image.size() <= k) continue;  // k-sets are dropped
    tilde.push_back(image);
  }
  auto closed = merge_closure(std::move(tilde), k);
  return {Presentation(from - 1, k, std::move(closed)), gamma};
}

IndexSet permute(const IndexSet& s, const std::vector<int>& sigma) {
  IndexSet out;
  for (int i : s.indices()) {
    if (i > static_cast<int>(sigma.size())) throw std::invalid_argument("permutation too short");
    out.insert(sigma[static_cast<std::size_t>(i - 1)]);
  }
  return out;
}

Presentation permute(const Presentation& t, const std::vector<int>& sigma) {
  if (static_cast<int>(sigma.size()) != t.n()) throw std::invalid_argument("permutation length must equal n");
  std::vector<bool> seen(sigma.size(), false);
  for (int image : sigma) {
    if (image < 1 || image > t.n() || seen[static_cast<std::size_t>(image - 1)])
      throw std::invalid_argument("not a permutation of [n]");
    seen[static_cast<std::size_t>(image - 1)] = true;
  }
  std::vector<IndexSet> members;
  members.reserve(t.size());
  for (const auto& s : t.members()) members.push_back(permute(s, sigma));
  return Presentation(t.n(), t.k(), std::move(members));
}

namespace {

int cyclic(int i, int modulus) { return ((i - 1) % modulus + modulus) % modulus + 1; }

void check_wheel_size(int size, int minimum, const char* what) {
  if (size < minimum || size % 2 != 0)
    throw std::invalid_argument(std::string(what) + " size must be even and at least " + std::to_string(minimum) +
                                ", got " + std::to_string(size));
}

}  // namespace

Presentation wheel(int size) {
  check_wheel_size(size, 6, "wheel");
  std::vector<IndexSet> members;
  IndexSet hub;
  for (int i = 1; i <= size / 2; ++i) {
    members.push_back(IndexSet{2 * i - 1, 2 * i, cyclic(2 * i + 1, size)});
    hub.insert(2 * i);
  }
  members.push_back(hub);
  return Presentation(size, 2, std::move(members));
}

Presentation twin_wheel(int size) {
  check_wheel_size(size, 6, "wheel");
  std::vector<IndexSet> members;
  IndexSet hub;
  for (int i = 1; i <= size / 2; ++i) {
    members.push_back(IndexSet{2 * i, cyclic(2 * i + 1, size), cyclic(2 * i + 2, size)});
    hub.insert(2 * i - 1);
  }
  members.push_back(hub);
  return Presentation(size, 2, std::move(members));
}

Presentation ladder(int size) {
  check_wheel_size(size, 8, "ladder");
  const int n = (size - 2) / 2;
  std::vector<IndexSet> members;
  for (int i = 1; i <= n; ++i) members.push_back(IndexSet{2 * i - 1, 2 * i, 2 * n + 1});
  for (int i = 1; i <= n - 1; ++i) members.push_back(IndexSet{2 * i, 2 * i + 1, 2 * n + 2});
  members.push_back(IndexSet{1, 2 * n, 2 * n + 2});
  return Presentation(size, 2, std::move(members));
}

}  // namespace discrarr
