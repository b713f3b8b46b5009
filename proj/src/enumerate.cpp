#include "discrarr/enumerate.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "discrarr/discriminantal.hpp"
#include "discrarr/parallel.hpp"
#include "discrarr/varieties.hpp"

namespace discrarr {

namespace {

constexpr int kMaxGround = 9;

std::vector<int> degrees(const std::vector<IndexSet>& members, int n) {
  std::vector<int> deg(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& s : members)
    for (int i : s.indices()) ++deg[static_cast<std::size_t>(i)];
  return deg;
}

// Relabeling invariant: member sizes, point degrees, and each member's degree profile.
std::vector<int> signature(const std::vector<IndexSet>& members, int n) {
  const auto deg = degrees(members, n);
  std::vector<int> sig;
  std::vector<int> sizes;
  for (const auto& s : members) sizes.push_back(s.size());
  std::sort(sizes.begin(), sizes.end());
  sig.insert(sig.end(), sizes.begin(), sizes.end());
  sig.push_back(-1);
  std::vector<int> point_degrees(deg.begin() + 1, deg.end());
  std::sort(point_degrees.begin(), point_degrees.end());
  sig.insert(sig.end(), point_degrees.begin(), point_degrees.end());
  std::vector<std::vector<int>> profiles;
  for (const auto& s : members) {
    std::vector<int> p;
    for (int i : s.indices()) p.push_back(deg[static_cast<std::size_t>(i)]);
    std::sort(p.begin(), p.end());
    profiles.push_back(std::move(p));
  }
  std::sort(profiles.begin(), profiles.end());
  for (const auto& p : profiles) {
    sig.push_back(-2);
    sig.insert(sig.end(), p.begin(), p.end());
  }
  return sig;
}

struct ClassStore {
  std::map<std::vector<int>, std::vector<std::size_t>> buckets;
  std::vector<Presentation> reps;

  void add(Presentation t) {
    auto& bucket = buckets[signature(t.members(), t.n())];
    for (std::size_t c : bucket) {
      if (find_isomorphism(t, reps[c])) {
        if (serialized_less(t, reps[c])) reps[c] = std::move(t);
        return;
      }
    }
    bucket.push_back(reps.size());
    reps.push_back(std::move(t));
  }
};

// Families on exactly [np] in canonical member order whose new labels always appear in
// increasing order. The minimum serialized form of every class has this shape.
class Generator {
 public:
  Generator(int np, bool include_bba, ClassStore& store) : np_(np), include_bba_(include_bba), store_(store) {
    deg_.assign(static_cast<std::size_t>(np) + 1, 0);
  }

  void run() { extend(); }

 private:
  void extend() {
    const int nu_left = np_ - 2 - nu_;
    if (used_ == np_ && members_.size() >= 2) consider();
    int needed = 2 * (np_ - used_);
    for (int p = 1; p <= used_; ++p) needed += std::max(0, 2 - deg_[static_cast<std::size_t>(p)]);
    // A member of size s costs s - 2 of the nu budget and covers s incidences.
    if (needed > 3 * nu_left) return;
    const int min_size = members_.empty() ? 3 : members_.back().size();
    for (int size = min_size; size <= 2 + nu_left; ++size) {
      for (int fresh = 0; fresh <= std::min(size, np_ - used_); ++fresh) {
        const int old_count = size - fresh;
        if (old_count > used_) continue;
        IndexSet fresh_part;
        for (int i = 1; i <= fresh; ++i) fresh_part.insert(used_ + i);
        for_each_subset_of_size(used_, old_count, [&](IndexSet old_part) { try_member(old_part | fresh_part, fresh); });
      }
    }
  }

  void try_member(IndexSet m, int fresh) {
    if (!members_.empty() && !canonical_less(members_.back(), m)) return;
    for (const auto& s : members_)
      if ((s & m).size() >= 2) return;
    members_.push_back(m);
    for (int i : m.indices()) ++deg_[static_cast<std::size_t>(i)];
    used_ += fresh;
    nu_ += m.size() - 2;
    extend();
    nu_ -= m.size() - 2;
    used_ -= fresh;
    for (int i : m.indices()) --deg_[static_cast<std::size_t>(i)];
    members_.pop_back();
  }

  void consider() {
    for (int p = 1; p <= np_; ++p)
      if (deg_[static_cast<std::size_t>(p)] < 2) return;
    if (3 * nu_ < 2 * np_) return;
    if (satisfies_bba(members_, 2) && !include_bba_) return;
    store_.add(Presentation(np_, 2, members_));
  }

  int np_;
  bool include_bba_;
  ClassStore& store_;
  std::vector<IndexSet> members_;
  std::vector<int> deg_;
  int used_ = 0;
  int nu_ = 0;
};

}  // namespace

std::vector<Presentation> enumerate_candidates(int n, int k, int nprime_max, CandidateOptions options) {
  if (k != 2) throw std::invalid_argument("candidate enumeration supports k = 2 only");
  const int top = std::min(n, nprime_max);
  if (top > kMaxGround)
    throw std::invalid_argument("candidate enumeration is bounded to |union T| <= " + std::to_string(kMaxGround));
  std::vector<Presentation> out;
  for (int np = k + 1; np <= top; ++np) {
    ClassStore store;
    Generator(np, options.include_bba, store).run();
    std::sort(store.reps.begin(), store.reps.end(), serialized_less);
    for (auto& t : store.reps) out.push_back(std::move(t));
  }
  return out;
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const Presentation& a, const Presentation& b) : a_(a), b_(b) {
    const int n = a.n();
    deg_a_ = degrees(a.members(), n);
    deg_b_ = degrees(b.members(), n);
    for (const auto& s : b.members()) b_members_.insert(s.bits());
    // Visit points member by member so members close early.
    std::vector<bool> placed(static_cast<std::size_t>(n) + 1, false);
    for (const auto& s : a.members())
      for (int i : s.indices())
        if (!placed[static_cast<std::size_t>(i)]) {
          placed[static_cast<std::size_t>(i)] = true;
          order_.push_back(i);
        }
    for (int i = 1; i <= n; ++i)
      if (!placed[static_cast<std::size_t>(i)]) order_.push_back(i);
    // Members of a that become fully placed after each step.
    closing_.resize(order_.size());
    std::vector<int> position(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t p = 0; p < order_.size(); ++p) position[static_cast<std::size_t>(order_[p])] = static_cast<int>(p);
    for (const auto& s : a.members()) {
      int last = 0;
      for (int i : s.indices()) last = std::max(last, position[static_cast<std::size_t>(i)]);
      closing_[static_cast<std::size_t>(last)].push_back(s);
    }
    sigma_.assign(static_cast<std::size_t>(n), 0);
    taken_.assign(static_cast<std::size_t>(n) + 1, false);
  }

  std::optional<std::vector<int>> run() {
    if (search(0)) return sigma_;
    return std::nullopt;
  }

 private:
  bool search(std::size_t step) {
    if (step == order_.size()) return true;
    const int i = order_[step];
    for (int j = 1; j <= a_.n(); ++j) {
      if (taken_[static_cast<std::size_t>(j)] || deg_b_[static_cast<std::size_t>(j)] != deg_a_[static_cast<std::size_t>(i)])
        continue;
      sigma_[static_cast<std::size_t>(i - 1)] = j;
      taken_[static_cast<std::size_t>(j)] = true;
      bool ok = true;
      for (const auto& s : closing_[step]) {
        if (!b_members_.count(permute(s, sigma_).bits())) {
          ok = false;
          break;
        }
      }
      if (ok && search(step + 1)) return true;
      taken_[static_cast<std::size_t>(j)] = false;
      sigma_[static_cast<std::size_t>(i - 1)] = 0;
    }
    return false;
  }

  const Presentation& a_;
  const Presentation& b_;
  std::vector<int> deg_a_;
  std::vector<int> deg_b_;
  std::unordered_set<std::uint64_t> b_members_;
  std::vector<int> order_;
  std::vector<std::vector<IndexSet>> closing_;
  std::vector<int> sigma_;
  std::vector<bool> taken_;
};

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const Presentation& a, const Presentation& b) {
  if (a.n() != b.n() || a.k() != b.k() || a.size() != b.size()) return std::nullopt;
  if (signature(a.members(), a.n()) != signature(b.members(), b.n())) return std::nullopt;
  return IsoSearch(a, b).run();
}

std::optional<std::string> eight_line_family_name(const Presentation& t) {
  static const std::vector<FamilySpec> families = eight_line_families();
  for (const auto& f : families)
    if (f.presentation.n() == t.n() && f.presentation.k() == t.k() && find_isomorphism(t, f.presentation)) return f.name;
  return std::nullopt;
}

AuditReport audit_arrangement(const Arrangement& a, int nprime_max, const FieldMode& field, unsigned threads) {
  if (a.k() != 2) throw std::invalid_argument("audit supports line arrangements (k = 2) only");
  if (!all_maximal_minors_nonzero(a)) throw std::invalid_argument("audit needs a generic arrangement");
  const int n = a.n();
  AuditReport report;
  report.field = field;
  report.nprime_max = nprime_max;
  const auto classes = enumerate_candidates(n, 2, nprime_max, CandidateOptions{true});
  report.classes = classes.size();
  int max_member = 2;
  for (const auto& c : classes)
    for (const auto& s : c.members()) max_member = std::max(max_member, s.size());
  RankOracle oracle(a, field.kind == FieldMode::Kind::Prime ? field.prime : PrimeField::kDefaultPrime);
  oracle.prefill(max_member);
  std::mutex hits_mutex;
  for (const auto& cls : classes) {
    const int np = cls.n();
    const int r = nu(cls) - 1;
    const auto name = eight_line_family_name(cls);
    // One relabeling per distinct image.
    std::vector<std::pair<std::vector<int>, std::vector<IndexSet>>> images;
    std::set<std::vector<std::uint64_t>> seen;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    do {
      std::vector<int> sigma(perm.begin(), perm.begin() + np);
      std::vector<IndexSet> image;
      for (const auto& s : cls.members()) image.push_back(permute(s, sigma));
      canonical_sort(image);
      std::vector<std::uint64_t> key;
      for (const auto& s : image) key.push_back(s.bits());
      if (seen.insert(std::move(key)).second) images.emplace_back(std::move(sigma), std::move(image));
    } while (std::next_permutation(perm.begin(), perm.end()));
    report.images += images.size();
    parallel_for(images.size(), threads, [&](std::size_t i) {
      const auto& [sigma, image] = images[i];
      const auto verdict = membership(oracle, image, r, field);
      if (!verdict.member) return;
      AuditHit hit{cls, name ? *name : cls.to_string(), sigma, Presentation(n, 2, image), r, verdict.rank_certificate};
      std::lock_guard lock(hits_mutex);
      report.hits.push_back(std::move(hit));
    });
  }
  std::sort(report.hits.begin(), report.hits.end(), [](const AuditHit& x, const AuditHit& y) {
    if (x.family.n() != y.family.n()) return x.family.n() < y.family.n();
    if (!(x.family == y.family)) return serialized_less(x.family, y.family);
    return serialized_less(x.image, y.image);
  });
  return report;
}

}  // namespace discrarr
