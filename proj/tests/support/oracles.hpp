#pragma once

// Brute-force reference implementations. They work on exact rational grades
// and bitmasks straight from the definitions and share no code with the
// library beyond reading values out of its types.

#include <algorithm>
#include <bit>
#include <optional>
#include <set>
#include <vector>

#include "possdiag/fuzzy_set.hpp"
#include "possdiag/rational.hpp"
#include "support/generators.hpp"

namespace oracle {

using possdiag::Rational;
using testsupport::Mask;
using Grades = std::vector<Rational>;

inline const Rational kZero{0, 1};
inline const Rational kOne{1, 1};

inline Grades values(const possdiag::FuzzySet& f) {
  Grades out;
  for (auto l : f.grades()) out.push_back(f.scale().value(l));
  return out;
}

inline Rational cons(const Grades& f, const Grades& g) {
  Rational best = kZero;
  for (std::size_t i = 0; i < f.size(); ++i) best = std::max(best, std::min(f[i], g[i]));
  return best;
}

inline Rational inc(const Grades& f, const Grades& g) {
  Rational worst = kOne;
  for (std::size_t i = 0; i < f.size(); ++i) worst = std::min(worst, std::max(kOne - f[i], g[i]));
  return worst;
}

inline Grades complement(const Grades& f) {
  Grades out;
  for (const auto& v : f) out.push_back(kOne - v);
  return out;
}

inline Mask support(const Grades& f) {
  Mask m = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] > kZero) m |= Mask{1} << i;
  return m;
}

inline Mask core(const Grades& f) {
  Mask m = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] == kOne) m |= Mask{1} << i;
  return m;
}

struct Twofold {
  Grades pos;
  Grades neg;
};

inline Twofold of(const possdiag::TwofoldSet& t) { return {values(t.positive()), values(t.negative())}; }

inline Twofold combine(const std::vector<Twofold>& members) {
  Twofold out = members.front();
  for (std::size_t k = 1; k < members.size(); ++k)
    for (std::size_t i = 0; i < out.pos.size(); ++i) {
      out.pos[i] = std::max(out.pos[i], members[k].pos[i]);
      out.neg[i] = std::min(out.neg[i], members[k].neg[i]);
    }
  return out;
}

/// 1 - max(cons(caused, absent), cons(excluded, present)).
inline Rational plausibility(const Twofold& profile, const Twofold& obs) {
  return kOne - std::max(cons(profile.pos, obs.neg), cons(profile.neg, obs.pos));
}

// Crisp models over bitmasks.

inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

inline Mask joint_pos(const testsupport::CrispModel& c, Mask ds) {
  Mask p = 0;
  for (std::size_t d = 0; d < c.disorders; ++d)
    if (ds >> d & 1) p |= c.pos[d];
  return p;
}

inline Mask joint_neg(const testsupport::CrispModel& c, Mask ds) {
  Mask n = testsupport::full_mask(c.manifestations);
  for (std::size_t d = 0; d < c.disorders; ++d)
    if (ds >> d & 1) n &= c.neg[d];
  return n;
}

/// Exact match of the effects.
inline Mask exact_match(const testsupport::CrispModel& c, Mask present) {
  Mask out = 0;
  for (std::size_t d = 0; d < c.disorders; ++d)
    if (c.pos[d] == present) out |= Mask{1} << d;
  return out;
}

inline Mask bracket(const testsupport::CrispModel& c, Mask present, Mask absent) {
  const Mask full = testsupport::full_mask(c.manifestations);
  Mask out = 0;
  for (std::size_t d = 0; d < c.disorders; ++d)
    if (subset(present, c.pos[d]) && subset(c.pos[d], full & ~absent)) out |= Mask{1} << d;
  return out;
}

inline Mask partial(const testsupport::CrispModel& c, Mask present) {
  Mask out = 0;
  for (std::size_t d = 0; d < c.disorders; ++d)
    if (subset(c.pos[d], present)) out |= Mask{1} << d;
  return out;
}

/// Inclusion form of the incomplete test: the present manifestations are all
/// possible for the hypothesis and the caused ones are all possibly present.
inline bool consistent(Mask pos, Mask neg, Mask present, Mask absent, std::size_t n) {
  const Mask full = testsupport::full_mask(n);
  return subset(present, full & ~neg) && subset(pos, full & ~absent);
}

inline Mask incomplete(const testsupport::CrispModel& c, Mask present, Mask absent) {
  Mask out = 0;
  for (std::size_t d = 0; d < c.disorders; ++d)
    if (consistent(c.pos[d], c.neg[d], present, absent, c.manifestations)) out |= Mask{1} << d;
  return out;
}

/// Non-empty disorder sets up to `max_card` ordered by size then members.
inline std::vector<Mask> subsets_by_size(std::size_t n, std::size_t max_card, bool include_empty = false) {
  std::vector<Mask> out;
  for (Mask s = include_empty ? 0 : 1; s < (Mask{1} << n); ++s)
    if (static_cast<std::size_t>(std::popcount(s)) <= max_card) out.push_back(s);
  std::sort(out.begin(), out.end(), [n](Mask a, Mask b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    return testsupport::to_disorders(a, n) < testsupport::to_disorders(b, n);
  });
  return out;
}

inline std::vector<Mask> subsets_complete(const testsupport::CrispModel& c, Mask present, std::size_t max_card) {
  std::vector<Mask> out;
  for (Mask s : subsets_by_size(c.disorders, max_card))
    if (joint_pos(c, s) == present) out.push_back(s);
  return out;
}

inline std::vector<Mask> subsets_incomplete(const testsupport::CrispModel& c, Mask present, Mask absent,
                                            std::size_t max_card) {
  std::vector<Mask> out;
  for (Mask s : subsets_by_size(c.disorders, max_card))
    if (consistent(joint_pos(c, s), joint_neg(c, s), present, absent, c.manifestations)) out.push_back(s);
  return out;
}

// Covers.

struct CoverFlags {
  Mask subset;
  bool cover, relevant, irredundant, minimum;
};

/// Every subset of the disorders with its four flags, in size-then-members order.
inline std::vector<CoverFlags> classify(const std::vector<Mask>& possible, Mask present) {
  const std::size_t n = possible.size();
  auto covers = [&](Mask s) {
    Mask u = 0;
    for (std::size_t d = 0; d < n; ++d)
      if (s >> d & 1) u |= possible[d];
    return subset(present, u);
  };
  std::optional<int> min_size;
  for (Mask s = 0; s < (Mask{1} << n); ++s)
    if (covers(s) && (!min_size || std::popcount(s) < *min_size)) min_size = std::popcount(s);
  std::vector<CoverFlags> out;
  for (Mask s : subsets_by_size(n, n, true)) {
    CoverFlags f{s, covers(s), false, false, false};
    if (f.cover) {
      f.relevant = true;
      for (std::size_t d = 0; d < n; ++d)
        if ((s >> d & 1) && (possible[d] & present) == 0) f.relevant = false;
      f.irredundant = true;
      for (Mask sub = (s - 1) & s;; sub = (sub - 1) & s) {
        if (sub != s && covers(sub)) f.irredundant = false;
        if (sub == 0) break;
      }
      f.minimum = std::popcount(s) == *min_size;
    }
    out.push_back(f);
  }
  return out;
}

}  // namespace oracle
