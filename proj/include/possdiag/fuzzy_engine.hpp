#pragma once

#include <string_view>
#include <vector>

#include "possdiag/knowledge_base.hpp"

namespace possdiag {

/// The two consistency degrees behind a plausibility level, and the level.
struct PlausibilityTerms {
  /// cons(caused, absent): how far the hypothesis predicts something observed absent.
  Level certain_vs_absent;
  /// cons(excluded, present): how far the hypothesis rules out something observed present.
  Level excluded_vs_present;
  /// neg(max of the two terms).
  Level plausibility;
};

PlausibilityTerms evaluate(const TwofoldSet& profile, const Observation& obs);

/// Same level written with inclusion indices:
/// min(inc(caused, not absent), inc(excluded, not present)).
Level plausibility_by_inclusion(const TwofoldSet& profile, const Observation& obs);

/// Positive-evidence form: inf_m max(neg present(m), neg excluded(m)). Equal
/// to the general level whenever nothing is observed absent.
Level plausibility_positive_only(const TwofoldSet& profile, const Observation& obs);

struct RankedEntry {
  DisorderSet disorders;
  Level level;
  Level certain_vs_absent;
  Level excluded_vs_present;

  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

/// Entries ordered by level descending, then cardinality, then identifiers.
struct PlausibilityRanking {
  std::vector<RankedEntry> entries;

  /// Members of single-disorder entries at the top level.
  DisorderSet core(const CertaintyScale& scale) const;
  /// Members of single-disorder entries above the bottom level.
  DisorderSet support() const;
};

Level plausibility_single(const KnowledgeBase& kb, const Observation& obs, std::size_t disorder);
/// Throws DiagnosisError(kLookup) for unknown identifiers.
Level plausibility_single(const KnowledgeBase& kb, const Observation& obs, std::string_view disorder);

/// One entry per disorder.
PlausibilityRanking rank_disorders(const KnowledgeBase& kb, const Observation& obs);

/// Level of a disorder set, evaluated on its joint profile.
Level plausibility_subset(const KnowledgeBase& kb, const Observation& obs, const DisorderSet& d);

/// Evaluates every admissible disorder set tier by tier (cardinality 1, 2, ...)
/// and stops after the first tier in which some set reaches `threshold`, or at
/// `max_card`.
PlausibilityRanking search_multi(const KnowledgeBase& kb, const Observation& obs, Level threshold,
                                 std::size_t max_card);

/// Per-disorder audit: both terms and the manifestations that attain them.
struct DisorderAudit {
  std::size_t disorder;
  PlausibilityTerms terms;
  std::vector<std::size_t> predicted_but_absent;
  std::vector<std::size_t> excluded_but_present;
};

DisorderAudit audit_disorder(const KnowledgeBase& kb, const Observation& obs, std::size_t disorder);

}  // namespace possdiag
