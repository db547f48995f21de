#include "possdiag/crisp_engine.hpp"

#include <algorithm>

#include "possdiag/error.hpp"

namespace possdiag {

CrispObservation::CrispObservation(CrispSet present, CrispSet absent)
    : present_(std::move(present)), absent_(std::move(absent)) {
  if (present_.intersects(absent_))
    throw DiagnosisError(ErrorKind::kValidation,
                         "a manifestation cannot be both certainly present and certainly absent");
}

CrispObservation CrispObservation::completed(const CrispSet& present) {
  return CrispObservation(present, present.complement());
}

CrispObservation CrispObservation::from(const Observation& obs) {
  if (!obs.evidence.is_crisp())
    throw DiagnosisError(ErrorKind::kMode, "observation has intermediate grades; crisp mode needs 0/1");
  return CrispObservation(support(obs.present()), support(obs.absent()));
}

bool CrispObservation::is_complete() const {
  CrispSet all = present_;
  all |= absent_;
  return all.count() == all.universe_size();
}

Observation CrispObservation::lift(const FramePtr& frame) const {
  return {TwofoldSet(FuzzySet::from_crisp(frame, present_), FuzzySet::from_crisp(frame, absent_))};
}

CrispSet crisp_positive(const TwofoldSet& profile) {
  if (!profile.positive().is_crisp())
    throw DiagnosisError(ErrorKind::kMode, "profile has intermediate grades; crisp mode needs 0/1");
  return support(profile.positive());
}

CrispSet crisp_negative(const TwofoldSet& profile) {
  if (!profile.negative().is_crisp())
    throw DiagnosisError(ErrorKind::kMode, "profile has intermediate grades; crisp mode needs 0/1");
  return support(profile.negative());
}

namespace {

void require_complete(const KnowledgeBase& kb) {
  if (!kb.is_complete())
    throw DiagnosisError(ErrorKind::kMode,
                         "completely informed diagnosis needs crisp profiles whose excluded part "
                         "is the complement of the caused part");
}

void require_crisp(const KnowledgeBase& kb) {
  if (!kb.is_crisp())
    throw DiagnosisError(ErrorKind::kMode, "knowledge base has intermediate grades; crisp mode needs 0/1");
}

void require_universe(const KnowledgeBase& kb, const CrispSet& s) {
  if (s.universe_size() != kb.universe().size())
    throw DiagnosisError(ErrorKind::kUniverseMismatch, "observation does not match the universe");
}

bool passes_incomplete(const TwofoldSet& profile, const CrispObservation& obs) {
  return !crisp_positive(profile).intersects(obs.absent()) &&
         !crisp_negative(profile).intersects(obs.present());
}

template <class Accept, class Extendable>
std::vector<Explanation> tiered_search(const KnowledgeBase& kb, SubsetSearch search, InformationMode mode,
                                       Accept accept, Extendable extendable) {
  if (search.max_card < 1)
    throw DiagnosisError(ErrorKind::kValidation, "cardinality bound must be at least 1");
  std::vector<Explanation> out;
  const std::size_t bound = std::min(search.max_card, kb.disorder_count());
  for (std::size_t k = 1; k <= bound; ++k) {
    const std::size_t before = out.size();
    for_each_admissible(kb, k, extendable, [&](const DisorderSet& d) {
      if (accept(combine_profiles(kb, d))) out.push_back({d, mode});
    });
    if (search.policy == TierPolicy::kFirstNonEmpty && out.size() > before) break;
  }
  return out;
}

// Positive parts only grow under additive composition, so a prefix whose
// caused effects already violate a containment test can be dropped.
std::function<bool(const DisorderSet&)> positive_prune(const KnowledgeBase& kb, const CrispSet& allowed) {
  if (kb.composition() != Composition::kAdditive) return {};
  return [&kb, allowed](const DisorderSet& prefix) {
    CrispSet caused(kb.universe().size());
    for (auto i : prefix) caused |= crisp_positive(kb.disorder(i).effects);
    return caused.subset_of(allowed);
  };
}

}  // namespace

DisorderSet diagnose_complete(const KnowledgeBase& kb, const CrispSet& present) {
  require_complete(kb);
  require_universe(kb, present);
  DisorderSet out;
  for (std::size_t i = 0; i < kb.disorder_count(); ++i)
    if (crisp_positive(kb.disorder(i).effects) == present) out.push_back(i);
  return out;
}

DisorderSet diagnose_complete(const KnowledgeBase& kb, const CrispObservation& obs) {
  require_complete(kb);
  require_universe(kb, obs.present());
  const CrispSet possible = obs.absent().complement();
  DisorderSet out;
  for (std::size_t i = 0; i < kb.disorder_count(); ++i) {
    const CrispSet effects = crisp_positive(kb.disorder(i).effects);
    if (obs.present().subset_of(effects) && effects.subset_of(possible)) out.push_back(i);
  }
  return out;
}

std::vector<Explanation> explainer_subsets_complete(const KnowledgeBase& kb, const CrispSet& present,
                                                    SubsetSearch search) {
  require_complete(kb);
  require_universe(kb, present);
  return tiered_search(
      kb, search, InformationMode::kComplete,
      [&](const TwofoldSet& p) { return crisp_positive(p) == present; }, positive_prune(kb, present));
}

DisorderSet partial_explainers(const KnowledgeBase& kb, const CrispSet& present) {
  require_complete(kb);
  require_universe(kb, present);
  DisorderSet out;
  for (std::size_t i = 0; i < kb.disorder_count(); ++i)
    if (crisp_positive(kb.disorder(i).effects).subset_of(present)) out.push_back(i);
  return out;
}

DisorderSet diagnose_incomplete(const KnowledgeBase& kb, const CrispObservation& obs) {
  require_crisp(kb);
  require_universe(kb, obs.present());
  DisorderSet out;
  for (std::size_t i = 0; i < kb.disorder_count(); ++i)
    if (passes_incomplete(kb.disorder(i).effects, obs)) out.push_back(i);
  return out;
}

std::vector<Explanation> explainer_subsets_incomplete(const KnowledgeBase& kb,
                                                      const CrispObservation& obs, SubsetSearch search) {
  require_crisp(kb);
  require_universe(kb, obs.present());
  return tiered_search(
      kb, search, InformationMode::kIncomplete,
      [&](const TwofoldSet& p) { return passes_incomplete(p, obs); },
      positive_prune(kb, obs.absent().complement()));
}

}  // namespace possdiag
