#include "possdiag/fuzzy_engine.hpp"

#include <algorithm>

#include "possdiag/error.hpp"

namespace possdiag {

namespace {

void require_observation(const KnowledgeBase& kb, const Observation& obs) {
  if (obs.present().frame_ptr() != kb.frame_ptr() && !(obs.present().frame() == kb.frame()))
    throw DiagnosisError(ErrorKind::kUniverseMismatch,
                         "observation does not share the knowledge base universe and scale");
}

RankedEntry entry_for(const DisorderSet& d, const PlausibilityTerms& t) {
  return {d, t.plausibility, t.certain_vs_absent, t.excluded_vs_present};
}

void sort_ranking(std::vector<RankedEntry>& entries) {
  std::stable_sort(entries.begin(), entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
    if (a.level != b.level) return a.level > b.level;
    return parsimony_less(a.disorders, b.disorders);
  });
}

}  // namespace

PlausibilityTerms evaluate(const TwofoldSet& profile, const Observation& obs) {
  const Level a = cons(profile.positive(), obs.absent());
  const Level b = cons(profile.negative(), obs.present());
  return {a, b, profile.positive().scale().neg(max(a, b))};
}

Level plausibility_by_inclusion(const TwofoldSet& profile, const Observation& obs) {
  return min(inc(profile.positive(), complement(obs.absent())),
             inc(profile.negative(), complement(obs.present())));
}

Level plausibility_positive_only(const TwofoldSet& profile, const Observation& obs) {
  const FuzzySet& present = obs.present();
  const FuzzySet possible = complement(profile.negative());
  const CertaintyScale& scale = present.scale();
  Level out = scale.top();
  for (std::size_t i = 0; i < present.size(); ++i) out = min(out, max(scale.neg(present[i]), possible[i]));
  return out;
}

DisorderSet PlausibilityRanking::core(const CertaintyScale& scale) const {
  DisorderSet out;
  for (const auto& e : entries)
    if (e.disorders.size() == 1 && e.level == scale.top()) out.push_back(e.disorders.front());
  std::sort(out.begin(), out.end());
  return out;
}

DisorderSet PlausibilityRanking::support() const {
  DisorderSet out;
  for (const auto& e : entries)
    if (e.disorders.size() == 1 && e.level.index > 0) out.push_back(e.disorders.front());
  std::sort(out.begin(), out.end());
  return out;
}

Level plausibility_single(const KnowledgeBase& kb, const Observation& obs, std::size_t disorder) {
  require_observation(kb, obs);
  if (disorder >= kb.disorder_count()) throw DiagnosisError(ErrorKind::kLookup, "disorder index out of range");
  return evaluate(kb.disorder(disorder).effects, obs).plausibility;
}

Level plausibility_single(const KnowledgeBase& kb, const Observation& obs, std::string_view disorder) {
  return plausibility_single(kb, obs, kb.disorder_index(disorder));
}

PlausibilityRanking rank_disorders(const KnowledgeBase& kb, const Observation& obs) {
  require_observation(kb, obs);
  PlausibilityRanking ranking;
  ranking.entries.reserve(kb.disorder_count());
  for (std::size_t i = 0; i < kb.disorder_count(); ++i)
    ranking.entries.push_back(entry_for({i}, evaluate(kb.disorder(i).effects, obs)));
  sort_ranking(ranking.entries);
  return ranking;
}

Level plausibility_subset(const KnowledgeBase& kb, const Observation& obs, const DisorderSet& d) {
  require_observation(kb, obs);
  return evaluate(combine_profiles(kb, d), obs).plausibility;
}

PlausibilityRanking search_multi(const KnowledgeBase& kb, const Observation& obs, Level threshold,
                                 std::size_t max_card) {
  require_observation(kb, obs);
  if (!kb.scale().contains(threshold))
    throw DiagnosisError(ErrorKind::kLevelNotInScale, "threshold is not on the scale");
  if (max_card < 1) throw DiagnosisError(ErrorKind::kValidation, "cardinality bound must be at least 1");

  // The level is not monotone in the disorder set, so each tier is evaluated
  // exhaustively.
  PlausibilityRanking ranking;
  const std::size_t bound = std::min(max_card, kb.disorder_count());
  for (std::size_t k = 1; k <= bound; ++k) {
    bool reached = false;
    for_each_admissible(kb, k, {}, [&](const DisorderSet& d) {
      const PlausibilityTerms t = evaluate(combine_profiles(kb, d), obs);
      reached = reached || t.plausibility >= threshold;
      ranking.entries.push_back(entry_for(d, t));
    });
    if (reached) break;
  }
  sort_ranking(ranking.entries);
  return ranking;
}

DisorderAudit audit_disorder(const KnowledgeBase& kb, const Observation& obs, std::size_t disorder) {
  require_observation(kb, obs);
  if (disorder >= kb.disorder_count()) throw DiagnosisError(ErrorKind::kLookup, "disorder index out of range");
  const TwofoldSet& profile = kb.disorder(disorder).effects;
  DisorderAudit audit{disorder, evaluate(profile, obs), {}, {}};
  for (std::size_t m = 0; m < kb.universe().size(); ++m) {
    const Level a = min(profile.positive()[m], obs.absent()[m]);
    const Level b = min(profile.negative()[m], obs.present()[m]);
    if (a.index > 0 && a == audit.terms.certain_vs_absent) audit.predicted_but_absent.push_back(m);
    if (b.index > 0 && b == audit.terms.excluded_vs_present) audit.excluded_but_present.push_back(m);
  }
  return audit;
}

}  // namespace possdiag
