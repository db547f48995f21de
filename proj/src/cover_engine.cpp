#include "possdiag/cover_engine.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "possdiag/error.hpp"

namespace possdiag {

CausalRelation::CausalRelation(std::vector<std::string> disorders, std::vector<std::string> manifestations,
                               std::vector<CrispSet> possible)
    : disorders_(std::move(disorders)), manifestations_(std::move(manifestations)), possible_(std::move(possible)) {
  if (disorders_.size() != possible_.size())
    throw DiagnosisError(ErrorKind::kValidation, "one possible-manifestation set per disorder expected");
  for (const auto& p : possible_)
    if (p.universe_size() != manifestations_.size())
      throw DiagnosisError(ErrorKind::kUniverseMismatch, "possible-manifestation set over a different universe");
}

CausalRelation CausalRelation::from(const KnowledgeBase& kb) {
  std::vector<std::string> ids;
  std::vector<CrispSet> possible;
  for (const auto& p : kb.disorders()) {
    ids.push_back(p.id);
    possible.push_back(core(p.effects.negative()).complement());
  }
  return CausalRelation(std::move(ids), kb.universe().ids(), std::move(possible));
}

CrispSet CausalRelation::possible(const DisorderSet& d) const {
  CrispSet out(manifestations_.size());
  for (auto i : d) {
    if (i >= possible_.size()) throw DiagnosisError(ErrorKind::kLookup, "disorder index out of range");
    out |= possible_[i];
  }
  return out;
}

bool in_class(const CoverReport& r, CoverClass c) {
  switch (c) {
    case CoverClass::kAll: return r.is_cover;
    case CoverClass::kRelevant: return r.relevant;
    case CoverClass::kIrredundant: return r.irredundant;
    case CoverClass::kMinimum: return r.minimum;
  }
  return false;
}

bool is_cover(const CausalRelation& rel, const DisorderSet& d, const CrispSet& present) {
  if (present.universe_size() != rel.manifestation_count())
    throw DiagnosisError(ErrorKind::kUniverseMismatch, "manifestation set over a different universe");
  return present.subset_of(rel.possible(d));
}

namespace {

void combinations(std::size_t n, std::size_t k, const std::function<bool(std::size_t)>& admit,
                  const std::function<void(const DisorderSet&)>& visit) {
  DisorderSet cur;
  std::function<void(std::size_t)> rec = [&](std::size_t next) {
    if (cur.size() == k) {
      visit(cur);
      return;
    }
    for (std::size_t i = next; i + (k - cur.size()) <= n; ++i) {
      if (!admit(i)) continue;
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

bool contains_all(const DisorderSet& big, const DisorderSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

std::vector<CoverReport> classify_covers(const CausalRelation& rel, const CrispSet& present,
                                         std::size_t max_card, CoverClass only) {
  if (present.universe_size() != rel.manifestation_count())
    throw DiagnosisError(ErrorKind::kUniverseMismatch, "manifestation set over a different universe");
  const std::size_t n = rel.disorder_count();
  std::vector<bool> relevant_disorder(n);
  for (std::size_t d = 0; d < n; ++d)
    relevant_disorder[d] = present.empty() ? false : rel.possible(d).intersects(present);

  // Irrelevant members rule out relevance, irredundancy and minimality alike.
  const bool prune_irrelevant = only != CoverClass::kAll;
  std::vector<CoverReport> reports;
  std::vector<DisorderSet> irredundant_found;
  std::optional<std::size_t> min_card;

  const std::size_t bound = std::min(max_card, n);
  for (std::size_t k = 0; k <= bound; ++k) {
    combinations(
        n, k, [&](std::size_t d) { return !prune_irrelevant || relevant_disorder[d]; },
        [&](const DisorderSet& d) {
          if (!is_cover(rel, d, present)) return;
          CoverReport r{d, true, false, false, false};
          r.relevant = std::all_of(d.begin(), d.end(), [&](std::size_t i) { return relevant_disorder[i]; });
          const bool has_covering_subset =
              std::any_of(irredundant_found.begin(), irredundant_found.end(),
                          [&](const DisorderSet& s) { return contains_all(d, s); });
          if (!has_covering_subset) {
            r.irredundant = true;
            for (std::size_t drop = 0; drop < d.size() && r.irredundant; ++drop) {
              DisorderSet smaller = d;
              smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(drop));
              if (is_cover(rel, smaller, present)) r.irredundant = false;
            }
          }
          if (r.irredundant) irredundant_found.push_back(d);
          if (!min_card) min_card = k;
          reports.push_back(std::move(r));
        });
    if (only == CoverClass::kMinimum && min_card) break;
  }

  for (auto& r : reports) r.minimum = min_card && r.subset.size() == *min_card;
  std::erase_if(reports, [&](const CoverReport& r) { return !in_class(r, only); });
  return reports;
}

std::vector<DisorderSet> extended_relevant(const KnowledgeBase& kb, const CrispObservation& obs,
                                           std::size_t max_card) {
  if (obs.present().universe_size() != kb.universe().size())
    throw DiagnosisError(ErrorKind::kUniverseMismatch, "observation does not match the universe");
  const CausalRelation rel = CausalRelation::from(kb);
  const std::size_t n = kb.disorder_count();
  std::vector<bool> member_ok(n);
  for (std::size_t d = 0; d < n; ++d) {
    const CrispSet possibly_absent = core(kb.disorder(d).effects.positive()).complement();
    const bool explains_present = obs.present().empty() || rel.possible(d).intersects(obs.present());
    const bool explains_absent = obs.absent().empty() || possibly_absent.intersects(obs.absent());
    member_ok[d] = explains_present && explains_absent;
  }

  std::vector<DisorderSet> out;
  const std::size_t bound = std::min(max_card, n);
  for (std::size_t k = 0; k <= bound; ++k) {
    combinations(
        n, k, [&](std::size_t d) { return member_ok[d]; },
        [&](const DisorderSet& d) {
          if (kb.is_admissible(d) && is_cover(rel, d, obs.present())) out.push_back(d);
        });
  }
  return out;
}

}  // namespace possdiag
