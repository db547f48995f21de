#pragma once

#include <string>
#include <vector>

#include "possdiag/crisp_engine.hpp"
#include "possdiag/knowledge_base.hpp"

namespace possdiag {

/// "d may cause m": the manifestations each disorder does not certainly
/// exclude. Disorder indices follow the knowledge base when derived from one.
class CausalRelation {
 public:
  CausalRelation(std::vector<std::string> disorders, std::vector<std::string> manifestations,
                 std::vector<CrispSet> possible);
  /// possible(d) = {m : excluded(d)(m) < top}
  static CausalRelation from(const KnowledgeBase& kb);

  std::size_t disorder_count() const { return possible_.size(); }
  std::size_t manifestation_count() const { return manifestations_.size(); }
  const std::string& disorder_id(std::size_t d) const { return disorders_.at(d); }
  const std::string& manifestation_id(std::size_t m) const { return manifestations_.at(m); }
  const CrispSet& possible(std::size_t d) const { return possible_.at(d); }
  /// Union of possible manifestations; throws DiagnosisError(kLookup) on bad indices.
  CrispSet possible(const DisorderSet& d) const;

 private:
  std::vector<std::string> disorders_;
  std::vector<std::string> manifestations_;
  std::vector<CrispSet> possible_;
};

struct CoverReport {
  DisorderSet subset;
  bool is_cover = false;
  bool relevant = false;
  bool irredundant = false;
  bool minimum = false;

  friend bool operator==(const CoverReport&, const CoverReport&) = default;
};

enum class CoverClass { kAll, kRelevant, kIrredundant, kMinimum };

bool in_class(const CoverReport& r, CoverClass c);

/// True when the possible manifestations of `d` jointly contain `present`.
bool is_cover(const CausalRelation& rel, const DisorderSet& d, const CrispSet& present);

/// Every cover of `present` with at most `max_card` disorders, flagged,
/// ordered by cardinality then identifiers. With CoverClass other than kAll
/// only that class is returned (and the search may prune accordingly).
std::vector<CoverReport> classify_covers(const CausalRelation& rel, const CrispSet& present,
                                         std::size_t max_card, CoverClass only = CoverClass::kAll);

/// Covers of the present manifestations in which every member can produce
/// something observed present (when anything is) and can leave out something
/// observed absent (when anything is).
std::vector<DisorderSet> extended_relevant(const KnowledgeBase& kb, const CrispObservation& obs,
                                           std::size_t max_card);

}  // namespace possdiag
