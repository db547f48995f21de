#pragma once

#include <vector>

#include "possdiag/knowledge_base.hpp"

namespace possdiag {

/// Two-valued evidence: manifestations certainly present and certainly absent.
/// The two sets are disjoint; their union need not cover the universe.
class CrispObservation {
 public:
  /// Throws DiagnosisError(kValidation) if the sets intersect.
  CrispObservation(CrispSet present, CrispSet absent);
  /// Completely informed evidence: everything not present is absent.
  static CrispObservation completed(const CrispSet& present);
  /// Throws DiagnosisError(kMode) if some grade lies strictly between bottom and top.
  static CrispObservation from(const Observation& obs);

  const CrispSet& present() const { return present_; }
  const CrispSet& absent() const { return absent_; }
  bool is_complete() const;

  Observation lift(const FramePtr& frame) const;
  /// Present and absent swapped.
  CrispObservation exchanged() const { return CrispObservation(absent_, present_); }

 private:
  CrispSet present_;
  CrispSet absent_;
};

enum class InformationMode { kComplete, kIncomplete };

struct Explanation {
  DisorderSet disorders;
  InformationMode mode;
  std::size_t cardinality() const { return disorders.size(); }

  friend bool operator==(const Explanation&, const Explanation&) = default;
};

// Completely informed model. The knowledge base must be complete: every
// profile crisp, with the excluded part the complement of the caused part.

/// Disorders whose effects are exactly `present`.
DisorderSet diagnose_complete(const KnowledgeBase& kb, const CrispSet& present);
/// Disorders with present ⊆ M(d) ⊆ complement(absent). Coincides with the
/// exact-match form when the observation is complete.
DisorderSet diagnose_complete(const KnowledgeBase& kb, const CrispObservation& obs);
/// Admissible disorder sets whose joint effects are exactly `present`, in
/// parsimony order.
std::vector<Explanation> explainer_subsets_complete(const KnowledgeBase& kb, const CrispSet& present,
                                                    SubsetSearch search);
/// Disorders whose effects are contained in `present`.
DisorderSet partial_explainers(const KnowledgeBase& kb, const CrispSet& present);

// Incomplete two-valued model. Profiles must be crisp.

/// Disorders that cause nothing certainly absent and exclude nothing
/// certainly present.
DisorderSet diagnose_incomplete(const KnowledgeBase& kb, const CrispObservation& obs);
/// Same test applied to the joint profile of each admissible disorder set.
std::vector<Explanation> explainer_subsets_incomplete(const KnowledgeBase& kb,
                                                      const CrispObservation& obs, SubsetSearch search);

/// Crisp caused/excluded sets of a profile; throws DiagnosisError(kMode) for
/// graded profiles.
CrispSet crisp_positive(const TwofoldSet& profile);
CrispSet crisp_negative(const TwofoldSet& profile);

}  // namespace possdiag
