#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "possdiag/fuzzy_set.hpp"

namespace possdiag {

/// Sorted, duplicate-free indices into KnowledgeBase::disorders().
using DisorderSet = std::vector<std::size_t>;

struct DisorderProfile {
  std::string id;
  /// positive: manifestations more or less certainly caused by the disorder
  /// alone; negative: manifestations more or less certainly excluded by it.
  TwofoldSet effects;
};

/// Evidence: what is more or less certainly present and more or less certainly
/// absent. Manifestations graded bottom on both sides are simply not observed.
struct Observation {
  TwofoldSet evidence;

  const FuzzySet& present() const { return evidence.positive(); }
  const FuzzySet& absent() const { return evidence.negative(); }

  static Observation empty(FramePtr frame) { return {TwofoldSet::ignorance(std::move(frame))}; }
  friend bool operator==(const Observation&, const Observation&) = default;
};

enum class Composition {
  /// Effects add up without interfering: max of positives, min of negatives.
  kAdditive,
  /// Every multi-disorder association carries its own declared profile.
  kExplicit,
};

/// Disorders are held in identifier order, so index order and identifier
/// order coincide.
class KnowledgeBase {
 public:
  /// Throws DiagnosisError(kValidation) on duplicate identifiers, profiles on
  /// a foreign frame, or multi-profiles naming fewer than two disorders.
  KnowledgeBase(FramePtr frame, std::vector<DisorderProfile> disorders,
                Composition composition = Composition::kAdditive,
                std::vector<std::pair<std::vector<std::string>, TwofoldSet>> multi_profiles = {},
                std::optional<std::vector<std::vector<std::string>>> admissible = std::nullopt);

  const FramePtr& frame_ptr() const { return frame_; }
  const Frame& frame() const { return *frame_; }
  const CertaintyScale& scale() const { return frame_->scale; }
  const Universe& universe() const { return frame_->universe; }

  std::size_t disorder_count() const { return disorders_.size(); }
  const std::vector<DisorderProfile>& disorders() const { return disorders_; }
  const DisorderProfile& disorder(std::size_t i) const { return disorders_.at(i); }
  std::optional<std::size_t> find_disorder(std::string_view id) const;
  /// Throws DiagnosisError(kLookup).
  std::size_t disorder_index(std::string_view id) const;
  /// Sorted, deduplicated; throws DiagnosisError(kLookup) on unknown ids.
  DisorderSet to_set(const std::vector<std::string>& ids) const;
  std::vector<std::string> ids_of(const DisorderSet& d) const;

  Composition composition() const { return composition_; }
  const std::map<DisorderSet, TwofoldSet>& multi_profiles() const { return multi_; }
  const std::optional<std::set<DisorderSet>>& admissible() const { return admissible_; }

  /// Singletons are always admissible. Larger sets must belong to the declared
  /// associations; in explicit mode without declared associations, the sets
  /// carrying a multi-profile are the admissible ones.
  bool is_admissible(const DisorderSet& d) const;

  /// True when every profile (and multi-profile) only uses bottom and top.
  bool is_crisp() const;
  /// Crisp with every negative part the complement of its positive part.
  bool is_complete() const;

 private:
  FramePtr frame_;
  std::vector<DisorderProfile> disorders_;
  Composition composition_;
  std::map<DisorderSet, TwofoldSet> multi_;
  std::optional<std::set<DisorderSet>> admissible_;
};

/// Profile of a set of disorders present together. Throws
/// DiagnosisError(kInadmissible) when d is not an admissible association and
/// DiagnosisError(kMissingProfile) in explicit mode without a declared profile.
TwofoldSet combine_profiles(const KnowledgeBase& kb, const DisorderSet& d);

/// Orders disorder sets by cardinality, then by identifier sequence (index
/// order is identifier order).
bool parsimony_less(const DisorderSet& a, const DisorderSet& b);

/// Visits the admissible disorder sets of one cardinality in lexicographic
/// order. `extendable` is consulted on every proper prefix; returning false
/// discards all sets that extend it.
void for_each_admissible(const KnowledgeBase& kb, std::size_t cardinality,
                         const std::function<bool(const DisorderSet&)>& extendable,
                         const std::function<void(const DisorderSet&)>& visit);

enum class TierPolicy {
  /// Stop after the first cardinality that produced a result.
  kFirstNonEmpty,
  /// Continue up to the cardinality bound.
  kAll,
};

struct SubsetSearch {
  std::size_t max_card = 1;
  TierPolicy policy = TierPolicy::kAll;
};

}  // namespace possdiag
