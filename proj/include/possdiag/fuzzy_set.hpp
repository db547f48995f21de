#pragma once

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "possdiag/scale.hpp"

namespace possdiag {

/// Ordered universe of manifestation identifiers.
class Universe {
 public:
  Universe() = default;
  /// Throws DiagnosisError(kValidation) on duplicate identifiers.
  explicit Universe(std::vector<std::string> ids);

  std::size_t size() const { return ids_.size(); }
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::optional<std::size_t> find(std::string_view id) const;
  /// Throws DiagnosisError(kLookup).
  std::size_t index_of(std::string_view id) const;

  friend bool operator==(const Universe& a, const Universe& b) { return a.ids_ == b.ids_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// The scale and universe shared by every fuzzy set of one knowledge base.
struct Frame {
  CertaintyScale scale;
  Universe universe;

  friend bool operator==(const Frame&, const Frame&) = default;
};

using FramePtr = std::shared_ptr<const Frame>;

FramePtr make_frame(CertaintyScale scale, std::vector<std::string> manifestations);

/// Plain membership set over a universe, indexed like the universe.
class CrispSet {
 public:
  CrispSet() = default;
  explicit CrispSet(std::size_t universe_size) : bits_(universe_size, false) {}
  static CrispSet of(std::size_t universe_size, std::initializer_list<std::size_t> members);
  static CrispSet full(std::size_t universe_size);

  std::size_t universe_size() const { return bits_.size(); }
  bool contains(std::size_t i) const { return bits_.at(i); }
  void insert(std::size_t i) { bits_.at(i) = true; }
  void erase(std::size_t i) { bits_.at(i) = false; }
  bool empty() const;
  std::size_t count() const;
  std::vector<std::size_t> members() const;

  CrispSet complement() const;
  bool intersects(const CrispSet& other) const;
  bool subset_of(const CrispSet& other) const;
  CrispSet& operator|=(const CrispSet& other);
  CrispSet& operator&=(const CrispSet& other);

  friend bool operator==(const CrispSet&, const CrispSet&) = default;

 private:
  std::vector<bool> bits_;
};

/// Mapping from manifestations to levels of a shared frame. Missing grades are
/// the bottom level.
class FuzzySet {
 public:
  explicit FuzzySet(FramePtr frame);
  FuzzySet(FramePtr frame, std::vector<Level> grades);

  /// Builds from (manifestation id, level value) pairs; throws on unknown ids
  /// and off-scale values.
  static FuzzySet from_values(FramePtr frame,
                              const std::vector<std::pair<std::string, Rational>>& grades);
  /// Crisp set lifted to {bottom, top}.
  static FuzzySet from_crisp(FramePtr frame, const CrispSet& members);

  const Frame& frame() const { return *frame_; }
  const FramePtr& frame_ptr() const { return frame_; }
  const CertaintyScale& scale() const { return frame_->scale; }
  std::size_t size() const { return grades_.size(); }

  Level operator[](std::size_t i) const { return grades_.at(i); }
  Level grade(std::string_view manifestation) const;
  void set(std::size_t i, Level level);
  const std::vector<Level>& grades() const { return grades_; }

  bool empty() const;
  /// True when every grade is bottom or top.
  bool is_crisp() const;

  friend bool operator==(const FuzzySet& a, const FuzzySet& b);

 private:
  FramePtr frame_;
  std::vector<Level> grades_;
};

/// Throws DiagnosisError(kUniverseMismatch) unless both sets live on equal frames.
void require_same_frame(const FuzzySet& f, const FuzzySet& g);

FuzzySet complement(const FuzzySet& f);
FuzzySet intersection(const FuzzySet& f, const FuzzySet& g);
FuzzySet union_of(const FuzzySet& f, const FuzzySet& g);

/// sup_m min(f(m), g(m)): degree to which f and g share an element.
Level cons(const FuzzySet& f, const FuzzySet& g);
/// inf_m max(neg f(m), g(m)): inclusion index of f in g under Dienes implication.
Level inc(const FuzzySet& f, const FuzzySet& g);

CrispSet support(const FuzzySet& f);
CrispSet core(const FuzzySet& f);
/// Pointwise f <= g.
bool pointwise_leq(const FuzzySet& f, const FuzzySet& g);

struct TwofoldViolation {
  std::size_t manifestation;
  Level positive;
  Level negative;
};

/// Lists every manifestation at which min(positive, negative) > bottom.
std::vector<TwofoldViolation> validate_twofold(const FuzzySet& positive, const FuzzySet& negative);

/// Pair of min-disjoint fuzzy sets: what is more or less certainly in, and what
/// is more or less certainly out.
class TwofoldSet {
 public:
  /// Throws DiagnosisError(kValidation) naming the first violating manifestation.
  TwofoldSet(FuzzySet positive, FuzzySet negative);
  /// Both parts empty (total ignorance).
  static TwofoldSet ignorance(FramePtr frame);
  /// Identity of twofold_union: positive empty, negative at top everywhere.
  static TwofoldSet union_identity(FramePtr frame);

  const FuzzySet& positive() const { return positive_; }
  const FuzzySet& negative() const { return negative_; }
  const Frame& frame() const { return positive_.frame(); }

  /// Manifestations about which nothing is known: outside both supports.
  CrispSet unknown() const;
  bool is_crisp() const { return positive_.is_crisp() && negative_.is_crisp(); }
  /// Crisp and the negative part is exactly the complement of the positive part.
  bool is_complete() const;

  friend bool operator==(const TwofoldSet&, const TwofoldSet&) = default;

 private:
  FuzzySet positive_;
  FuzzySet negative_;
};

/// Pointwise max of positives, min of negatives.
TwofoldSet twofold_union(const TwofoldSet& a, const TwofoldSet& b);

/// Swaps positive and negative parts.
TwofoldSet exchanged(const TwofoldSet& t);

}  // namespace possdiag
