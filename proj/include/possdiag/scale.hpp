#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "possdiag/rational.hpp"

namespace possdiag {

/// A position on a CertaintyScale. Levels are compared by index only;
/// the rational value is a label used when reading and writing documents.
struct Level {
  std::uint16_t index = 0;

  friend constexpr auto operator<=>(Level, Level) = default;
};

constexpr Level min(Level a, Level b) { return a < b ? a : b; }
constexpr Level max(Level a, Level b) { return a < b ? b : a; }

/// Finite chain 0 = l_1 < l_2 < ... < l_n = 1 closed under the order-reversing
/// negation l_i -> l_{n+1-i}. The labels must satisfy 1 - l_i = l_{n+1-i}.
class CertaintyScale {
 public:
  /// Throws DiagnosisError(kValidation) if the labels do not form such a chain.
  explicit CertaintyScale(std::vector<Rational> levels);

  /// {0, 1/4, 1/2, 3/4, 1}
  static CertaintyScale standard();
  /// {0, 1}
  static CertaintyScale boolean();

  std::size_t size() const { return levels_.size(); }
  Level bottom() const { return Level{0}; }
  Level top() const { return Level{static_cast<std::uint16_t>(levels_.size() - 1)}; }

  Level neg(Level x) const;
  Level at(std::size_t index) const;
  bool contains(Level x) const { return x.index < levels_.size(); }

  const Rational& value(Level x) const;
  /// Exact lookup of a label; nullopt when the value is off-scale.
  std::optional<Level> find(const Rational& value) const;
  /// Like find, but throws DiagnosisError(kLevelNotInScale).
  Level level_of(const Rational& value) const;

  const std::vector<Rational>& levels() const { return levels_; }

  friend bool operator==(const CertaintyScale&, const CertaintyScale&) = default;

 private:
  std::vector<Rational> levels_;
};

}  // namespace possdiag
