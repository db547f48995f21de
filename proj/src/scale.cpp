#include "possdiag/scale.hpp"

#include <algorithm>
#include <limits>

#include "possdiag/error.hpp"

namespace possdiag {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kLevelNotInScale: return "level-not-in-scale";
    case ErrorKind::kUniverseMismatch: return "universe-mismatch";
    case ErrorKind::kLookup: return "lookup";
    case ErrorKind::kMissingProfile: return "missing-profile";
    case ErrorKind::kInadmissible: return "inadmissible-association";
    case ErrorKind::kMode: return "mode";
  }
  return "unknown";
}

CertaintyScale::CertaintyScale(std::vector<Rational> levels) : levels_(std::move(levels)) {
  if (levels_.size() < 2)
    throw DiagnosisError(ErrorKind::kValidation, "scale needs at least two levels");
  if (levels_.size() > std::numeric_limits<std::uint16_t>::max())
    throw DiagnosisError(ErrorKind::kValidation, "scale has too many levels");
  if (levels_.front() != Rational(0, 1) || levels_.back() != Rational(1, 1))
    throw DiagnosisError(ErrorKind::kValidation, "scale must start at 0 and end at 1");
  for (std::size_t i = 1; i < levels_.size(); ++i)
    if (!(levels_[i - 1] < levels_[i]))
      throw DiagnosisError(ErrorKind::kValidation, "scale levels must be strictly increasing");
  const std::size_t n = levels_.size();
  for (std::size_t i = 0; i < n; ++i)
    if (Rational(1, 1) - levels_[i] != levels_[n - 1 - i])
      throw DiagnosisError(ErrorKind::kValidation,
                           "scale is not symmetric: 1 - " + levels_[i].to_string() +
                               " is not " + levels_[n - 1 - i].to_string());
}

CertaintyScale CertaintyScale::standard() {
  return CertaintyScale({Rational(0, 1), Rational(1, 4), Rational(1, 2), Rational(3, 4),
                         Rational(1, 1)});
}

CertaintyScale CertaintyScale::boolean() { return CertaintyScale({Rational(0, 1), Rational(1, 1)}); }

Level CertaintyScale::neg(Level x) const {
  if (!contains(x))
    throw DiagnosisError(ErrorKind::kLevelNotInScale, "level index out of scale");
  return Level{static_cast<std::uint16_t>(levels_.size() - 1 - x.index)};
}

Level CertaintyScale::at(std::size_t index) const {
  if (index >= levels_.size())
    throw DiagnosisError(ErrorKind::kLevelNotInScale, "level index out of scale");
  return Level{static_cast<std::uint16_t>(index)};
}

const Rational& CertaintyScale::value(Level x) const {
  if (!contains(x))
    throw DiagnosisError(ErrorKind::kLevelNotInScale, "level index out of scale");
  return levels_[x.index];
}

std::optional<Level> CertaintyScale::find(const Rational& value) const {
  auto it = std::lower_bound(levels_.begin(), levels_.end(), value);
  if (it == levels_.end() || *it != value) return std::nullopt;
  return Level{static_cast<std::uint16_t>(it - levels_.begin())};
}

Level CertaintyScale::level_of(const Rational& value) const {
  if (auto l = find(value)) return *l;
  throw DiagnosisError(ErrorKind::kLevelNotInScale,
                       "level " + value.to_string() + " is not on the scale");
}

}  // namespace possdiag
