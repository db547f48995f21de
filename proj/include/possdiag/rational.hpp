#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace possdiag {

/// Exact non-negative rational used to label certainty levels.
/// Always held in lowest terms with a positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  /// Accepts "p/q", integer literals and finite decimal literals ("0.25").
  static std::optional<Rational> parse(std::string_view text);

  /// Terminating decimal when the denominator allows one, "p/q" otherwise.
  std::string to_string() const;

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend Rational operator-(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace possdiag
