#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace hvcheck {

/// Small exact rational with 64-bit parts, always stored reduced with a
/// positive denominator. Used for the fibre parameter t = 1/phi and for
/// database L-value ratios.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Accepts "n" or "n/d" (optional sign, no spaces).
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  /// num * den^{-1} mod p, or nullopt when p divides the denominator.
  std::optional<std::uint32_t> reduce_mod(std::uint32_t p) const;

  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace hvcheck
