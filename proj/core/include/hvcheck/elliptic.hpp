#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hvcheck::ec {

struct WeierstrassCurve {
  std::int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
  std::optional<std::string> label;

  /// Throws std::invalid_argument if the discriminant vanishes.
  void validate() const;
};

/// Discriminant as a decimal string (it can exceed 64 bits).
std::string discriminant_string(const WeierstrassCurve& e);
/// Discriminant mod the odd prime p.
std::uint32_t discriminant_mod(const WeierstrassCurve& e, std::uint32_t p);
bool has_good_reduction(const WeierstrassCurve& e, std::uint32_t p);

/// p + 1 - #E(F_p) by a Legendre-symbol sum. Throws BadReduction for p = 2
/// or p dividing the discriminant.
std::int64_t ap_naive(const WeierstrassCurve& e, std::uint32_t p);

bool is_supersingular(const WeierstrassCurve& e, std::uint32_t p);

/// y^2 + xy + y = x^3 - 11x + 12.
WeierstrassCurve curve_14a4();
/// y^2 + xy + y = x^3 - 2731x - 55146.
WeierstrassCurve curve_14a1();
/// Minimal model of the quadratic twist of 14.a1 by 5.
WeierstrassCurve curve_350f1();
/// y^2 = x(x^2 + 22x - 7), the fibre elliptic curve.
WeierstrassCurve fibre_curve();

/// Built-in curves keyed by label.
std::optional<WeierstrassCurve> curve_by_label(const std::string& label);
std::vector<std::string> known_labels();

/// ap of the fibre curve equals ap of 14.a4.
bool model_consistency(std::uint32_t p);

/// ap(14.a1) * (p/5) == ap(350.f1).
bool twist_consistency(std::uint32_t p);

}  // namespace hvcheck::ec
