#include "hvcheck/elliptic.hpp"

#include <gmpxx.h>

#include <stdexcept>

#include "hvcheck/errors.hpp"
#include "hvcheck/finite_field.hpp"

namespace hvcheck::ec {

namespace {

mpz_class z(std::int64_t v) { return mpz_class(static_cast<long>(v)); }

mpz_class discriminant(const WeierstrassCurve& e) {
  const mpz_class a1 = z(e.a1), a2 = z(e.a2), a3 = z(e.a3), a4 = z(e.a4), a6 = z(e.a6);
  const mpz_class b2 = a1 * a1 + 4 * a2;
  const mpz_class b4 = 2 * a4 + a1 * a3;
  const mpz_class b6 = a3 * a3 + 4 * a6;
  const mpz_class b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

std::int64_t smod(std::int64_t v, std::uint32_t p) {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return r < 0 ? r + p : r;
}

int legendre(std::int64_t a, std::uint32_t p) {
  a = smod(a, p);
  if (a == 0) return 0;
  std::uint64_t r = 1, b = static_cast<std::uint64_t>(a), e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

}  // namespace

void WeierstrassCurve::validate() const {
  if (discriminant(*this) == 0) throw std::invalid_argument("singular Weierstrass equation");
}

std::string discriminant_string(const WeierstrassCurve& e) { return discriminant(e).get_str(); }

std::uint32_t discriminant_mod(const WeierstrassCurve& e, std::uint32_t p) {
  mpz_class r = discriminant(e) % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

bool has_good_reduction(const WeierstrassCurve& e, std::uint32_t p) {
  return p != 2 && ff::is_prime(p) && discriminant_mod(e, p) != 0;
}

std::int64_t ap_naive(const WeierstrassCurve& e, std::uint32_t p) {
  if (!has_good_reduction(e, p)) {
    throw BadReduction("curve " + e.label.value_or("?") + " has bad reduction at " + std::to_string(p));
  }
  const ff::PrimeField k(p);
  // y^2 = 4x^3 + b2 x^2 + 2 b4 x + b6 after completing the square.
  const ff::Element b2 = k.from_int(e.a1 * e.a1 + 4 * e.a2);
  const ff::Element b4x2 = k.from_int(2 * (2 * e.a4 + e.a1 * e.a3));
  const ff::Element b6 = k.from_int(e.a3 * e.a3 + 4 * e.a6);
  const ff::Element four = k.from_int(4);
  std::int64_t sum = 0;
  for (std::uint32_t i = 0; i < p; ++i) {
    const ff::Element x{i};
    ff::Element r = k.add(k.mul(four, x), b2);
    r = k.add(k.mul(r, x), b4x2);
    r = k.add(k.mul(r, x), b6);
    sum += k.quad_char(r);
  }
  return -sum;
}

bool is_supersingular(const WeierstrassCurve& e, std::uint32_t p) { return smod(ap_naive(e, p), p) == 0; }

WeierstrassCurve curve_14a4() { return {1, 0, 1, -11, 12, "14.a4"}; }
WeierstrassCurve curve_14a1() { return {1, 0, 1, -2731, -55146, "14.a1"}; }
WeierstrassCurve curve_350f1() { return {1, 1, 1, -68263, -6893219, "350.f1"}; }
WeierstrassCurve fibre_curve() { return {0, 22, 0, -7, 0, std::nullopt}; }

std::optional<WeierstrassCurve> curve_by_label(const std::string& label) {
  for (auto c : {curve_14a4(), curve_14a1(), curve_350f1()}) {
    if (c.label == label) return c;
  }
  return std::nullopt;
}

std::vector<std::string> known_labels() { return {"14.a4", "14.a1", "350.f1"}; }

bool model_consistency(std::uint32_t p) { return ap_naive(fibre_curve(), p) == ap_naive(curve_14a4(), p); }

bool twist_consistency(std::uint32_t p) {
  return ap_naive(curve_14a1(), p) * legendre(p, 5) == ap_naive(curve_350f1(), p);
}

}  // namespace hvcheck::ec
