#include "hvcheck/finite_field.hpp"

#include <stdexcept>

#include "hvcheck/errors.hpp"

namespace hvcheck::ff {

namespace {

__extension__ typedef unsigned __int128 u128;

constexpr std::uint32_t kMaxPrime = 1u << 31;

std::uint32_t mod_signed(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  u128 r = 1 % m, x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

void require_odd_prime(std::uint32_t p) {
  if (p == 2) throw std::invalid_argument("characteristic 2 is not supported");
  if (p >= kMaxPrime || !is_prime(p)) {
    throw std::invalid_argument(std::to_string(p) + " is not an odd prime below 2^31");
  }
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic Miller-Rabin witnesses for 64-bit n.
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = static_cast<std::uint64_t>(static_cast<u128>(x) * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint32_t least_nonresidue(std::uint32_t p) {
  require_odd_prime(p);
  for (std::uint32_t n = 2; n < p; ++n) {
    if (pow_mod(n, (p - 1) / 2, p) == p - 1) return n;
  }
  throw std::logic_error("no quadratic nonresidue found");
}

// ---------------------------------------------------------------- F_p

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  require_odd_prime(p);
  squares_.assign(p, false);
  for (std::uint64_t e = 1; e < p; ++e) squares_[e * e % p] = true;
  for (std::uint32_t e = 1; e < p; ++e) square_count_ += squares_[e];
  if (square_count_ != (p - 1) / 2) throw std::logic_error("square table has the wrong size");
}

Element PrimeField::from_int(std::int64_t v) const { return {mod_signed(v, p_)}; }

Element PrimeField::from_components(std::uint32_t e, std::uint32_t f) const {
  if (e >= p_ || f != 0) throw std::out_of_range("component outside F_p");
  return {e};
}

Element PrimeField::add(Element a, Element b) const {
  std::uint32_t s = a.index + b.index;
  return {s >= p_ ? s - p_ : s};
}

Element PrimeField::sub(Element a, Element b) const {
  return {a.index >= b.index ? a.index - b.index : a.index + p_ - b.index};
}

Element PrimeField::neg(Element a) const { return {a.index == 0 ? 0 : p_ - a.index}; }

Element PrimeField::mul(Element a, Element b) const {
  return {static_cast<std::uint32_t>(std::uint64_t{a.index} * b.index % p_)};
}

Element PrimeField::inv(Element a) const {
  if (a.index == 0) throw DivisionByZero();
  return {static_cast<std::uint32_t>(pow_mod(a.index, p_ - 2, p_))};
}

Element PrimeField::pow(Element a, std::uint64_t e) const {
  return {static_cast<std::uint32_t>(pow_mod(a.index, e, p_))};
}

int PrimeField::quad_char(Element a) const {
  if (a.index == 0) return 0;
  return squares_[a.index] ? 1 : -1;
}

std::string PrimeField::describe() const { return "F_" + std::to_string(p_); }

// ---------------------------------------------------------------- F_{p^2}

QuadExtField::QuadExtField(std::uint32_t p, std::uint32_t b, std::uint32_t c) : p_(p), b_(b), c_(c) {
  require_odd_prime(p);
  if (p > 46337) throw std::invalid_argument("F_{p^2} index must fit in 32 bits");
  b_ %= p;
  c_ %= p;
  for (std::uint64_t r = 0; r < p; ++r) {
    if ((r * r + b_ * r + c_) % p == 0) {
      throw std::invalid_argument("modulus " + modulus_string() + " has a root mod " + std::to_string(p));
    }
  }
  const std::uint32_t q = order();
  squares_.assign(q, false);
  for (std::uint32_t i = 1; i < q; ++i) squares_[mul({i}, {i}).index] = true;
  for (std::uint32_t i = 1; i < q; ++i) square_count_ += squares_[i];
  if (square_count_ != (q - 1) / 2) throw std::logic_error("square table has the wrong size");
}

std::string QuadExtField::modulus_string() const {
  std::string s = "x^2";
  if (b_ == 1) s += "+x";
  else if (b_ != 0) s += "+" + std::to_string(b_) + "*x";
  if (c_ != 0) s += "+" + std::to_string(c_);
  return s;
}

Element QuadExtField::from_int(std::int64_t v) const { return {mod_signed(v, p_)}; }

Element QuadExtField::from_components(std::uint32_t e, std::uint32_t f) const {
  if (e >= p_ || f >= p_) throw std::out_of_range("component outside F_p");
  return {e + f * p_};
}

Element QuadExtField::add(Element a, Element b) const {
  auto [a0, a1] = components(a);
  auto [b0, b1] = components(b);
  std::uint32_t e = a0 + b0, f = a1 + b1;
  if (e >= p_) e -= p_;
  if (f >= p_) f -= p_;
  return {e + f * p_};
}

Element QuadExtField::sub(Element a, Element b) const { return add(a, neg(b)); }

Element QuadExtField::neg(Element a) const {
  auto [e, f] = components(a);
  return {(e ? p_ - e : 0) + (f ? p_ - f : 0) * p_};
}

Element QuadExtField::mul(Element a, Element b) const {
  const auto [a0, a1] = components(a);
  const auto [b0, b1] = components(b);
  const std::uint64_t p = p_;
  const std::uint64_t hi = std::uint64_t{a1} * b1 % p;
  // x^2 = -b x - c
  const std::uint64_t e = (std::uint64_t{a0} * b0 + (p - c_) * hi) % p;
  const std::uint64_t f = (std::uint64_t{a0} * b1 + std::uint64_t{a1} * b0 + (p - b_) * hi) % p;
  return {static_cast<std::uint32_t>(e + f * p)};
}

std::uint32_t QuadExtField::norm(Element a) const {
  const auto [e, f] = components(a);
  const std::uint64_t p = p_;
  const std::uint64_t n = (std::uint64_t{e} * e + (p - b_) * (std::uint64_t{e} * f % p) +
                           std::uint64_t{c_} * (std::uint64_t{f} * f % p)) % p;
  return static_cast<std::uint32_t>(n);
}

Element QuadExtField::frobenius(Element a) const {
  const auto [e, f] = components(a);
  const std::uint64_t p = p_;
  const std::uint64_t e2 = (e + (p - std::uint64_t{f} * b_ % p)) % p;
  const std::uint64_t f2 = (p - f) % p;
  return {static_cast<std::uint32_t>(e2 + f2 * p)};
}

Element QuadExtField::inv(Element a) const {
  if (a.index == 0) throw DivisionByZero();
  const std::uint64_t n_inv = pow_mod(norm(a), p_ - 2, p_);
  const Element conj = frobenius(a);
  const auto [e, f] = components(conj);
  return {static_cast<std::uint32_t>(e * n_inv % p_ + (f * n_inv % p_) * p_)};
}

Element QuadExtField::pow(Element a, std::uint64_t e) const {
  Element r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

int QuadExtField::quad_char(Element a) const {
  if (a.index == 0) return 0;
  return squares_[a.index] ? 1 : -1;
}

std::string QuadExtField::describe() const {
  return "F_" + std::to_string(p_) + "^2 = F_" + std::to_string(p_) + "[x]/(" + modulus_string() + ")";
}

QuadExtField make_quadratic_extension(std::uint32_t p) {
  require_odd_prime(p);
  if (p % 3 == 2) return QuadExtField(p, 1, 1);
  const std::uint32_t n = least_nonresidue(p);
  return QuadExtField(p, 0, p - n);
}

}  // namespace hvcheck::ff
