#pragma once

// Exact arithmetic in F_p and F_{p^2}.
//
// Elements are identified by a canonical index: the residue itself in F_p,
// and e + f*p for e + f*x in F_{p^2} = F_p[x]/(x^2 + b x + c). The index
// order is the total order used by the symmetry-reduced enumeration in
// point_count. Both field types precompute a table of nonzero squares so
// the quadratic character is a single lookup.

#include <concepts>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hvcheck::ff {

bool is_prime(std::uint64_t n);

/// Smallest quadratic nonresidue modulo the odd prime p.
std::uint32_t least_nonresidue(std::uint32_t p);

struct Element {
  std::uint32_t index = 0;
  friend auto operator<=>(const Element&, const Element&) = default;
};

class PrimeField {
 public:
  /// Throws std::invalid_argument unless p is an odd prime below 2^31.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t order() const { return p_; }
  static constexpr int degree() { return 1; }

  Element zero() const { return {0}; }
  Element one() const { return {1}; }
  Element from_int(std::int64_t v) const;
  Element from_components(std::uint32_t e, std::uint32_t f) const;
  std::pair<std::uint32_t, std::uint32_t> components(Element a) const { return {a.index, 0}; }

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  /// Throws DivisionByZero for a = 0.
  Element inv(Element a) const;
  Element pow(Element a, std::uint64_t e) const;
  Element frobenius(Element a) const { return a; }

  /// -1, 0 or +1.
  int quad_char(Element a) const;
  std::size_t nonzero_square_count() const { return square_count_; }

  std::string describe() const;

 private:
  std::uint32_t p_;
  std::vector<bool> squares_;
  std::size_t square_count_ = 0;
};

/// F_p[x]/(x^2 + b x + c) for an irreducible monic quadratic.
class QuadExtField {
 public:
  /// Throws std::invalid_argument if p is not an odd prime or the modulus
  /// has a root in F_p.
  QuadExtField(std::uint32_t p, std::uint32_t b, std::uint32_t c);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t order() const { return p_ * p_; }
  static constexpr int degree() { return 2; }

  /// (b, c) of x^2 + b x + c, both reduced into 0..p-1.
  std::pair<std::uint32_t, std::uint32_t> modulus() const { return {b_, c_}; }
  /// e.g. "x^2+x+1".
  std::string modulus_string() const;

  Element zero() const { return {0}; }
  Element one() const { return {1}; }
  Element generator_x() const { return {p_}; }
  Element from_int(std::int64_t v) const;
  Element from_components(std::uint32_t e, std::uint32_t f) const;
  std::pair<std::uint32_t, std::uint32_t> components(Element a) const {
    return {a.index % p_, a.index / p_};
  }

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;
  Element pow(Element a, std::uint64_t e) const;
  /// a^p, computed as the conjugate e + f*(-b - x).
  Element frobenius(Element a) const;
  /// a * frobenius(a), an element of F_p.
  std::uint32_t norm(Element a) const;

  int quad_char(Element a) const;
  std::size_t nonzero_square_count() const { return square_count_; }

  std::string describe() const;

 private:
  std::uint32_t p_, b_, c_;
  std::vector<bool> squares_;
  std::size_t square_count_ = 0;
};

/// x^2+x+1 when p = 2 mod 3, otherwise x^2 - n for n the least nonresidue.
QuadExtField make_quadratic_extension(std::uint32_t p);

template <class F>
concept FiniteField = requires(const F& f, Element a, std::int64_t v, std::uint32_t u) {
  { f.order() } -> std::convertible_to<std::uint32_t>;
  { f.characteristic() } -> std::convertible_to<std::uint32_t>;
  { f.from_int(v) } -> std::same_as<Element>;
  { f.from_components(u, u) } -> std::same_as<Element>;
  { f.components(a) } -> std::same_as<std::pair<std::uint32_t, std::uint32_t>>;
  { f.add(a, a) } -> std::same_as<Element>;
  { f.sub(a, a) } -> std::same_as<Element>;
  { f.mul(a, a) } -> std::same_as<Element>;
  { f.inv(a) } -> std::same_as<Element>;
  { f.quad_char(a) } -> std::convertible_to<int>;
};

}  // namespace hvcheck::ff
