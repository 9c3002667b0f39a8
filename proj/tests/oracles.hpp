#pragma once

// Slow, independent reference computations used by the unit tests. None of
// them share code with the library.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

// Euler's criterion.
inline int legendre(std::int64_t a, std::uint64_t p) {
  const std::uint64_t r = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(p)) + p) % p);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// F_{p^2} as pairs (e, f) = e + f*s with s^2 = n, n a nonresidue.
struct Fp2 {
  std::uint64_t p, n;
  struct El {
    std::uint64_t e, f;
  };
  El add(El a, El b) const { return {(a.e + b.e) % p, (a.f + b.f) % p}; }
  El sub(El a, El b) const { return {(a.e + p - b.e) % p, (a.f + p - b.f) % p}; }
  El mul(El a, El b) const { return {(a.e * b.e + a.f * b.f % p * n) % p, (a.e * b.f + a.f * b.e) % p}; }
  El pow(El a, std::uint64_t k) const {
    El r{1, 0};
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }
  El inv(El a) const { return pow(a, p * p - 2); }
  int chi(El a) const {
    if (a.e == 0 && a.f == 0) return 0;
    const El r = pow(a, (p * p - 1) / 2);
    return r.e == 1 && r.f == 0 ? 1 : -1;
  }
};

inline std::uint64_t nonresidue(std::uint64_t p) {
  for (std::uint64_t n = 2;; ++n)
    if (legendre(static_cast<std::int64_t>(n), p) == -1) return n;
}

// Sum of chi(D) over all ordered triples of nonzero x, y, z in F_p, with
// D = (ab - 1 - t)^2 - 4t, a = 1+x+y+z, b = 1+1/x+1/y+1/z.
inline std::int64_t char_sum_p(std::uint64_t p, std::int64_t t) {
  const std::uint64_t tm = static_cast<std::uint64_t>(((t % static_cast<std::int64_t>(p)) + p) % p);
  std::vector<std::uint64_t> inv(p);
  for (std::uint64_t x = 1; x < p; ++x) inv[x] = powmod(x, p - 2, p);
  std::int64_t s = 0;
  for (std::uint64_t x = 1; x < p; ++x)
    for (std::uint64_t y = 1; y < p; ++y)
      for (std::uint64_t z = 1; z < p; ++z) {
        const std::uint64_t a = (1 + x + y + z) % p;
        const std::uint64_t b = (1 + inv[x] + inv[y] + inv[z]) % p;
        const std::uint64_t m = (a * b % p + 2 * p - 1 - tm) % p;
        const std::uint64_t d = (m * m % p + 4 * p - 4 * tm % p) % p;
        s += legendre(static_cast<std::int64_t>(d), p);
      }
  return s;
}

inline std::vector<Fp2::El> nonzero_elements(const Fp2& k) {
  std::vector<Fp2::El> out;
  for (std::uint64_t e = 0; e < k.p; ++e)
    for (std::uint64_t f = 0; f < k.p; ++f)
      if (e || f) out.push_back({e, f});
  return out;
}

// As char_sum_p over F_{p^2}.
inline std::int64_t char_sum_p2(std::uint64_t p, std::int64_t t) {
  const Fp2 k{p, nonresidue(p)};
  const Fp2::El tt{static_cast<std::uint64_t>(((t % static_cast<std::int64_t>(p)) + p) % p), 0};
  const Fp2::El one{1, 0}, four{4 % p, 0};
  const auto els = nonzero_elements(k);
  std::vector<Fp2::El> invs;
  for (const auto& x : els) invs.push_back(k.inv(x));
  std::int64_t s = 0;
  for (std::size_t i = 0; i < els.size(); ++i)
    for (std::size_t j = 0; j < els.size(); ++j)
      for (std::size_t l = 0; l < els.size(); ++l) {
        const auto a = k.add(k.add(one, els[i]), k.add(els[j], els[l]));
        const auto b = k.add(k.add(one, invs[i]), k.add(invs[j], invs[l]));
        const auto m = k.sub(k.sub(k.mul(a, b), one), tt);
        s += k.chi(k.sub(k.mul(m, m), k.mul(four, tt)));
      }
  return s;
}

// Number of (x, y) with y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_p.
inline std::uint64_t affine_points(std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t a4, std::int64_t a6,
                                   std::int64_t p) {
  auto md = [p](std::int64_t v) { return ((v % p) + p) % p; };
  std::uint64_t n = 0;
  for (std::int64_t x = 0; x < p; ++x)
    for (std::int64_t y = 0; y < p; ++y) {
      const std::int64_t lhs = md(y * y + md(a1 * x) * y + md(a3) * y);
      const std::int64_t rhs = md(md(x * x) * x + md(a2) * md(x * x) + md(a4) * x + a6);
      if (lhs == rhs) ++n;
    }
  return n;
}

inline mpz_class factorial(unsigned n) {
  mpz_class r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

// Sum over compositions i+j+k+l+m = n of the squared multinomial.
inline mpz_class composition_sum(unsigned n) {
  mpz_class sum = 0;
  const mpz_class nf = factorial(n);
  for (unsigned i = 0; i <= n; ++i)
    for (unsigned j = 0; i + j <= n; ++j)
      for (unsigned k = 0; i + j + k <= n; ++k)
        for (unsigned l = 0; i + j + k + l <= n; ++l) {
          const unsigned m = n - i - j - k - l;
          const mpz_class c = nf / (factorial(i) * factorial(j) * factorial(k) * factorial(l) * factorial(m));
          sum += c * c;
        }
  return sum;
}

// Constant term of ((1+x1+x2+x3+x4)(1+1/x1+1/x2+1/x3+1/x4))^n.
inline mpz_class constant_term(unsigned n) {
  using Mono = std::array<int, 4>;
  std::map<Mono, mpz_class> base, poly{{Mono{}, 1}};
  const std::array<Mono, 5> lin{Mono{}, Mono{1, 0, 0, 0}, Mono{0, 1, 0, 0}, Mono{0, 0, 1, 0}, Mono{0, 0, 0, 1}};
  for (const auto& a : lin)
    for (const auto& b : lin) {
      Mono m{};
      for (int i = 0; i < 4; ++i) m[i] = a[i] - b[i];
      base[m] += 1;
    }
  for (unsigned step = 0; step < n; ++step) {
    std::map<Mono, mpz_class> next;
    for (const auto& [m1, c1] : poly)
      for (const auto& [m2, c2] : base) {
        Mono m{};
        for (int i = 0; i < 4; ++i) m[i] = m1[i] + m2[i];
        next[m] += c1 * c2;
      }
    poly.swap(next);
  }
  return poly[Mono{}];
}

}  // namespace oracle
