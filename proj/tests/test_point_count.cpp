#include <doctest.h>

#include <random>
#include <stdexcept>

#include "hvcheck/errors.hpp"
#include "hvcheck/point_count.hpp"
#include "oracles.hpp"

using namespace hvcheck;
using count::CountJob;
using count::CountResult;

namespace {

CountResult run(std::uint32_t p, int power, unsigned threads = 1, std::vector<std::uint32_t> bounds = {}) {
  CountJob job;
  job.p = p;
  job.power = power;
  job.threads = threads;
  job.chunk_bounds = std::move(bounds);
  return count::char_sum(job);
}

void check_same(const CountResult& a, const CountResult& b) {
  CHECK(a.p == b.p);
  CHECK(a.power == b.power);
  CHECK(a.q == b.q);
  CHECK(a.char_sum_S == b.char_sum_S);
  CHECK(a.solution_sum == b.solution_sum);
  CHECK(a.total == b.total);
}

}  // namespace

TEST_CASE("reduction guard") {
  CHECK(count::has_good_reduction(3, Rational(-7)));
  CHECK(count::has_good_reduction(113, Rational(-7)));
  CHECK_FALSE(count::has_good_reduction(7, Rational(-7)));
  CHECK_FALSE(count::has_good_reduction(2, Rational(-7)));
  CHECK_FALSE(count::has_good_reduction(5, Rational(1, 9)));    // 1/9 = 4 = 9 mod 5
  CHECK_FALSE(count::has_good_reduction(11, Rational(1)));
  CHECK_FALSE(count::has_good_reduction(13, Rational(1, 13)));  // denominator vanishes
  CHECK_FALSE(count::has_good_reduction(17, Rational(9)));
  CHECK_FALSE(count::has_good_reduction(17, Rational(25)));
  CHECK_FALSE(count::has_good_reduction(17, Rational(0)));
  CHECK_THROWS_AS(count::require_good_reduction(7, Rational(-7)), BadReduction);
  CHECK_THROWS_AS(count::count_xbar(5, 1, Rational(1, 9)), BadReduction);
  CHECK_THROWS_AS(count::require_good_reduction(15, Rational(-7)), std::invalid_argument);
}

TEST_CASE("discriminant identity") {
  // ((ab)-1-t)^2-4t = (ab+1-t)^2-4ab
  std::mt19937 rng(7);
  auto check_field = [&](const auto& k) {
    const std::uint32_t q = k.order();
    for (int i = 0; i < 1000; ++i) {
      const ff::Element x{1 + static_cast<std::uint32_t>(rng() % (q - 1))};
      const ff::Element y{1 + static_cast<std::uint32_t>(rng() % (q - 1))};
      const ff::Element z{1 + static_cast<std::uint32_t>(rng() % (q - 1))};
      const ff::Element t{static_cast<std::uint32_t>(rng() % k.characteristic())};
      const auto one = k.from_int(1);
      const auto a = k.add(k.add(one, x), k.add(y, z));
      const auto b = k.add(k.add(one, k.inv(x)), k.add(k.inv(y), k.inv(z)));
      const auto ab = k.mul(a, b);
      const auto m = k.sub(k.add(ab, one), t);
      const auto rhs = k.sub(k.mul(m, m), k.mul(k.from_int(4), ab));
      CHECK(count::discriminant(k, x, y, z, t) == rhs);
    }
  };
  check_field(ff::PrimeField(13));
  check_field(ff::PrimeField(113));
  check_field(ff::make_quadratic_extension(11));
  const ff::PrimeField k(5);
  CHECK_THROWS_AS(count::discriminant(k, k.zero(), k.one(), k.one(), k.one()), std::invalid_argument);
}

TEST_CASE("symmetry-weighted enumeration equals the ordered triple loop") {
  for (std::uint32_t p : {3u, 5u, 11u, 13u}) {
    CAPTURE(p);
    const auto r = run(p, 1);
    CHECK(r.char_sum_S == oracle::char_sum_p(p, -7));
  }
  for (std::uint32_t p : {3u, 5u}) {
    CAPTURE(p);
    const auto r = run(p, 2);
    CHECK(r.char_sum_S == oracle::char_sum_p2(p, -7));
  }
  // Other fibres exercise the tables with a different t.
  CHECK(run(11, 1).char_sum_S == oracle::char_sum_p(11, -7));
  CountJob job;
  job.p = 13;
  job.t = Rational(2, 3);
  CHECK(count::char_sum(job).char_sum_S == oracle::char_sum_p(13, (2 * 9) % 13));  // 2/3 = 2*9 mod 13
}

TEST_CASE("count assembly") {
  const auto r = run(3, 1);
  CHECK(r.q == 3);
  CHECK(r.solution_sum == static_cast<std::uint64_t>(r.char_sum_S + 8));
  CHECK(r.total == 48 * 9 + 46 * 3 + 14 + r.solution_sum);
  CHECK(r.total == 590);
  CHECK(run(3, 2).total == 4860);
  CHECK(run(11, 1).total == 7300);
  CHECK(count::count_xbar(13, 1) == 10630);
  CHECK_THROWS_AS(count::make_result(3, 1, 17), ArithmeticOverflow);
}

TEST_CASE("determinism across threads and chunkings") {
  for (auto [p, power] : {std::pair{13u, 1}, std::pair{31u, 1}, std::pair{5u, 2}, std::pair{11u, 2}}) {
    CAPTURE(p);
    CAPTURE(power);
    const auto base = run(p, power);
    const std::uint32_t q = static_cast<std::uint32_t>(base.q);
    check_same(base, run(p, power, 2));
    check_same(base, run(p, power, 3));
    check_same(base, run(p, power, 1, count::uniform_chunks(q, 1)));
    check_same(base, run(p, power, 4, count::uniform_chunks(q, q - 1)));
    check_same(base, run(p, power, 2, {1, 2, q / 2, q}));
  }
}

TEST_CASE("chunk bounds") {
  const auto b = count::uniform_chunks(121, 11);
  CHECK(b.size() == 12);
  CHECK(b.front() == 1);
  CHECK(b.back() == 121);
  CHECK(count::uniform_chunks(3, 50).size() == 3);
  CHECK_THROWS_AS(run(5, 1, 1, {1, 3, 2, 5}), std::invalid_argument);
  CHECK_THROWS_AS(run(5, 1, 1, {0, 5}), std::invalid_argument);
  CHECK_THROWS_AS(run(5, 1, 1, {1, 4}), std::invalid_argument);
}

TEST_CASE("Frobenius pairing parity") {
  // Triples not defined over F_p come in Frobenius orbits of size two with
  // equal contributions, so the F_{p^2} solution sum has the parity of the
  // contribution of the F_p-rational triples.
  for (std::uint64_t p : {3ull, 5ull, 11ull}) {
    CAPTURE(p);
    std::uint64_t rational = 0;
    const std::uint64_t tm = (p - 7 % p) % p;
    for (std::uint64_t x = 1; x < p; ++x)
      for (std::uint64_t y = 1; y < p; ++y)
        for (std::uint64_t z = 1; z < p; ++z) {
          const auto ix = oracle::powmod(x, p - 2, p), iy = oracle::powmod(y, p - 2, p),
                     iz = oracle::powmod(z, p - 2, p);
          const std::uint64_t a = (1 + x + y + z) % p, b = (1 + ix + iy + iz) % p;
          const std::uint64_t m = (a * b % p + 2 * p - 1 - tm) % p;
          const std::uint64_t d = (m * m + 4 * p - 4 * tm % p) % p;
          rational += d == 0 ? 1 : 2;  // every element of F_p is a square in F_{p^2}
        }
    CHECK(run(static_cast<std::uint32_t>(p), 2).solution_sum % 2 == rational % 2);
  }
}

TEST_CASE("traces and the character-sum identity") {
  CHECK(count::trace_h3(3, 1, 590) == -22);
  CHECK(count::trace_h3(3, 2, 4860) == -80);
  CHECK(count::trace_h3(113, 1, 2017820) == 4768);
  CHECK(count::trace_h3(113, 2, 2089302575920ULL) == -13117460);
  CHECK(count::s_identity_expected(3, 8, -2) == -(8 - 30 + 12 + 12));
  const struct {
    std::uint32_t p;
    std::int64_t a, b;
  } rows[] = {{3, 8, -2}, {11, -28, 0}, {13, 18, -4}, {17, 74, 6}, {19, 80, 2}, {29, 190, -6}, {31, 72, -4}};
  for (const auto& r : rows) {
    CAPTURE(r.p);
    const auto c = run(r.p, 1);
    CHECK(count::s_identity_check(r.p, r.a, r.b, c.char_sum_S));
    CHECK_FALSE(count::s_identity_check(r.p, r.a, r.b, c.char_sum_S + 1));
  }
}

TEST_CASE("order limit") {
  CountJob job;
  job.p = 1297;
  job.power = 2;
  CHECK_THROWS_AS(count::char_sum(job), ArithmeticOverflow);
  job.power = 3;
  CHECK_THROWS_AS(count::char_sum(job), std::invalid_argument);
}
