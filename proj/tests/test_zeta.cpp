#include <doctest.h>

#include <random>
#include <stdexcept>

#include "hvcheck/errors.hpp"
#include "hvcheck/zeta.hpp"

using namespace hvcheck;
using zeta::EulerSplit;

namespace {

// (1 - u T + p^3 T^2)(1 - v T + p^3 T^2) by schoolbook multiplication.
std::array<std::int64_t, 5> product(std::int64_t u, std::int64_t v, std::int64_t p) {
  const std::int64_t p3 = p * p * p;
  const std::array<std::int64_t, 3> f{1, -u, p3}, g{1, -v, p3};
  std::array<std::int64_t, 5> out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i + j] += f[i] * g[j];
  return out;
}

std::int64_t isqrt(std::int64_t n) {
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

TEST_CASE("forward traces") {
  const auto d = zeta::forward_traces(3, {8, -6});
  CHECK(d.t1 == -22);
  CHECK(d.t2 == -80);
  const auto e = zeta::forward_traces(113, {1378, 678});
  CHECK(e.t1 == 4768);
  CHECK(e.t2 == -13117460);
}

TEST_CASE("split of the table rows") {
  const struct {
    std::uint32_t p;
    std::int64_t b, a;
  } rows[] = {{3, -2, 8},  {11, 0, -28}, {13, -4, 18}, {17, 6, 74},
              {19, 2, 80}, {29, -6, 190}, {31, -4, 72}, {113, 6, 1378}};
  for (const auto& r : rows) {
    CAPTURE(r.p);
    const std::int64_t P = r.p;
    const zeta::TraceData d{r.p, r.a + 5 * P * r.b, (r.a * r.a - 2 * P * P * P) + 5 * P * P * (r.b * r.b - 2 * P)};
    const auto s = zeta::split_traces(d);
    CHECK(s.u == r.a);
    CHECK(s.v == P * r.b);
  }
}

TEST_CASE("split round trip on random admissible pairs") {
  for (std::uint32_t p : {3u, 11u, 13u}) {
    CAPTURE(p);
    const std::int64_t P = p, bound = isqrt(4 * P * P * P);
    std::mt19937_64 rng(p * 1000 + 1);
    std::uniform_int_distribution<std::int64_t> du(-bound, bound), dw(-bound / P, bound / P);
    int unique = 0, ambiguous = 0;
    while (unique < 1000) {
      const EulerSplit s{du(rng), P * dw(rng)};
      const auto d = zeta::forward_traces(p, s);
      const auto roots = zeta::admissible_splits(d);
      REQUIRE(!roots.empty());
      CHECK(std::find(roots.begin(), roots.end(), s) != roots.end());
      if (roots.size() == 1) {
        CHECK(zeta::split_traces(d) == s);
        ++unique;
      } else {
        // Fail closed: both candidates are reported.
        CHECK_THROWS_AS(zeta::split_traces(d), VerificationFailure);
        ++ambiguous;
      }
    }
    MESSAGE("p=" << p << ": " << ambiguous << " ambiguous samples alongside 1000 unique splits");
  }
}

TEST_CASE("split failures") {
  const auto d = zeta::forward_traces(13, {18, -52});
  CHECK_THROWS_AS(zeta::split_traces({13, d.t1, d.t2 + 2}), VerificationFailure);
  CHECK_THROWS_AS(zeta::split_traces({13, d.t1 + 1, d.t2}), VerificationFailure);
  CHECK(zeta::admissible_splits({13, 0, 1}).empty());
}

TEST_CASE("Euler factor") {
  for (std::uint32_t p : {3u, 11u, 113u}) {
    const std::int64_t P = p;
    const EulerSplit s{17, -2 * P};
    const auto f = zeta::euler_factor_quotient(s, p);
    CHECK(f.c == product(s.u, s.v, P));
    CHECK(f.c[0] == 1);
    CHECK(f.c[4] == P * P * P * P * P * P);
    CHECK(f.c[3] == P * P * P * f.c[1]);
  }
}

TEST_CASE("Euler factor conjecture report") {
  const auto ok = zeta::verify_conjecture1(3, 590, 4860, 8, -2);
  CHECK(ok.passed);
  CHECK(ok.failed_stage.empty());
  CHECK(ok.traces.t1 == -22);
  CHECK(ok.factor.c == product(8, -6, 3));

  const auto bad_b = zeta::verify_conjecture1(3, 590, 4860, 8, 2);
  CHECK_FALSE(bad_b.passed);
  CHECK(bad_b.failed_stage.find("weight-2") != std::string::npos);

  const auto bad_count = zeta::verify_conjecture1(3, 591, 4860, 8, -2);
  CHECK_FALSE(bad_count.passed);
  CHECK(bad_count.failed_stage.find("split") != std::string::npos);
}

TEST_CASE("residue pairs") {
  CHECK(zeta::mod5_pair({72, -124}) == std::pair{1, 2});
  CHECK(zeta::mod5_pair({-7, 3}) == std::pair{3, 3});
  CHECK(zeta::mod5_pair({0, -1}) == std::pair{0, 4});
}
