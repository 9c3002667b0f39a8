#include <doctest.h>

#include <array>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

#include "hvcheck/monodromy.hpp"

using namespace hvcheck::mono;

namespace {

using Plain = std::array<int, 16>;

Plain plain(const MatF5& m) {
  Plain out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[4 * i + j] = m(i, j);
  return out;
}

Plain mul(const Plain& a, const Plain& b) {
  Plain c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      int s = 0;
      for (int k = 0; k < 4; ++k) s += a[4 * i + k] * b[4 * k + j];
      c[4 * i + j] = s % 5;
    }
  return c;
}

// Breadth-first closure on plain arrays, independent of PackedSet.
std::size_t naive_order(const std::vector<MatF5>& gens) {
  std::set<Plain> seen;
  std::queue<Plain> todo;
  Plain id{};
  for (int i = 0; i < 4; ++i) id[5 * i] = 1;
  seen.insert(id);
  todo.push(id);
  while (!todo.empty()) {
    const Plain x = todo.front();
    todo.pop();
    for (const auto& g : gens) {
      const Plain y = mul(x, plain(g));
      if (seen.insert(y).second) todo.push(y);
    }
  }
  return seen.size();
}

MatF5 random_matrix(std::mt19937& rng) {
  std::array<std::array<int, 4>, 4> r{};
  for (auto& row : r)
    for (auto& v : row) v = static_cast<int>(rng() % 5);
  return MatF5::from_rows(r);
}

}  // namespace

TEST_CASE("packed matrix arithmetic") {
  std::mt19937 rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_matrix(rng), b = random_matrix(rng);
    CHECK(plain(a * b) == mul(plain(a), plain(b)));
    CHECK(MatF5::from_rows(a.rows()) == a);
    CHECK(a.transpose().transpose() == a);
    CHECK((a * b).det() == a.det() * b.det() % 5);
    if (a.det() != 0) {
      CHECK(a * a.inverse() == MatF5::identity());
      CHECK(pow(a, -3) * pow(a, 3) == MatF5::identity());
    } else {
      CHECK_THROWS_AS(a.inverse(), std::domain_error);
    }
  }
  CHECK(MatF5::diag(1, 2, 3, 4).det() == 4);
  CHECK(MatF5::identity().scaled(3) == MatF5::diag(3, 3, 3, 3));
  CHECK(pow(MatF5::diag(2, 1, 1, 1), 4) == MatF5::identity());
}

TEST_CASE("generators are symplectic similitudes") {
  const auto j = symplectic_form();
  CHECK(j.det() == 1);
  for (int kappa : {1, 2}) {
    for (const auto& g : monodromy_generators(kappa).list()) {
      REQUIRE(similitude(g).has_value());
      const int mu = *similitude(g);
      CHECK(g.transpose() * j * g == j.scaled(mu));
      CHECK(similitude_inverse(g) == g.inverse());
    }
  }
  CHECK(monodromy_c125(1) == MatF5::identity());
  CHECK_FALSE(similitude(MatF5::diag(1, 1, 1, 2)).has_value());
  CHECK_THROWS_AS(require_similitude(MatF5::diag(1, 1, 1, 2)), std::domain_error);
  CHECK_THROWS_AS(monodromy_generators(3), std::invalid_argument);
}

TEST_CASE("word evaluation") {
  const auto g = monodromy_generators(1);
  CHECK(word_eval("A", g) == g.A);
  CHECK(word_eval("a", g) == g.A.inverse());
  CHECK(word_eval("A^-2", g) == pow(g.A, -2));
  CHECK(word_eval("(AB)2", g) == g.A * g.B * g.A * g.B);
  CHECK(word_eval("A2B2C3", g) == g.A * g.A * g.B * g.B * g.C * g.C * g.C);
  CHECK(word_eval("(AB3)3", g) ==
        MatF5::from_rows({{{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}}));
  CHECK(word_eval("A2B2C3", g) ==
        MatF5::from_rows({{{1, 4, 3, 2}, {0, 3, 0, 4}, {0, 0, 2, 2}, {0, 0, 0, 1}}}));
  CHECK(word_eval("(AB2)2(AB)3(AB3)12", g) ==
        MatF5::from_rows({{{1, 0, 2, 0}, {0, 1, 0, 2}, {0, 0, 1, 0}, {0, 0, 0, 1}}}));
  CHECK(word_eval("((AB2)2(AB)3)2(AB)3(BC)2(AB3)6", g) ==
        MatF5::from_rows({{{1, 4, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}}}));
  CHECK_THROWS_AS(word_eval("", g), std::invalid_argument);
  CHECK_THROWS_AS(word_eval("AD", g), std::invalid_argument);
  CHECK_THROWS_AS(word_eval("(AB", g), std::invalid_argument);
}

TEST_CASE("packed set") {
  PackedSet s(4);
  for (std::uint64_t k = 1; k <= 5000; ++k) CHECK(s.insert(k * 7919));
  CHECK_FALSE(s.insert(7919));
  CHECK(s.size() == 5000);
  CHECK(s.contains(5000 * 7919));
  CHECK_FALSE(s.contains(3));
  const auto v = s.sorted();
  CHECK(std::is_sorted(v.begin(), v.end()));
  CHECK_THROWS_AS(s.insert(0), std::invalid_argument);
}

TEST_CASE("closure orders") {
  CHECK(closure({MatF5::identity()}).order() == 1);
  CHECK(closure({MatF5::diag(2, 2, 2, 2)}).order() == 4);
  const auto j = closure(monodromy_generators(1).list());
  CHECK(j.order() == 15000);
  CHECK(naive_order(monodromy_generators(1).list()) == 15000);
  CHECK(closure(monodromy_generators(2).list()).order() == 15000);
  CHECK(closure(borel_generators()).order() == 40000);
  CHECK_THROWS_AS(closure({MatF5::diag(1, 1, 1, 2)}), std::domain_error);
  CHECK_THROWS_AS(closure(borel_generators(), 1000), std::length_error);
}

TEST_CASE("parabolic decomposition") {
  const auto j = closure(monodromy_generators(1).list());
  std::size_t n = 0;
  j.elements.for_each([&](const MatF5& m) {
    CHECK(in_parabolic(m));
    const auto d = decompose(m);
    REQUIRE(d.has_value());
    CHECK(d->reassemble() == m);
    ++n;
  });
  CHECK(n == 15000);
  CHECK(in_parabolic(omega()));
  CHECK_FALSE(in_parabolic(symplectic_form()));
  CHECK_FALSE(decompose(symplectic_form()).has_value());
  const auto u = unipotent(1, 2, 3) * unipotent(4, 3, 2);
  const auto du = decompose(u);
  REQUIRE(du.has_value());
  CHECK(du->s == 1);
  CHECK(du->t_over_s == 1);
  CHECK(du->levi_block == std::array<std::array<int, 2>, 2>{{{1, 0}, {0, 1}}});
  CHECK(unipotent(du->a, du->b, du->c) == u);
}

TEST_CASE("image structure") {
  const auto j = closure(monodromy_generators(1).list());
  const auto r = verify_image_structure(j);
  CHECK(r.all_parabolic);
  CHECK(r.unipotent_contained);
  CHECK(r.levi_kernel_order == 120);
  CHECK(r.levi_kernel_is_sl2);
  CHECK(r.levi_projection_ok);
  CHECK(r.passed());
  // U has order 125.
  CHECK(closure({unipotent(1, 0, 0), unipotent(0, 1, 0), unipotent(0, 0, 1)}).order() == 125);
}

TEST_CASE("normalizer") {
  const auto j = closure(monodromy_generators(1).list());
  CHECK(normalizes(MatF5::identity(), j));
  CHECK(normalizes(omega(), j));
  const auto w = weyl_normalizer_classes(j);
  CHECK(w.classes.size() == 8);
  CHECK(w.passed);
  REQUIRE(w.survivors.size() == 2);
  CHECK(w.survivors[0] == std::array<int, 4>{0, 1, 2, 3});
  const auto b = borel_normalizes(j);
  CHECK(b.passed());
  const auto br = bruhat_coverage();
  CHECK(br.borel == 40000);
  CHECK(br.big_cell == 200000);
  CHECK(br.union_size == 240000);
  CHECK(br.parabolic == 240000);
  CHECK(br.line_orbit == 156);
  CHECK(closure(sp4_generators()).order() == 9360000);
}
