#include <doctest.h>

#include <stdexcept>

#include "hvcheck/errors.hpp"
#include "hvcheck/picard_fuchs.hpp"
#include "oracles.hpp"

using namespace hvcheck;
using pf::RationalMat4;

TEST_CASE("period coefficients against both oracles") {
  const auto a = pf::period_coefficients(12);
  REQUIRE(a.size() == 13);
  CHECK(a[0] == 1);
  CHECK(a[1] == 5);
  CHECK(a[2] == 45);
  CHECK(a[3] == 545);
  for (unsigned n = 0; n <= 12; ++n) {
    CAPTURE(n);
    CHECK(a[n] == oracle::composition_sum(n));
    CHECK(pf::period_coeff(n) == a[n]);
  }
  for (unsigned n = 0; n <= 5; ++n) CHECK(a[n] == oracle::constant_term(n));
}

TEST_CASE("recurrence recovery") {
  const auto a = pf::period_coefficients(60);
  CHECK(pf::recurrence_nullspace_dimension(a, 40) == 1);
  const auto op = pf::recover_recurrence(a, 40);
  const pf::Poly s4{-1, 35, -259, 225};
  CHECK(op.S(4) == s4);
  CHECK(op.S(3) == pf::Poly{0, 70, -1036, 1350});
  CHECK(op.S(2) == pf::Poly{0, 63, -1580, 2925});
  CHECK(op.S(1) == pf::Poly{0, 28, -1088, 2700});
  CHECK(op.S(0) == pf::Poly{0, 5, -285, 900});
  for (std::size_t n = 0; n <= 60; ++n) CHECK(op.residual(a, n) == 0);
  // (phi-1)(9phi-1)(25phi-1)
  for (const mpq_class root : {mpq_class(1), mpq_class(1, 9), mpq_class(1, 25)}) CHECK(pf::poly_eval(s4, root) == 0);
  CHECK(pf::poly_to_string(s4) == "225*phi^3 - 259*phi^2 + 35*phi - 1");

  const auto loc = pf::singular_locus(op);
  CHECK(loc.finite == std::vector<mpq_class>{0, mpq_class(1, 25), mpq_class(1, 9), 1});
  CHECK(loc.infinity);
  CHECK(loc.to_string() == "{0, 1/25, 1/9, 1, inf}");

  CHECK_THROWS_AS(pf::recover_recurrence(a, 20), std::invalid_argument);
  // Too few rows leave a larger nullspace.
  CHECK(pf::recurrence_nullspace_dimension(a, 10) > 1);
}

TEST_CASE("rational roots") {
  CHECK(pf::rational_roots({6, -5, 1}) == std::vector<mpq_class>{2, 3});
  CHECK(pf::rational_roots({1, 0, 1}).empty());
  CHECK(pf::rational_roots({0, -1, 4}) == std::vector<mpq_class>{0, mpq_class(1, 4)});
}

TEST_CASE("exact matrices") {
  RationalMat4 m = RationalMat4::identity();
  m(0, 1) = mpq_class(1, 2);
  m(2, 3) = 3;
  CHECK(m.det() == 1);
  CHECK((m - RationalMat4::identity()).scaled(2)(0, 1) == 1);
  CHECK((m * RationalMat4::identity()) == m);
  CHECK(m.transpose()(1, 0) == mpq_class(1, 2));
  CHECK(RationalMat4().is_zero());

  RationalMat4 n;
  n(0, 1) = 1;
  n(1, 2) = 2;
  n(2, 3) = 3;
  CHECK(pf::nilpotent_log(pf::exp_nilpotent(n)) == n);
  RationalMat4 not_unipotent = RationalMat4::identity().scaled(2);
  CHECK_THROWS_AS(pf::nilpotent_log(not_unipotent), std::invalid_argument);

  CHECK(pf::val5(mpq_class(25, 3)) == 2);
  CHECK(pf::val5(mpq_class(2, 125)) == -3);
  CHECK(pf::val5(mpq_class(144)) == 0);
}

TEST_CASE("intersection lattice") {
  const auto r = pf::intersection_checks();
  CHECK(r.epsilon == -1);
  CHECK(r.antisymmetric);
  CHECK(r.gram_det == 144);
  CHECK(r.gram_det_val5 == 0);
  CHECK(r.standard_form);
  CHECK(r.changed == pf::standard_form(-1));
  CHECK(r.n_antisymmetric);
  CHECK(r.n_nilpotent);
  CHECK(r.sign_forced);
  CHECK(r.passed());

  const auto g = pf::lemma_gram(-1);
  CHECK(g.transpose() == g.scaled(-1));
  CHECK(pf::lemma_gram(1).det() == 144);
  CHECK(pf::standard_form(-1)(0, 3) == -1);
  CHECK(pf::standard_form(1)(0, 3) == 1);
}
