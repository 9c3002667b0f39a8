#pragma once

// Period coefficients a_n of the holomorphic period, recovery of the
// order-4 Picard-Fuchs operator sum_i S_i(phi) theta^i from them, and exact
// linear algebra on the intersection lattice near phi = 1/25.

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace hvcheck::pf {

/// a_n = sum over i+j+k+l+m = n of (n!/(i!j!k!l!m!))^2, for n = 0..nmax.
std::vector<mpz_class> period_coefficients(std::size_t nmax);
mpz_class period_coeff(std::size_t n);

/// Polynomial with exact rational coefficients, lowest degree first.
using Poly = std::vector<mpq_class>;
std::string poly_to_string(const Poly& p, const std::string& var = "phi");
mpq_class poly_eval(const Poly& p, const mpq_class& x);

/// sum_{i<=4, j<=3} c[i][j] phi^j theta^i.
struct RecurrenceOperator {
  std::array<std::array<mpq_class, 4>, 5> c;
  Poly S(int i) const;
  /// Coefficient of phi^n in L applied to sum a_k phi^k.
  mpq_class residual(const std::vector<mpz_class>& a, std::size_t n) const;
  std::string to_string() const;
};

/// Dimension of the space of operators annihilating a_0..a_N (rows
/// n = 0..N of the linear system).
std::size_t recurrence_nullspace_dimension(const std::vector<mpz_class>& a, std::size_t N);

/// Solves rows n = 0..N and normalises so S_4 is primitive integral with a
/// positive leading coefficient. Requires N >= 30 and a.size() > N; throws
/// VerificationFailure unless the nullspace is one-dimensional.
RecurrenceOperator recover_recurrence(const std::vector<mpz_class>& a, std::size_t N);

struct SingularLocus {
  std::vector<mpq_class> finite;  // sorted, including 0
  bool infinity = true;
  std::string to_string() const;
};

/// {0, infinity} together with the roots of S_4. Throws VerificationFailure
/// when S_4 does not split into distinct rational linear factors.
SingularLocus singular_locus(const RecurrenceOperator& op);

/// Distinct rational roots of a polynomial with rational coefficients.
std::vector<mpq_class> rational_roots(const Poly& p);

class RationalMat4 {
 public:
  RationalMat4();
  explicit RationalMat4(const std::array<std::array<mpq_class, 4>, 4>& rows);
  static RationalMat4 identity();

  mpq_class& operator()(int i, int j) { return m_[i][j]; }
  const mpq_class& operator()(int i, int j) const { return m_[i][j]; }

  friend RationalMat4 operator+(const RationalMat4& a, const RationalMat4& b);
  friend RationalMat4 operator-(const RationalMat4& a, const RationalMat4& b);
  friend RationalMat4 operator*(const RationalMat4& a, const RationalMat4& b);
  RationalMat4 scaled(const mpq_class& s) const;
  RationalMat4 transpose() const;
  mpq_class det() const;
  bool is_zero() const;
  friend bool operator==(const RationalMat4& a, const RationalMat4& b);
  std::string to_string() const;

 private:
  std::array<std::array<mpq_class, 4>, 4> m_;
};

/// log(T0) = D - D^2/2 + D^3/3 with D = T0 - I. Throws std::invalid_argument
/// unless D^4 = 0, and VerificationFailure if the truncated exponential does
/// not return T0.
RationalMat4 nilpotent_log(const RationalMat4& t0);
RationalMat4 exp_nilpotent(const RationalMat4& n);

/// 5-adic valuation of a nonzero rational.
int val5(const mpq_class& x);

struct IntersectionReport {
  int epsilon = -1;   // <sigma, tau>
  int a = -1;         // <N sigma, sigma>
  RationalMat4 gram;  // on {sigma, N sigma, N^2 sigma, tau}
  mpq_class gram_det;
  int gram_det_val5 = 0;
  bool antisymmetric = false;
  RationalMat4 changed;  // on {sigma, N sigma - eps tau, N^2 sigma / 12, tau}
  bool standard_form = false;
  RationalMat4 n_matrix;  // N on the lemma basis, N^3 sigma = 12 eps tau
  bool n_antisymmetric = false;
  bool n_nilpotent = false;
  bool sign_forced = false;  // B preserves the eps = -1 form only
  bool passed() const {
    return antisymmetric && gram_det == 144 && gram_det_val5 == 0 && standard_form && n_antisymmetric &&
           n_nilpotent && sign_forced;
  }
};

/// Gram matrix of the intersection pairing for the given sign and a = -1.
RationalMat4 lemma_gram(int epsilon, int a = -1);
/// The standard form with first row (0,0,0,epsilon).
RationalMat4 standard_form(int epsilon);

IntersectionReport intersection_checks();

}  // namespace hvcheck::pf
