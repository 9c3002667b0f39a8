#include "hvcheck/picard_fuchs.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "hvcheck/errors.hpp"
#include "hvcheck/monodromy.hpp"

namespace hvcheck::pf {

namespace {

constexpr int kOrder = 4;   // theta^0..theta^4
constexpr int kDegree = 3;  // phi^0..phi^3
constexpr int kUnknowns = (kOrder + 1) * (kDegree + 1);

using Matrix = std::vector<std::vector<mpq_class>>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[row]);
    const mpq_class inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      const mpq_class f = m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

Matrix recurrence_system(const std::vector<mpz_class>& a, std::size_t N) {
  if (a.size() <= N) throw std::invalid_argument("need a_0..a_N");
  Matrix m(N + 1, std::vector<mpq_class>(kUnknowns));
  for (std::size_t n = 0; n <= N; ++n) {
    for (int i = 0; i <= kOrder; ++i) {
      for (int j = 0; j <= kDegree; ++j) {
        if (n < static_cast<std::size_t>(j)) continue;
        mpz_class k = static_cast<unsigned long>(n - j), pw = 1;
        for (int e = 0; e < i; ++e) pw *= k;
        m[n][i * (kDegree + 1) + j] = pw * a[n - j];
      }
    }
  }
  return m;
}

mpz_class lcm_of_dens(const Poly& p) {
  mpz_class l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  if (n == 0) throw std::invalid_argument("divisors of zero");
  if (!n.fits_ulong_p() || n > 100'000'000) throw std::invalid_argument("coefficient too large for root search");
  std::vector<mpz_class> out;
  const unsigned long v = n.get_ui();
  for (unsigned long d = 1; d * d <= v; ++d) {
    if (v % d) continue;
    out.emplace_back(d);
    if (d * d != v) out.emplace_back(v / d);
  }
  return out;
}

}  // namespace

std::vector<mpz_class> period_coefficients(std::size_t nmax) {
  // A_m(n) sums squared multinomials over compositions of n into m parts;
  // A_m(n) = sum_i C(n,i)^2 A_{m-1}(n-i).
  std::vector<std::vector<mpz_class>> binom(nmax + 1);
  for (std::size_t n = 0; n <= nmax; ++n) {
    binom[n].resize(n + 1);
    binom[n][0] = binom[n][n] = 1;
    for (std::size_t i = 1; i < n; ++i) binom[n][i] = binom[n - 1][i - 1] + binom[n - 1][i];
  }
  std::vector<mpz_class> prev(nmax + 1, 1), cur(nmax + 1);
  for (int m = 2; m <= 5; ++m) {
    for (std::size_t n = 0; n <= nmax; ++n) {
      cur[n] = 0;
      for (std::size_t i = 0; i <= n; ++i) cur[n] += binom[n][i] * binom[n][i] * prev[n - i];
    }
    prev.swap(cur);
  }
  return prev;
}

mpz_class period_coeff(std::size_t n) { return period_coefficients(n)[n]; }

std::string poly_to_string(const Poly& p, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = p.size(); k-- > 0;) {
    if (p[k] == 0) continue;
    mpq_class c = p[k];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    if (c < 0) c = -c;
    if (c != 1 || k == 0) os << c.get_str();
    if (k > 0) os << (c != 1 ? "*" : "") << var << (k > 1 ? "^" + std::to_string(k) : "");
    first = false;
  }
  return first ? "0" : os.str();
}

mpq_class poly_eval(const Poly& p, const mpq_class& x) {
  mpq_class r = 0;
  for (std::size_t k = p.size(); k-- > 0;) r = r * x + p[k];
  return r;
}

Poly RecurrenceOperator::S(int i) const { return Poly(c[i].begin(), c[i].end()); }

mpq_class RecurrenceOperator::residual(const std::vector<mpz_class>& a, std::size_t n) const {
  if (a.size() <= n) throw std::invalid_argument("need a_0..a_n");
  mpq_class r = 0;
  for (int i = 0; i <= kOrder; ++i) {
    for (int j = 0; j <= kDegree; ++j) {
      if (n < static_cast<std::size_t>(j)) continue;
      mpz_class k = static_cast<unsigned long>(n - j), pw = 1;
      for (int e = 0; e < i; ++e) pw *= k;
      r += c[i][j] * pw * a[n - j];
    }
  }
  return r;
}

std::string RecurrenceOperator::to_string() const {
  std::ostringstream os;
  for (int i = kOrder; i >= 0; --i) os << "S" << i << " = " << poly_to_string(S(i)) << "\n";
  return os.str();
}

std::size_t recurrence_nullspace_dimension(const std::vector<mpz_class>& a, std::size_t N) {
  Matrix m = recurrence_system(a, N);
  return kUnknowns - rref(m, kUnknowns).size();
}

RecurrenceOperator recover_recurrence(const std::vector<mpz_class>& a, std::size_t N) {
  if (N < 30) throw std::invalid_argument("recurrence recovery needs N >= 30");
  Matrix m = recurrence_system(a, N);
  const auto pivots = rref(m, kUnknowns);
  const std::size_t dim = kUnknowns - pivots.size();
  if (dim != 1) {
    throw VerificationFailure("recurrence nullspace has dimension " + std::to_string(dim) + ", expected 1");
  }
  std::size_t free_col = 0;
  while (std::find(pivots.begin(), pivots.end(), free_col) != pivots.end()) ++free_col;
  std::vector<mpq_class> v(kUnknowns, 0);
  v[free_col] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free_col];

  RecurrenceOperator op;
  for (int i = 0; i <= kOrder; ++i)
    for (int j = 0; j <= kDegree; ++j) op.c[i][j] = v[i * (kDegree + 1) + j];

  // Scale so that S_4 is primitive, integral, with positive leading term.
  const Poly s4 = op.S(kOrder);
  if (std::all_of(s4.begin(), s4.end(), [](const mpq_class& x) { return x == 0; })) {
    throw VerificationFailure("recovered operator has vanishing S4");
  }
  const mpz_class l = lcm_of_dens(s4);
  mpz_class g = 0;
  for (const auto& x : s4) {
    const mpz_class n = mpz_class(x * l);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  mpq_class scale = mpq_class(l) / g;
  std::size_t lead = s4.size() - 1;
  while (s4[lead] == 0) --lead;
  if (s4[lead] < 0) scale = -scale;
  for (auto& row : op.c)
    for (auto& x : row) x *= scale;
  return op;
}

std::vector<mpq_class> rational_roots(const Poly& p) {
  Poly q = p;
  while (!q.empty() && q.back() == 0) q.pop_back();
  if (q.empty()) throw std::invalid_argument("zero polynomial");
  const mpz_class l = lcm_of_dens(q);
  std::vector<mpz_class> z;
  for (const auto& c : q) z.emplace_back(c * l);

  std::vector<mpq_class> roots;
  std::size_t low = 0;
  while (z[low] == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  if (low + 1 == z.size()) return roots;
  for (const auto& num : divisors(z[low])) {
    for (const auto& den : divisors(z.back())) {
      for (int sign : {1, -1}) {
        mpq_class x(mpz_class(sign * num), den);
        x.canonicalize();
        if (poly_eval(q, x) == 0 && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::string SingularLocus::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < finite.size(); ++i) s += (i ? ", " : "") + finite[i].get_str();
  if (infinity) s += finite.empty() ? "inf" : ", inf";
  return s + "}";
}

SingularLocus singular_locus(const RecurrenceOperator& op) {
  Poly s4 = op.S(kOrder);
  while (!s4.empty() && s4.back() == 0) s4.pop_back();
  const auto roots = rational_roots(s4);
  if (roots.size() + 1 != s4.size()) {
    throw VerificationFailure("S4 = " + poly_to_string(s4) + " does not split into distinct rational factors");
  }
  SingularLocus loc;
  loc.finite = roots;
  if (std::find(loc.finite.begin(), loc.finite.end(), mpq_class(0)) == loc.finite.end()) loc.finite.emplace_back(0);
  std::sort(loc.finite.begin(), loc.finite.end());
  return loc;
}

// ---------------------------------------------------------------- matrices

RationalMat4::RationalMat4() {
  for (auto& r : m_)
    for (auto& x : r) x = 0;
}

RationalMat4::RationalMat4(const std::array<std::array<mpq_class, 4>, 4>& rows) : m_(rows) {}

RationalMat4 RationalMat4::identity() {
  RationalMat4 m;
  for (int i = 0; i < 4; ++i) m.m_[i][i] = 1;
  return m;
}

RationalMat4 operator+(const RationalMat4& a, const RationalMat4& b) {
  RationalMat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m_[i][j] = a.m_[i][j] + b.m_[i][j];
  return r;
}

RationalMat4 operator-(const RationalMat4& a, const RationalMat4& b) { return a + b.scaled(-1); }

RationalMat4 operator*(const RationalMat4& a, const RationalMat4& b) {
  RationalMat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) r.m_[i][j] += a.m_[i][k] * b.m_[k][j];
  return r;
}

RationalMat4 RationalMat4::scaled(const mpq_class& s) const {
  RationalMat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m_[i][j] = m_[i][j] * s;
  return r;
}

RationalMat4 RationalMat4::transpose() const {
  RationalMat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m_[j][i] = m_[i][j];
  return r;
}

mpq_class RationalMat4::det() const {
  auto a = m_;
  mpq_class d = 1;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    while (piv < 4 && a[piv][c] == 0) ++piv;
    if (piv == 4) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (int r = c + 1; r < 4; ++r) {
      const mpq_class f = a[r][c] / a[c][c];
      for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

bool RationalMat4::is_zero() const {
  for (const auto& r : m_)
    for (const auto& x : r)
      if (x != 0) return false;
  return true;
}

bool operator==(const RationalMat4& a, const RationalMat4& b) { return a.m_ == b.m_; }

std::string RationalMat4::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < 4; ++i) {
    os << (i ? " " : "") << "(";
    for (int j = 0; j < 4; ++j) os << (j ? "," : "") << m_[i][j].get_str();
    os << ")";
  }
  return os.str();
}

RationalMat4 exp_nilpotent(const RationalMat4& n) {
  const RationalMat4 n2 = n * n;
  const RationalMat4 n3 = n2 * n;
  if (!(n3 * n).is_zero()) throw std::invalid_argument("matrix is not nilpotent of order <= 4");
  return RationalMat4::identity() + n + n2.scaled(mpq_class(1, 2)) + n3.scaled(mpq_class(1, 6));
}

RationalMat4 nilpotent_log(const RationalMat4& t0) {
  const RationalMat4 d = t0 - RationalMat4::identity();
  const RationalMat4 d2 = d * d;
  const RationalMat4 d3 = d2 * d;
  if (!(d3 * d).is_zero()) throw std::invalid_argument("T0 - I is not nilpotent of order <= 4");
  const RationalMat4 n = d - d2.scaled(mpq_class(1, 2)) + d3.scaled(mpq_class(1, 3));
  if (!(exp_nilpotent(n) == t0)) throw VerificationFailure("exp(log T0) != T0");
  return n;
}

int val5(const mpq_class& x) {
  if (x == 0) throw std::invalid_argument("valuation of zero");
  int v = 0;
  mpz_class n = x.get_num(), d = x.get_den();
  while (n % 5 == 0) {
    n /= 5;
    ++v;
  }
  while (d % 5 == 0) {
    d /= 5;
    --v;
  }
  return v;
}

// ---------------------------------------------------------------- lattice

RationalMat4 lemma_gram(int epsilon, int a) {
  return RationalMat4({{{0, -a, 0, epsilon}, {a, 0, -12, 0}, {0, 12, 0, 0}, {-epsilon, 0, 0, 0}}});
}

RationalMat4 standard_form(int epsilon) {
  return RationalMat4({{{0, 0, 0, epsilon}, {0, 0, -1, 0}, {0, 1, 0, 0}, {-epsilon, 0, 0, 0}}});
}

IntersectionReport intersection_checks() {
  IntersectionReport r;
  const int eps = r.epsilon;
  r.gram = lemma_gram(eps, r.a);
  r.gram_det = r.gram.det();
  r.gram_det_val5 = val5(r.gram_det);
  r.antisymmetric = r.gram.transpose() == r.gram.scaled(-1);

  // Columns are the new basis vectors in lemma coordinates.
  RationalMat4 p;
  p(0, 0) = 1;
  p(1, 1) = 1;
  p(3, 1) = -eps;
  p(2, 2) = mpq_class(1, 12);
  p(3, 3) = 1;
  r.changed = p.transpose() * r.gram * p;
  r.standard_form = r.changed == standard_form(eps) && r.changed == standard_form(-1);

  r.n_matrix(1, 0) = 1;
  r.n_matrix(2, 1) = 1;
  r.n_matrix(3, 2) = 12 * eps;
  r.n_antisymmetric = (r.n_matrix.transpose() * r.gram + r.gram * r.n_matrix).is_zero();
  const RationalMat4 n3 = r.n_matrix * r.n_matrix * r.n_matrix;
  r.n_nilpotent = (n3 * r.n_matrix).is_zero() && !n3.is_zero();

  // The reduced monodromy must preserve the form; only eps = -1 works.
  const mono::MatF5 b = mono::monodromy_generators(1).B;
  auto preserves = [&](int e) {
    const RationalMat4 f = standard_form(e);
    std::array<std::array<int, 4>, 4> rows{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) rows[i][j] = static_cast<int>(f(i, j).get_num().get_si());
    const mono::MatF5 f5 = mono::MatF5::from_rows(rows);
    return b.transpose() * f5 * b == f5;
  };
  r.sign_forced = preserves(-1) && !preserves(1);
  return r;
}

}  // namespace hvcheck::pf
