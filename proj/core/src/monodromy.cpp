#include "hvcheck/monodromy.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hvcheck::mono {

namespace {

constexpr int kInv[5] = {0, 1, 3, 2, 4};

int m5(int v) { return ((v % 5) + 5) % 5; }

using Unpacked = std::array<std::uint8_t, 16>;

Unpacked unpack(std::uint64_t bits) {
  Unpacked u{};
  for (int i = 0; i < 16; ++i) u[i] = static_cast<std::uint8_t>((bits >> (4 * i)) & 0xF);
  return u;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

// ---------------------------------------------------------------- MatF5

MatF5 MatF5::from_rows(const std::array<std::array<int, 4>, 4>& rows) {
  MatF5 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m.set(i, j, rows[i][j]);
  return m;
}

MatF5 MatF5::identity() { return diag(1, 1, 1, 1); }

MatF5 MatF5::diag(int a, int b, int c, int d) {
  MatF5 m;
  m.set(0, 0, a);
  m.set(1, 1, b);
  m.set(2, 2, c);
  m.set(3, 3, d);
  return m;
}

void MatF5::set(int i, int j, int v) {
  const int shift = 4 * (4 * i + j);
  bits_ = (bits_ & ~(std::uint64_t{0xF} << shift)) | (std::uint64_t(m5(v)) << shift);
}

std::array<std::array<int, 4>, 4> MatF5::rows() const {
  std::array<std::array<int, 4>, 4> r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = (*this)(i, j);
  return r;
}

MatF5 MatF5::transpose() const {
  MatF5 t;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t.set(j, i, (*this)(i, j));
  return t;
}

MatF5 operator*(const MatF5& x, const MatF5& y) {
  const Unpacked a = unpack(x.bits_), b = unpack(y.bits_);
  std::uint64_t out = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int s = a[4 * i] * b[j] + a[4 * i + 1] * b[4 + j] + a[4 * i + 2] * b[8 + j] + a[4 * i + 3] * b[12 + j];
      out |= std::uint64_t(s % 5) << (4 * (4 * i + j));
    }
  }
  return MatF5(out);
}

MatF5 MatF5::scaled(int s) const {
  MatF5 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.set(i, j, (*this)(i, j) * s);
  return r;
}

int MatF5::det() const {
  auto r = rows();
  int d = 1;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    while (piv < 4 && r[piv][c] == 0) ++piv;
    if (piv == 4) return 0;
    if (piv != c) {
      std::swap(r[piv], r[c]);
      d = m5(-d);
    }
    d = d * r[c][c] % 5;
    const int inv = kInv[r[c][c]];
    for (int i = c + 1; i < 4; ++i) {
      const int f = r[i][c] * inv % 5;
      for (int j = c; j < 4; ++j) r[i][j] = m5(r[i][j] - f * r[c][j]);
    }
  }
  return d;
}

MatF5 MatF5::inverse() const {
  auto r = rows();
  auto inv = identity().rows();
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    while (piv < 4 && r[piv][c] == 0) ++piv;
    if (piv == 4) throw std::domain_error("singular matrix over F_5");
    std::swap(r[piv], r[c]);
    std::swap(inv[piv], inv[c]);
    const int s = kInv[r[c][c]];
    for (int j = 0; j < 4; ++j) {
      r[c][j] = r[c][j] * s % 5;
      inv[c][j] = inv[c][j] * s % 5;
    }
    for (int i = 0; i < 4; ++i) {
      if (i == c || r[i][c] == 0) continue;
      const int f = r[i][c];
      for (int j = 0; j < 4; ++j) {
        r[i][j] = m5(r[i][j] - f * r[c][j]);
        inv[i][j] = m5(inv[i][j] - f * inv[c][j]);
      }
    }
  }
  return from_rows(inv);
}

std::string MatF5::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < 4; ++i) {
    os << (i ? " " : "") << "(";
    for (int j = 0; j < 4; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ")";
  }
  return os.str();
}

MatF5 pow(MatF5 m, std::int64_t e) {
  if (e < 0) {
    m = m.inverse();
    e = -e;
  }
  MatF5 r = MatF5::identity();
  while (e) {
    if (e & 1) r = r * m;
    m = m * m;
    e >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------- forms

MatF5 symplectic_form() { return MatF5::from_rows({{{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}}); }

std::optional<int> similitude(const MatF5& m) {
  static const MatF5 J = symplectic_form();
  const MatF5 x = m.transpose() * J * m;
  const int mu = m5(-x(0, 3));
  if (mu == 0 || !(x == J.scaled(mu))) return std::nullopt;
  return mu;
}

int require_similitude(const MatF5& m) {
  const auto mu = similitude(m);
  if (!mu) throw std::domain_error("matrix " + m.to_string() + " is not in GSp_4(F_5)");
  return *mu;
}

MatF5 similitude_inverse(const MatF5& g) {
  static const MatF5 J = symplectic_form();
  static const MatF5 Jinv = J.inverse();
  const int mu = require_similitude(g);
  return (Jinv * g.transpose() * J).scaled(kInv[mu]);
}

Generators monodromy_generators(int kappa) {
  if (kappa != 1 && kappa != 2) throw std::invalid_argument("kappa must be 1 or 2");
  const int k = kappa, ik = kInv[kappa];
  Generators g;
  g.A = MatF5::from_rows({{{1, -1, k, -2 * k}, {0, 1, -2 * k, -k}, {0, 0, 1, 1}, {0, 0, 0, 1}}});
  g.B = MatF5::from_rows({{{1, -2, 0, 2 * k}, {0, 1, 0, 0}, {0, -2 * ik, 1, 2}, {0, 0, 0, 1}}});
  g.C = MatF5::from_rows({{{1, -1, k, k}, {0, 0, k, k}, {0, -ik, 2, 1}, {0, 0, 0, 1}}});
  return g;
}

MatF5 monodromy_c125(int kappa) {
  if (kappa != 1 && kappa != 2) throw std::invalid_argument("kappa must be 1 or 2");
  return MatF5::identity();
}

MatF5 omega() { return MatF5::from_rows({{{1, 0, 0, 0}, {0, 0, -1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}}); }

// ---------------------------------------------------------------- words

namespace {

class WordParser {
 public:
  WordParser(const std::string& s, const Generators& g) : s_(s), g_(g) {}

  MatF5 parse() {
    if (s_.find_first_not_of(" \t") == std::string::npos) throw std::invalid_argument("empty word");
    MatF5 m = sequence();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return m;
  }

 private:
  MatF5 sequence() {
    MatF5 m = MatF5::identity();
    for (;;) {
      skip();
      if (pos_ == s_.size() || s_[pos_] == ')') return m;
      m = m * factor();
    }
  }

  MatF5 factor() {
    MatF5 base;
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      base = sequence();
      if (pos_ == s_.size() || s_[pos_] != ')') fail("missing ')'");
      ++pos_;
    } else if (c == 'A' || c == 'B' || c == 'C') {
      base = c == 'A' ? g_.A : c == 'B' ? g_.B : g_.C;
      ++pos_;
    } else if (c == 'a' || c == 'b' || c == 'c') {
      base = pow(c == 'a' ? g_.A : c == 'b' ? g_.B : g_.C, -1);
      ++pos_;
    } else {
      fail("unexpected '" + std::string(1, c) + "'");
    }
    skip();
    bool caret = false;
    if (pos_ < s_.size() && s_[pos_] == '^') {
      caret = true;
      ++pos_;
    }
    bool neg = false;
    if (caret && pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::int64_t e = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + (s_[pos_++] - '0');
        if (e > 1'000'000'000) fail("exponent too large");
      }
      return pow(base, neg ? -e : e);
    }
    if (caret) fail("exponent expected after '^'");
    return base;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("bad word '" + s_ + "' at position " + std::to_string(pos_) + ": " + what);
  }

  const std::string& s_;
  const Generators& g_;
  std::size_t pos_ = 0;
};

}  // namespace

MatF5 word_eval(const std::string& word, const Generators& g) { return WordParser(word, g).parse(); }

// ---------------------------------------------------------------- PackedSet

PackedSet::PackedSet(std::size_t expected) {
  std::size_t cap = 16;
  while (cap < 2 * expected) cap <<= 1;
  slots_.assign(cap, 0);
  mask_ = cap - 1;
}

bool PackedSet::insert(std::uint64_t key) {
  if (key == 0) throw std::invalid_argument("zero matrix cannot be stored");
  if (2 * (size_ + 1) > slots_.size()) grow();
  std::size_t i = splitmix(key) & mask_;
  while (slots_[i]) {
    if (slots_[i] == key) return false;
    i = (i + 1) & mask_;
  }
  slots_[i] = key;
  ++size_;
  return true;
}

bool PackedSet::contains(std::uint64_t key) const {
  std::size_t i = splitmix(key) & mask_;
  while (slots_[i]) {
    if (slots_[i] == key) return true;
    i = (i + 1) & mask_;
  }
  return false;
}

void PackedSet::grow() {
  std::vector<std::uint64_t> old;
  old.swap(slots_);
  slots_.assign(old.size() * 2, 0);
  mask_ = slots_.size() - 1;
  size_ = 0;
  for (auto k : old)
    if (k) insert(k);
}

std::vector<std::uint64_t> PackedSet::sorted() const {
  std::vector<std::uint64_t> out;
  out.reserve(size_);
  for (auto k : slots_)
    if (k) out.push_back(k);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- closure

GroupClosure closure(const std::vector<MatF5>& generators, std::size_t cap) {
  for (const auto& g : generators) require_similitude(g);
  GroupClosure c{PackedSet(1024), generators};
  const MatF5 id = MatF5::identity();
  c.elements.insert(id.packed());
  std::vector<MatF5> frontier{id}, next;
  while (!frontier.empty()) {
    next.clear();
    for (const auto& x : frontier) {
      for (const auto& g : generators) {
        const MatF5 y = x * g;
        if (c.elements.insert(y.packed())) {
          if (c.elements.size() > cap) throw std::length_error("closure exceeds cap of " + std::to_string(cap));
          next.push_back(y);
        }
      }
    }
    frontier.swap(next);
  }
  return c;
}

bool in_parabolic(const MatF5& m) { return m(0, 0) != 0 && m(1, 0) == 0 && m(2, 0) == 0 && m(3, 0) == 0; }

MatF5 unipotent(int a, int b, int c) {
  return MatF5::from_rows({{{1, a, b, c}, {0, 1, 0, b}, {0, 0, 1, -a}, {0, 0, 0, 1}}});
}

MatF5 ParabolicDecomp::reassemble() const {
  MatF5 l = MatF5::diag(s, 0, 0, t_over_s);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) l.set(1 + i, 1 + j, levi_block[i][j]);
  return l * unipotent(a, b, c);
}

std::optional<ParabolicDecomp> decompose(const MatF5& m) {
  if (!in_parabolic(m) || !similitude(m)) return std::nullopt;
  ParabolicDecomp d;
  d.s = m(0, 0);
  const int is = kInv[d.s];
  d.a = m(0, 1) * is % 5;
  d.b = m(0, 2) * is % 5;
  d.c = m(0, 3) * is % 5;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) d.levi_block[i][j] = m(1 + i, 1 + j);
  d.t_over_s = m(3, 3);
  if (!(d.reassemble() == m)) return std::nullopt;
  return d;
}

ImageStructureReport verify_image_structure(const GroupClosure& j) {
  ImageStructureReport r;
  r.unipotent_contained = true;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      for (int c = 0; c < 5; ++c)
        if (!j.contains(unipotent(a, b, c))) r.unipotent_contained = false;

  r.all_parabolic = true;
  r.levi_projection_ok = true;
  bool kernel_det_one = true;
  std::vector<std::uint32_t> blocks;
  j.elements.for_each([&](const MatF5& m) {
    const auto d = decompose(m);
    if (!d) {
      r.all_parabolic = false;
      return;
    }
    const int det = m5(d->levi_block[0][0] * d->levi_block[1][1] - d->levi_block[0][1] * d->levi_block[1][0]);
    if (d->s != 1 || d->t_over_s != 1 || det != 1) r.levi_projection_ok = false;
    if (d->a == 0 && d->b == 0 && d->c == 0 && d->s == 1 && d->t_over_s == 1) {
      ++r.levi_kernel_order;
      if (det != 1) kernel_det_one = false;
      blocks.push_back(static_cast<std::uint32_t>(d->levi_block[0][0] * 125 + d->levi_block[0][1] * 25 +
                                                  d->levi_block[1][0] * 5 + d->levi_block[1][1]));
    }
  });
  std::sort(blocks.begin(), blocks.end());
  const bool distinct = std::adjacent_find(blocks.begin(), blocks.end()) == blocks.end();
  // SL_2(F_5) has exactly 120 elements, so 120 distinct det-1 blocks are all of it.
  r.levi_kernel_is_sl2 = kernel_det_one && distinct && blocks.size() == 120;
  return r;
}

bool normalizes(const MatF5& g, const GroupClosure& j) {
  const MatF5 gi = similitude_inverse(g);
  for (const auto& x : j.generators) {
    if (!j.contains(g * x * gi)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Weyl

WeylReport weyl_normalizer_classes(const GroupClosure& j) {
  WeylReport r;
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    WeylClass cls{perm, 0, 0};
    for (int code = 0; code < 256; ++code) {
      MatF5 m;
      for (int i = 0; i < 4; ++i) m.set(perm[i], i, 1 + ((code >> (2 * i)) & 3));
      if (similitude(m) != 1) continue;
      ++cls.representatives;
      if (normalizes(m, j)) ++cls.normalizing;
    }
    if (cls.representatives == 0) continue;
    r.classes.push_back(cls);
    if (cls.normalizing) r.survivors.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  const std::vector<std::array<int, 4>> expected{{0, 1, 2, 3}, {0, 2, 1, 3}};
  r.passed = r.classes.size() == 8 && r.survivors == expected;
  return r;
}

// ---------------------------------------------------------------- Borel

std::vector<MatF5> borel_generators() {
  MatF5 levi_u = MatF5::identity();
  levi_u.set(1, 2, 1);
  return {MatF5::diag(2, 1, 1, 3), MatF5::diag(1, 2, 3, 1), MatF5::diag(1, 1, 2, 2), unipotent(1, 0, 0),
          unipotent(0, 1, 0),      unipotent(0, 0, 1),      levi_u};
}

BorelReport borel_normalizes(const GroupClosure& j) {
  BorelReport r;
  for (int d = 0; d < 256; ++d) {
    for (int u = 0; u < 15625; ++u) {
      MatF5 m = MatF5::diag(1 + (d & 3), 1 + ((d >> 2) & 3), 1 + ((d >> 4) & 3), 1 + ((d >> 6) & 3));
      int code = u;
      for (int i = 0; i < 4; ++i) {
        for (int k = i + 1; k < 4; ++k) {
          m.set(i, k, code % 5);
          code /= 5;
        }
      }
      if (!similitude(m)) continue;
      ++r.order;
      if (!normalizes(m, j)) {
        ++r.failures;
        if (!r.counterexample) r.counterexample = m;
      }
    }
  }
  return r;
}

std::vector<MatF5> sp4_generators() {
  static const MatF5 J = symplectic_form();
  const std::array<std::array<int, 4>, 6> vs{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}, {1, 0, 1, 0}}};
  std::vector<MatF5> out;
  for (const auto& v : vs) {
    // x -> x + <v, x> v with <v, x> = v^T J x.
    MatF5 vj;
    for (int c = 0; c < 4; ++c) {
      int s = 0;
      for (int k = 0; k < 4; ++k) s += v[k] * J(k, c);
      vj.set(0, c, s);
    }
    MatF5 t = MatF5::identity();
    for (int i = 0; i < 4; ++i)
      for (int c = 0; c < 4; ++c) t.set(i, c, t(i, c) + v[i] * vj(0, c));
    out.push_back(t);
  }
  return out;
}

BruhatReport bruhat_coverage() {
  BruhatReport r;
  const auto bgens = borel_generators();
  const GroupClosure b = closure(bgens);
  r.borel = b.order();

  PackedSet cell;
  const MatF5 w = omega();
  cell.insert(w.packed());
  std::vector<MatF5> frontier{w}, next;
  while (!frontier.empty()) {
    next.clear();
    for (const auto& x : frontier) {
      for (const auto& g : bgens) {
        for (const MatF5& y : {g * x, x * g}) {
          if (cell.insert(y.packed())) next.push_back(y);
        }
      }
    }
    frontier.swap(next);
  }
  r.big_cell = cell.size();
  std::size_t overlap = 0;
  cell.for_each([&](const MatF5& m) { overlap += b.contains(m); });
  r.union_size = r.borel + r.big_cell - overlap;

  auto pgens = bgens;
  pgens.push_back(w);
  r.parabolic = closure(pgens).order();

  auto normalize = [](std::array<int, 4> v) {
    int k = 0;
    while (v[k] == 0) ++k;
    const int s = kInv[v[k]];
    std::uint32_t code = 0;
    for (int i = 0; i < 4; ++i) code = code * 5 + static_cast<std::uint32_t>(v[i] * s % 5);
    return code;
  };
  std::vector<char> seen(625, 0);
  std::vector<std::array<int, 4>> queue{{1, 0, 0, 0}};
  seen[normalize(queue.front())] = 1;
  const auto sgens = sp4_generators();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : sgens) {
      std::array<int, 4> y{};
      for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) y[i] = (y[i] + g(i, k) * queue[head][k]) % 5;
      const auto code = normalize(y);
      if (!seen[code]) {
        seen[code] = 1;
        queue.push_back(y);
      }
    }
  }
  r.line_orbit = queue.size();
  return r;
}

ExhaustiveReport exhaustive_normalizer(const GroupClosure& j, unsigned threads) {
  ExhaustiveReport r;
  const GroupClosure sp4 = closure(sp4_generators());
  r.sp4_order = sp4.order();
  const std::vector<std::uint64_t> elems = sp4.elements.sorted();

  std::atomic<std::size_t> next{0}, checked{0}, found{0}, outside{0};
  std::mutex mutex;
  constexpr std::size_t kBlock = 4096;
  auto worker = [&] {
    std::size_t local_checked = 0, local_found = 0, local_outside = 0;
    for (;;) {
      const std::size_t lo = next.fetch_add(kBlock);
      if (lo >= elems.size()) break;
      const std::size_t hi = std::min(lo + kBlock, elems.size());
      for (std::size_t i = lo; i < hi; ++i) {
        const MatF5 g = MatF5::from_packed(elems[i]);
        for (int mu = 1; mu < 5; ++mu) {
          const MatF5 h = g * MatF5::diag(mu, mu, 1, 1);
          ++local_checked;
          if (!normalizes(h, j)) continue;
          ++local_found;
          if (!in_parabolic(h)) {
            ++local_outside;
            std::lock_guard lock(mutex);
            if (!r.counterexample) r.counterexample = h;
          }
        }
      }
    }
    checked += local_checked;
    found += local_found;
    outside += local_outside;
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  r.gsp4_checked = checked;
  r.normalizer_order = found;
  r.outside_parabolic = outside;
  return r;
}

}  // namespace hvcheck::mono
