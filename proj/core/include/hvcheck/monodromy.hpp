#pragma once

// 4x4 matrices over F_5 and the subgroup J of GSp_4(F_5) generated by the
// reduced local monodromy matrices A, B, C.
//
// The symplectic form is J with rows (0,0,0,-1), (0,0,-1,0), (0,1,0,0),
// (1,0,0,0); P is the parabolic fixing the line <e1>, B the upper
// triangular Borel and U the unipotent radical of P, whose elements are
//
//   [1 a b  c]
//   [0 1 0  b]
//   [0 0 1 -a]
//   [0 0 0  1].

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hvcheck::mono {

/// Row-major, 4 bits per entry. The zero matrix packs to 0, which the hash
/// set uses as its empty marker (no group element is zero).
class MatF5 {
 public:
  constexpr MatF5() = default;
  static MatF5 from_rows(const std::array<std::array<int, 4>, 4>& rows);
  static MatF5 from_packed(std::uint64_t bits) { return MatF5(bits); }
  static MatF5 identity();
  static MatF5 diag(int a, int b, int c, int d);

  int operator()(int i, int j) const { return static_cast<int>((bits_ >> (4 * (4 * i + j))) & 0xF); }
  void set(int i, int j, int v);
  std::uint64_t packed() const { return bits_; }
  std::array<std::array<int, 4>, 4> rows() const;

  MatF5 transpose() const;
  int det() const;
  /// Throws std::domain_error for singular matrices.
  MatF5 inverse() const;

  friend MatF5 operator*(const MatF5& x, const MatF5& y);
  MatF5 scaled(int s) const;
  friend bool operator==(const MatF5&, const MatF5&) = default;

  std::string to_string() const;

 private:
  explicit constexpr MatF5(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

MatF5 pow(MatF5 m, std::int64_t e);

MatF5 symplectic_form();
/// mu with M^T J M = mu J, or nullopt when M is not a symplectic similitude.
std::optional<int> similitude(const MatF5& m);
/// As similitude, but throws std::domain_error.
int require_similitude(const MatF5& m);
/// g^{-1} computed as mu^{-1} J^{-1} g^T J.
MatF5 similitude_inverse(const MatF5& g);

struct Generators {
  MatF5 A, B, C;
  std::vector<MatF5> list() const { return {A, B, C}; }
};

/// Reduced monodromy at c_0, c_{1/9}, c_1 for kappa in {1, 2}.
Generators monodromy_generators(int kappa = 1);
/// Reduced monodromy at c_{1/25} (the identity).
MatF5 monodromy_c125(int kappa = 1);
MatF5 omega();

/// Evaluates words such as "A2B2C3", "(AB3)3", "a^-2(BC)^2". Uppercase
/// letters are generators, lowercase their inverses; an integer (optionally
/// after '^', possibly negative) is an exponent of the preceding factor.
MatF5 word_eval(const std::string& word, const Generators& g);

/// Open-addressing set of packed matrices.
class PackedSet {
 public:
  explicit PackedSet(std::size_t expected = 1024);
  bool insert(std::uint64_t key);
  bool contains(std::uint64_t key) const;
  std::size_t size() const { return size_; }
  std::vector<std::uint64_t> sorted() const;
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (auto k : slots_)
      if (k) fn(MatF5::from_packed(k));
  }

 private:
  void grow();
  std::vector<std::uint64_t> slots_;
  std::size_t size_ = 0, mask_ = 0;
};

struct GroupClosure {
  PackedSet elements;
  std::vector<MatF5> generators;
  std::size_t order() const { return elements.size(); }
  bool contains(const MatF5& m) const { return elements.contains(m.packed()); }
};

constexpr std::size_t kDefaultClosureCap = 40'000'000;

/// Breadth-first closure under right multiplication by the generators.
/// Throws std::domain_error if a generator is not a similitude and
/// std::length_error when the cap is exceeded.
GroupClosure closure(const std::vector<MatF5>& generators, std::size_t cap = kDefaultClosureCap);

/// First column is a nonzero multiple of e1.
bool in_parabolic(const MatF5& m);

struct ParabolicDecomp {
  int s = 1;
  std::array<std::array<int, 2>, 2> levi_block{};
  int t_over_s = 1;
  int a = 0, b = 0, c = 0;
  /// diag(s, levi_block, t_over_s) * u(a, b, c).
  MatF5 reassemble() const;
};

MatF5 unipotent(int a, int b, int c);
/// Levi-times-unipotent factorisation of an element of P, or nullopt when m
/// is not in P.
std::optional<ParabolicDecomp> decompose(const MatF5& m);

struct ImageStructureReport {
  bool unipotent_contained = false;
  std::size_t levi_kernel_order = 0;  // elements with trivial U-part and corners 1
  bool levi_kernel_is_sl2 = false;
  bool levi_projection_ok = false;  // every element: corners 1, det-1 block
  bool all_parabolic = false;
  bool passed() const {
    return unipotent_contained && levi_kernel_order == 120 && levi_kernel_is_sl2 && levi_projection_ok && all_parabolic;
  }
};

ImageStructureReport verify_image_structure(const GroupClosure& j);

/// g normalises J when gXg^{-1} lies in J for each generator X of J.
bool normalizes(const MatF5& g, const GroupClosure& j);

struct WeylClass {
  std::array<int, 4> perm{};  // image of basis index i is perm[i]
  std::size_t representatives = 0;  // monomial elements of Sp_4 in the class
  std::size_t normalizing = 0;
};

struct WeylReport {
  std::vector<WeylClass> classes;            // all 8 classes
  std::vector<std::array<int, 4>> survivors;  // classes with a normalising representative
  bool passed = false;                        // survivors are exactly {id, omega}
};

WeylReport weyl_normalizer_classes(const GroupClosure& j);

struct BorelReport {
  std::size_t order = 0;
  std::size_t failures = 0;
  std::optional<MatF5> counterexample;
  bool passed() const { return order == 40000 && failures == 0; }
};

BorelReport borel_normalizes(const GroupClosure& j);

/// Generators of the Borel subgroup of GSp_4(F_5).
std::vector<MatF5> borel_generators();
/// Symplectic transvections generating Sp_4(F_5).
std::vector<MatF5> sp4_generators();

struct BruhatReport {
  std::size_t borel = 0;
  std::size_t big_cell = 0;   // |B omega B|
  std::size_t union_size = 0;
  std::size_t parabolic = 0;  // closure of B and omega
  std::size_t line_orbit = 0;  // orbit of <e1> under Sp_4
  bool passed() const {
    return borel == 40000 && union_size == parabolic && parabolic == 240000 && line_orbit == 156;
  }
};

BruhatReport bruhat_coverage();

struct ExhaustiveReport {
  std::size_t sp4_order = 0;
  std::size_t gsp4_checked = 0;
  std::size_t normalizer_order = 0;
  std::size_t outside_parabolic = 0;
  std::optional<MatF5> counterexample;
  bool passed() const { return sp4_order == 9'360'000 && gsp4_checked == 37'440'000 && outside_parabolic == 0; }
};

/// Sweeps all of GSp_4(F_5); minutes of CPU and a few hundred MB.
ExhaustiveReport exhaustive_normalizer(const GroupClosure& j, unsigned threads = 1);

}  // namespace hvcheck::mono
