#pragma once

// Points of the two-equation compactification outside the open torus,
// counted stratum by stratum in the affine toric patches of the cones
// sigma_1 (variables x,y,z,w,v) and sigma_3 (variables a,b,c,d,e), with
// each stratum weighted by its number of translates under
// H = S_5 x Z/2 acting on the fan by permuting and negating coordinates.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hvcheck/rational.hpp"

namespace hvcheck::boundary {

enum class Patch { Sigma1, Sigma3 };

using Ray = std::array<int, 5>;

struct Stratum {
  std::string name;  // e.g. "w=y=0"
  Patch patch = Patch::Sigma1;
  std::string zero_vars;  // letters set to zero
  int multiplicity = 0;   // documented number of H-translates
  std::array<int, 3> expected{};  // coefficients of p^2, p, 1
};

/// The ten strata contributing to the boundary count.
const std::vector<Stratum>& strata();

/// x,y,z,w,v (sigma_1) or a,b,c,d,e (sigma_3), in that order.
const std::array<Ray, 5>& patch_rays(Patch patch);
std::vector<Ray> stratum_rays(const Stratum& s);

constexpr int kGroupOrder = 240;
/// Size of the H-orbit of a set of rays.
std::size_t orbit_size(const std::vector<Ray>& rays);
/// Some h in H maps the ray set a onto b.
bool is_translate(const std::vector<Ray>& a, const std::vector<Ray>& b);

std::int64_t expected_count(const Stratum& s, std::uint32_t p);

/// Solutions of the patch equations with the stratum's variables zero and
/// all others nonzero. Throws BadReduction for bad p.
std::uint64_t stratum_count(const Stratum& s, std::uint32_t p, const Rational& t = Rational(-7));

std::uint64_t closed_form(std::uint32_t p);

struct StratumRow {
  std::string name;
  int multiplicity = 0;
  std::uint64_t count = 0;
  std::int64_t expected = 0;
};

struct BoundaryReport {
  std::uint32_t p = 0;
  std::vector<StratumRow> rows;
  std::uint64_t total = 0;
  std::uint64_t closed = 0;
  bool passed() const;
};

BoundaryReport boundary_total(std::uint32_t p, const Rational& t = Rational(-7));

/// Solutions of (x1+x2+x3+x4+1)(1/x1+1/x2+1/x3+1/x4+1) = t over (F_p^x)^4.
std::uint64_t torus_bruteforce(std::uint32_t p, const Rational& t = Rational(-7));

struct ConsistencyReport {
  std::uint32_t p = 0;
  std::uint64_t torus = 0;
  std::uint64_t boundary = 0;
  std::uint64_t count = 0;  // character-sum count of the smooth model
  bool passed() const { return torus + boundary == count; }
};

ConsistencyReport consistency(std::uint32_t p);

struct StructuralReport {
  bool multiplicities_are_orbits = false;  // documented values equal orbit sizes
  bool multiplicities_divide_group = false;
  bool new_strata_disjoint = false;   // b=d, b=e, b=d=e are not sigma_1 translates
  bool old_strata_translates = false;  // b, d, e, d=e are
  bool passed() const {
    return multiplicities_are_orbits && multiplicities_divide_group && new_strata_disjoint && old_strata_translates;
  }
};

StructuralReport structural_checks();

}  // namespace hvcheck::boundary
