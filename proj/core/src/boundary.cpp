#include "hvcheck/boundary.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "hvcheck/point_count.hpp"

namespace hvcheck::boundary {

namespace {

using u64 = std::uint64_t;

std::vector<Ray> canonical(std::vector<Ray> rays) {
  std::sort(rays.begin(), rays.end());
  return rays;
}

// All 240 images of a ray set, each sorted.
std::vector<std::vector<Ray>> orbit(const std::vector<Ray>& rays) {
  std::vector<std::vector<Ray>> out;
  std::array<int, 5> perm{0, 1, 2, 3, 4};
  do {
    for (int sign : {1, -1}) {
      std::vector<Ray> img;
      for (const auto& r : rays) {
        Ray y{};
        for (int i = 0; i < 5; ++i) y[perm[i]] = sign * r[i];
        img.push_back(y);
      }
      out.push_back(canonical(img));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Ray> rays_for(Patch patch, const std::string& letters) {
  const std::string names = patch == Patch::Sigma1 ? "xyzwv" : "abcde";
  std::vector<Ray> out;
  for (char c : letters) {
    const auto k = names.find(c);
    if (k == std::string::npos) throw std::invalid_argument(std::string("unknown variable ") + c);
    out.push_back(patch_rays(patch)[k]);
  }
  return out;
}

}  // namespace

const std::vector<Stratum>& strata() {
  static const std::vector<Stratum> kStrata{
      {"w=0", Patch::Sigma1, "w", 10, {1, -3, 3}},   {"y=0", Patch::Sigma1, "y", 20, {1, -3, 3}},
      {"z=0", Patch::Sigma1, "z", 20, {1, -4, 4}},   {"w=z=0", Patch::Sigma1, "wz", 40, {0, 1, -2}},
      {"w=y=0", Patch::Sigma1, "wy", 60, {0, 1, -1}}, {"y=z=0", Patch::Sigma1, "yz", 60, {0, 1, -2}},
      {"w=y=z=0", Patch::Sigma1, "wyz", 120, {0, 0, 1}}, {"b=d=0", Patch::Sigma3, "bd", 30, {0, 1, -1}},
      {"b=e=0", Patch::Sigma3, "be", 20, {0, 1, -2}}, {"b=d=e=0", Patch::Sigma3, "bde", 60, {0, 0, 1}},
  };
  return kStrata;
}

const std::array<Ray, 5>& patch_rays(Patch patch) {
  static const std::array<Ray, 5> kSigma1{{{1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 1, 1, 0, 0}, {1, 1, 1, 1, 0}, {1, 1, 1, 1, 1}}};
  static const std::array<Ray, 5> kSigma3{
      {{-1, 0, 0, 0, 0}, {-1, -1, 0, 0, 0}, {0, 0, 0, 0, 1}, {0, 0, 0, 1, 1}, {0, 0, 1, 1, 1}}};
  return patch == Patch::Sigma1 ? kSigma1 : kSigma3;
}

std::vector<Ray> stratum_rays(const Stratum& s) { return rays_for(s.patch, s.zero_vars); }

std::size_t orbit_size(const std::vector<Ray>& rays) { return orbit(rays).size(); }

bool is_translate(const std::vector<Ray>& a, const std::vector<Ray>& b) {
  const auto o = orbit(a);
  return std::binary_search(o.begin(), o.end(), canonical(b));
}

std::int64_t expected_count(const Stratum& s, std::uint32_t p) {
  const std::int64_t P = p;
  return s.expected[0] * P * P + s.expected[1] * P + s.expected[2];
}

std::uint64_t stratum_count(const Stratum& s, std::uint32_t p, const Rational& t) {
  count::require_good_reduction(p, t);
  const u64 tm = *t.reduce_mod(p);
  const std::string names = s.patch == Patch::Sigma1 ? "xyzwv" : "abcde";
  std::array<bool, 5> zero{};
  for (char c : s.zero_vars) zero[names.find(c)] = true;

  std::array<u64, 5> v{};
  std::uint64_t n = 0;
  std::function<void(int)> rec = [&](int k) {
    if (k == 5) {
      u64 e1, e2;
      if (s.patch == Patch::Sigma1) {
        const u64 x = v[0], y = v[1], z = v[2], w = v[3], u = v[4];
        const u64 wv = w * u % p, zwv = z * wv % p, yzwv = y * zwv % p, xyzwv = x * yzwv % p;
        e1 = (xyzwv + yzwv + zwv + wv + u + 1) % p;
        const u64 xy = x * y % p, xyz = xy * z % p, xyzw = xyz * w % p;
        e2 = (1 + x + xy + xyz + xyzw + tm * xyzwv) % p;
      } else {
        const u64 a = v[0], b = v[1], c = v[2], d = v[3], e = v[4];
        const u64 ab = a * b % p, cde = c * d % p * e % p, bcde = b * cde % p, abcde = a * bcde % p;
        e1 = (ab + 1 + a + ab * e % p + ab * d % p * e % p + abcde) % p;
        e2 = (abcde + bcde + c * d % p + c + 1 + tm * cde) % p;
      }
      if (e1 == 0 && e2 == 0) ++n;
      return;
    }
    if (zero[k]) {
      v[k] = 0;
      rec(k + 1);
      return;
    }
    for (u64 a = 1; a < p; ++a) {
      v[k] = a;
      rec(k + 1);
    }
  };
  rec(0);
  return n;
}

std::uint64_t closed_form(std::uint32_t p) {
  const u64 P = p;
  return 50 * P * P + 40 * P + 20;
}

bool BoundaryReport::passed() const {
  if (total != closed) return false;
  return std::all_of(rows.begin(), rows.end(),
                     [](const StratumRow& r) { return static_cast<std::int64_t>(r.count) == r.expected; });
}

BoundaryReport boundary_total(std::uint32_t p, const Rational& t) {
  BoundaryReport r;
  r.p = p;
  r.closed = closed_form(p);
  for (const auto& s : strata()) {
    const u64 c = stratum_count(s, p, t);
    r.rows.push_back({s.name, s.multiplicity, c, expected_count(s, p)});
    r.total += static_cast<u64>(s.multiplicity) * c;
  }
  return r;
}

std::uint64_t torus_bruteforce(std::uint32_t p, const Rational& t) {
  count::require_good_reduction(p, t);
  const u64 tm = *t.reduce_mod(p);
  std::vector<u64> inv(p, 0);
  for (u64 a = 1; a < p; ++a) {
    for (u64 b = 1; b < p; ++b) {
      if (a * b % p == 1) {
        inv[a] = b;
        break;
      }
    }
  }
  std::uint64_t n = 0;
  for (u64 x1 = 1; x1 < p; ++x1)
    for (u64 x2 = 1; x2 < p; ++x2)
      for (u64 x3 = 1; x3 < p; ++x3)
        for (u64 x4 = 1; x4 < p; ++x4) {
          const u64 s = (x1 + x2 + x3 + x4 + 1) % p;
          const u64 r = (inv[x1] + inv[x2] + inv[x3] + inv[x4] + 1) % p;
          if (s * r % p == tm) ++n;
        }
  return n;
}

ConsistencyReport consistency(std::uint32_t p) {
  ConsistencyReport r;
  r.p = p;
  r.torus = torus_bruteforce(p);
  r.boundary = boundary_total(p).total;
  r.count = count::count_xbar(p, 1);
  return r;
}

StructuralReport structural_checks() {
  StructuralReport r;
  r.multiplicities_are_orbits = true;
  r.multiplicities_divide_group = true;
  for (const auto& s : strata()) {
    if (orbit_size(stratum_rays(s)) != static_cast<std::size_t>(s.multiplicity)) r.multiplicities_are_orbits = false;
    if (kGroupOrder % s.multiplicity != 0) r.multiplicities_divide_group = false;
  }

  // Every nonempty subset of the sigma_1 rays.
  std::vector<std::vector<Ray>> sigma1_faces;
  const auto& s1 = patch_rays(Patch::Sigma1);
  for (int mask = 1; mask < 32; ++mask) {
    std::vector<Ray> face;
    for (int i = 0; i < 5; ++i)
      if (mask >> i & 1) face.push_back(s1[i]);
    sigma1_faces.push_back(face);
  }
  auto translate_of_sigma1 = [&](const std::string& letters) {
    const auto rays = rays_for(Patch::Sigma3, letters);
    return std::any_of(sigma1_faces.begin(), sigma1_faces.end(),
                       [&](const std::vector<Ray>& f) { return f.size() == rays.size() && is_translate(f, rays); });
  };
  r.new_strata_disjoint = !translate_of_sigma1("bd") && !translate_of_sigma1("be") && !translate_of_sigma1("bde");
  r.old_strata_translates = translate_of_sigma1("b") && translate_of_sigma1("d") && translate_of_sigma1("e") &&
                            translate_of_sigma1("de");
  return r;
}

}  // namespace hvcheck::boundary
