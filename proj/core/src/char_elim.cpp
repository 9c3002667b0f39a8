#include "hvcheck/char_elim.hpp"

#include <algorithm>
#include <stdexcept>

#include "hvcheck/errors.hpp"

namespace hvcheck::charelim {

namespace {

constexpr int kInv5[5] = {0, 1, 3, 2, 4};

void require_admissible(std::uint32_t p) {
  if (p % 2 == 0 || p % 7 == 0) throw std::invalid_argument(std::to_string(p) + " is not coprime to 14");
}

int pow5(int b, int e) {
  int r = 1;
  while (e-- > 0) r = r * b % 5;
  return r;
}

int signed5(int v) { return v == 4 ? -1 : v; }

}  // namespace

std::string CharCandidate::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(d) + "," + std::to_string(e) + "," + std::to_string(f) + ")";
}

std::vector<CharCandidate> all_candidates() {
  std::vector<CharCandidate> out;
  for (int a : {-1, 0})
    for (int d = 0; d < 4; ++d)
      for (int e = 0; e < 2; ++e)
        for (int f = 0; f < 2; ++f) out.push_back({a, d, e, f});
  return out;
}

int psi1(std::uint32_t p) {
  require_admissible(p);
  // (Z/16)^x = <3> x <-1>; 3^k = 1, 3, 9, 11 and -3^k = 15, 13, 7, 5.
  static constexpr int kLog3[16] = {-1, 0, -1, 1, -1, 3, -1, 2, -1, 2, -1, 3, -1, 1, -1, 0};
  return pow5(2, kLog3[p % 16]);
}

int psi2(std::uint32_t p) {
  require_admissible(p);
  return p % 4 == 1 ? 1 : 4;
}

int psi3(std::uint32_t p) {
  require_admissible(p);
  const std::uint32_t r = p % 7;
  return (r == 1 || r == 2 || r == 4) ? 1 : 4;
}

int psi_eval(const CharCandidate& c, std::uint32_t p) {
  return pow5(psi1(p), c.d) * pow5(psi2(p), c.e) * pow5(psi3(p), c.f) % 5;
}

int y_value(const CharCandidate& c, std::uint32_t p) {
  const int s = psi_eval(c, p), si = kInv5[s];
  const int q = static_cast<int>(p % 5);
  if (c.a == 0) return (si + pow5(q, 3) * s) % 5;
  return (q * si + pow5(q, 2) * s) % 5;
}

int z_value(const CharCandidate& c, std::uint32_t p) {
  const int s = psi_eval(c, p), si = kInv5[s];
  const int q = static_cast<int>(p % 5);
  return (q * si + pow5(q, 2) * s) % 5;
}

Observation observation_from_split(std::uint32_t p, const zeta::EulerSplit& s) { return {p, zeta::mod5_pair(s)}; }

std::vector<CharCandidate> eliminate(const std::vector<Observation>& obs, const std::vector<CharCandidate>& candidates) {
  std::vector<CharCandidate> out;
  for (const auto& c : candidates) {
    const bool ok = std::all_of(obs.begin(), obs.end(), [&](const Observation& o) {
      const int y = y_value(c, o.p);
      return y == o.pair.first || y == o.pair.second;
    });
    if (ok) out.push_back(c);
  }
  if (out.empty()) throw VerificationFailure("no character candidate is consistent with the observations");
  return out;
}

bool zp_reducible_test(const std::vector<Observation>& obs) {
  const auto it = std::find_if(obs.begin(), obs.end(), [](const Observation& o) { return o.p == 113; });
  if (it == obs.end()) throw std::invalid_argument("an observation at p = 113 is required");
  for (const auto& c : all_candidates()) {
    const int z = z_value(c, 113);
    if (z == it->pair.first || z == it->pair.second) return false;
  }
  return true;
}

TableRow table_row(std::uint32_t p) {
  const int q = static_cast<int>(p % 5);
  return {p, q, pow5(q, 2), pow5(q, 3), signed5(psi1(p)), signed5(psi2(p)), signed5(psi3(p))};
}

}  // namespace hvcheck::charelim
