#pragma once

// Elimination of the candidate characters chi = eps^a * psi appearing in
// the mod-5 representation, psi = psi1^d psi2^e psi3^f, using observed
// unordered pairs {alpha p, beta} of Frobenius data mod 5.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hvcheck/zeta.hpp"

namespace hvcheck::charelim {

struct CharCandidate {
  int a = 0;  // 0 or -1
  int d = 0;  // 0..3
  int e = 0;  // 0..1
  int f = 0;  // 0..1
  friend bool operator==(const CharCandidate&, const CharCandidate&) = default;
  std::string to_string() const;
};

/// All 32 candidates in lexicographic order of (a, d, e, f).
std::vector<CharCandidate> all_candidates();

/// Values in F_5 as integers 0..4. psi1 sends 3 to 2 and -1 to 1 on
/// (Z/16)^x; psi2 sends -1 to -1 on (Z/4)^x; psi3 is the Legendre symbol
/// mod 7. All throw std::invalid_argument for p even or divisible by 7.
int psi1(std::uint32_t p);
int psi2(std::uint32_t p);
int psi3(std::uint32_t p);
int psi_eval(const CharCandidate& c, std::uint32_t p);

/// a = 0: psi(p)^-1 + p^3 psi(p); a = -1: p psi(p)^-1 + p^2 psi(p).
int y_value(const CharCandidate& c, std::uint32_t p);
/// p psi(p)^-1 + p^2 psi(p), the trace of a reducible rho'.
int z_value(const CharCandidate& c, std::uint32_t p);

struct Observation {
  std::uint32_t p = 0;
  std::pair<int, int> pair;  // sorted residues mod 5
};

Observation observation_from_split(std::uint32_t p, const zeta::EulerSplit& s);

/// Candidates whose Y value lies in every observed pair. Throws
/// VerificationFailure when nothing survives.
std::vector<CharCandidate> eliminate(const std::vector<Observation>& obs,
                                     const std::vector<CharCandidate>& candidates = all_candidates());

/// True when no candidate's Z value at p = 113 lies in the observed pair.
/// Throws std::invalid_argument if there is no observation at 113.
bool zp_reducible_test(const std::vector<Observation>& obs);

/// One row of the character table: p, p^2, p^3 mod 5 and psi1..psi3 as
/// signed representatives (-1 printed for 4).
struct TableRow {
  std::uint32_t p = 0;
  int p1 = 0, p2 = 0, p3 = 0;
  int psi1 = 0, psi2 = 0, psi3 = 0;
};
TableRow table_row(std::uint32_t p);

}  // namespace hvcheck::charelim
