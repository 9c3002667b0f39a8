#pragma once

// Splitting the H^3 Frobenius traces of the 12-dimensional model into the
// weight-4 eigenvalue u = a_p and the weight-2 part v = p*b_p, and the
// resulting degree-4 Euler factor of the quotient.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hvcheck::zeta {

struct TraceData {
  std::uint32_t p = 0;
  std::int64_t t1 = 0;  // trace on H^3 over F_p
  std::int64_t t2 = 0;  // trace on H^3 over F_{p^2}
};

struct EulerSplit {
  std::int64_t u = 0;
  std::int64_t v = 0;
  friend bool operator==(const EulerSplit&, const EulerSplit&) = default;
};

struct EulerFactor {
  std::array<std::int64_t, 5> c{};  // c[k] is the coefficient of T^k
  friend bool operator==(const EulerFactor&, const EulerFactor&) = default;
};

/// Traces produced by a given split: (u + 5v, u^2 + 5v^2 - 12p^3).
TraceData forward_traces(std::uint32_t p, const EulerSplit& s);

/// Every integer root (u, v) of the trace system with p | v and both Weil
/// bounds, without deciding between them.
std::vector<EulerSplit> admissible_splits(const TraceData& d);

/// The unique admissible split. Throws VerificationFailure when there is
/// none, or when two are admissible (both are named in the message).
EulerSplit split_traces(const TraceData& d);

/// (1 - uT + p^3T^2)(1 - vT + p^3T^2).
EulerFactor euler_factor_quotient(const EulerSplit& s, std::uint32_t p);

/// {u mod 5, v mod 5}, sorted.
std::pair<int, int> mod5_pair(const EulerSplit& s);

struct Conjecture1Report {
  std::uint32_t p = 0;
  std::uint64_t count1 = 0, count2 = 0;
  TraceData traces;
  std::optional<EulerSplit> split;
  std::int64_t expected_u = 0, expected_v = 0;
  EulerFactor factor;
  bool passed = false;
  std::string failed_stage;  // empty on success
};

/// Checks that the counts split into (a_p, p*b_p) for the given eigenvalues.
Conjecture1Report verify_conjecture1(std::uint32_t p, std::uint64_t count1, std::uint64_t count2, std::int64_t a_p,
                                     std::int64_t b_p);

}  // namespace hvcheck::zeta
