#pragma once

// Character-sum point counts of the smooth threefold model over F_p and
// F_{p^2}, and the Frobenius traces on H^3 derived from them.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hvcheck/checkpoint.hpp"
#include "hvcheck/finite_field.hpp"
#include "hvcheck/rational.hpp"

namespace hvcheck::count {

/// True iff p is an odd prime, t reduces mod p and t mod p is not one of the
/// degenerate values 0, 1, 9, 25.
bool has_good_reduction(std::uint32_t p, const Rational& t);
/// Throws BadReduction (or std::invalid_argument for p not an odd prime).
void require_good_reduction(std::uint32_t p, const Rational& t);

/// ((1+x+y+z)(1+1/x+1/y+1/z) - 1 - t)^2 - 4t.
template <ff::FiniteField F>
ff::Element discriminant(const F& k, ff::Element x, ff::Element y, ff::Element z, ff::Element t) {
  if (x.index == 0 || y.index == 0 || z.index == 0) {
    throw std::invalid_argument("discriminant needs nonzero coordinates");
  }
  const ff::Element one = k.from_int(1);
  const ff::Element a = k.add(k.add(one, x), k.add(y, z));
  const ff::Element b = k.add(k.add(one, k.inv(x)), k.add(k.inv(y), k.inv(z)));
  const ff::Element m = k.sub(k.sub(k.mul(a, b), one), t);
  return k.sub(k.mul(m, m), k.mul(k.from_int(4), t));
}

struct CountJob {
  std::uint32_t p = 3;
  int power = 1;
  Rational t{-7};
  unsigned threads = 1;
  std::optional<std::filesystem::path> checkpoint_path;
  /// Boundaries b0 = 1 < b1 < ... < bn = q of the outermost canonical index;
  /// empty selects p uniform chunks.
  std::vector<std::uint32_t> chunk_bounds;
  /// Stop after this many newly computed chunks (simulated interruption).
  std::optional<std::size_t> max_new_chunks;
  /// Called after each chunk completes, from the worker thread.
  std::function<void(const ChunkRecord&)> on_chunk;
};

struct CountResult {
  std::uint32_t p = 0;
  int power = 1;
  std::uint64_t q = 0;
  std::int64_t char_sum_S = 0;
  std::uint64_t solution_sum = 0;
  std::uint64_t total = 0;
};

struct CountProgress {
  std::size_t chunks_total = 0;
  std::size_t chunks_done = 0;
  std::size_t chunks_resumed = 0;
  std::uint64_t partial_solution_sum = 0;
  std::optional<CountResult> result;  // set once every chunk is done
};

/// `n` near-equal chunk boundaries over the nonzero indices 1..q-1.
std::vector<std::uint32_t> uniform_chunks(std::uint32_t q, std::size_t n);

/// Builds the result record for a complete solution sum.
CountResult make_result(std::uint32_t p, int power, std::uint64_t solution_sum);

/// Runs (or resumes) a job, possibly stopping early per max_new_chunks.
CountProgress run_char_sum(const CountJob& job);
/// Runs a job to completion. Throws if the job was configured to stop early.
CountResult char_sum(const CountJob& job);

std::uint64_t count_xbar(std::uint32_t p, int power, const Rational& t = Rational(-7), unsigned threads = 1);

std::int64_t trace_h3(std::uint32_t p, int power, std::uint64_t count);

/// -(a_p + 5 p b_p + 4p + 12).
std::int64_t s_identity_expected(std::uint32_t p, std::int64_t a_p, std::int64_t b_p);
bool s_identity_check(std::uint32_t p, std::int64_t a_p, std::int64_t b_p, std::int64_t char_sum_S);

}  // namespace hvcheck::count
