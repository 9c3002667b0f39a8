#include "hvcheck/zeta.hpp"

#include <cmath>

#include "hvcheck/errors.hpp"
#include "hvcheck/point_count.hpp"

namespace hvcheck::zeta {

namespace {

__extension__ typedef __int128 i128;

std::optional<i128> exact_sqrt(i128 n) {
  if (n < 0) return std::nullopt;
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r != n) return std::nullopt;
  return r;
}

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ArithmeticOverflow("value exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

std::string show(const EulerSplit& s) { return "(" + std::to_string(s.u) + ", " + std::to_string(s.v) + ")"; }

}  // namespace

TraceData forward_traces(std::uint32_t p, const EulerSplit& s) {
  const i128 p3 = i128{p} * p * p;
  return {p, narrow(i128{s.u} + 5 * i128{s.v}), narrow(i128{s.u} * s.u + 5 * i128{s.v} * s.v - 12 * p3)};
}

std::vector<EulerSplit> admissible_splits(const TraceData& d) {
  const i128 p3 = i128{d.p} * d.p * d.p;
  const i128 t1 = d.t1;
  const i128 disc = -20 * t1 * t1 + 120 * (i128{d.t2} + 12 * p3);
  std::vector<EulerSplit> out;
  const auto root = exact_sqrt(disc);
  if (!root) return out;
  for (int sign : {1, -1}) {
    const i128 num = 10 * t1 + sign * *root;
    if (num % 60 != 0) continue;
    const i128 v = num / 60;
    const i128 u = t1 - 5 * v;
    if (v % d.p != 0) continue;
    if (u * u > 4 * p3 || v * v > 4 * p3) continue;
    if (u * u + 5 * v * v - 12 * p3 != d.t2) continue;
    const EulerSplit s{narrow(u), narrow(v)};
    if (out.empty() || !(out.front() == s)) out.push_back(s);
  }
  return out;
}

EulerSplit split_traces(const TraceData& d) {
  const auto roots = admissible_splits(d);
  if (roots.empty()) {
    throw VerificationFailure("no admissible split for p=" + std::to_string(d.p) + " t1=" + std::to_string(d.t1) +
                              " t2=" + std::to_string(d.t2));
  }
  if (roots.size() > 1) {
    throw VerificationFailure("ambiguous split for p=" + std::to_string(d.p) + ": " + show(roots[0]) + " and " +
                              show(roots[1]));
  }
  return roots.front();
}

EulerFactor euler_factor_quotient(const EulerSplit& s, std::uint32_t p) {
  const i128 p3 = i128{p} * p * p;
  const i128 sum = i128{s.u} + s.v;
  EulerFactor f;
  f.c = {1, narrow(-sum), narrow(2 * p3 + i128{s.u} * s.v), narrow(-p3 * sum), narrow(p3 * p3)};
  return f;
}

std::pair<int, int> mod5_pair(const EulerSplit& s) {
  const int a = static_cast<int>(((s.u % 5) + 5) % 5);
  const int b = static_cast<int>(((s.v % 5) + 5) % 5);
  return a <= b ? std::pair{a, b} : std::pair{b, a};
}

Conjecture1Report verify_conjecture1(std::uint32_t p, std::uint64_t count1, std::uint64_t count2, std::int64_t a_p,
                                     std::int64_t b_p) {
  Conjecture1Report r;
  r.p = p;
  r.count1 = count1;
  r.count2 = count2;
  r.expected_u = a_p;
  r.expected_v = static_cast<std::int64_t>(p) * b_p;
  r.traces = {p, count::trace_h3(p, 1, count1), count::trace_h3(p, 2, count2)};

  const auto roots = admissible_splits(r.traces);
  if (roots.size() != 1) {
    r.failed_stage = roots.empty() ? "split: no admissible root" : "split: two admissible roots";
    return r;
  }
  r.split = roots.front();
  r.factor = euler_factor_quotient(*r.split, p);
  if (r.split->u != r.expected_u) {
    r.failed_stage = "weight-4 eigenvalue: split gives " + std::to_string(r.split->u) + ", newform gives " +
                     std::to_string(r.expected_u);
    return r;
  }
  if (r.split->v != r.expected_v) {
    r.failed_stage = "weight-2 eigenvalue: split gives " + std::to_string(r.split->v) + ", newform gives " +
                     std::to_string(r.expected_v);
    return r;
  }
  const std::int64_t p3 = static_cast<std::int64_t>(p) * p * p;
  if (r.factor.c[0] != 1 || r.factor.c[4] != p3 * p3 || r.factor.c[3] != p3 * r.factor.c[1]) {
    r.failed_stage = "Euler factor symmetry";
    return r;
  }
  r.passed = true;
  return r;
}

}  // namespace hvcheck::zeta
