#include "hvcheck/point_count.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "hvcheck/errors.hpp"

namespace hvcheck::count {

namespace {

// Largest q for which 2(q-1)^3 + 48q^2 + 46q + 14 stays below 2^63.
constexpr std::uint64_t kMaxOrder = 1'650'000;

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Lookup tables over canonical indices 0..q-1 shared by every worker.
struct Tables {
  std::uint32_t p = 0, q = 0;
  std::vector<std::uint32_t> ce, cf;    // components of i
  std::vector<std::uint32_t> ie, if_;   // components of 1/i
  std::vector<std::uint32_t> log;       // log[0] is the zero sentinel 2(q-1)
  std::vector<std::uint32_t> exp;       // exp[k] for k < 2(q-1), then zeros
  std::vector<std::uint8_t> weight;     // quad_char((w-1-t)^2-4t)+1
};

template <class F>
Tables build_tables(const F& k, std::uint32_t t_index) {
  Tables tb;
  tb.p = k.characteristic();
  tb.q = k.order();
  const std::uint32_t q = tb.q, n = q - 1;

  const auto factors = prime_factors(n);
  ff::Element g{0};
  for (std::uint32_t i = 2; i < q; ++i) {
    const ff::Element c{i};
    bool primitive = true;
    for (auto r : factors) {
      if (k.pow(c, n / r).index == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = c;
      break;
    }
  }
  if (g.index == 0) throw std::logic_error("no primitive root found");

  tb.log.assign(q, 2 * n);
  tb.exp.assign(4 * std::size_t{n} + 1, 0);
  ff::Element cur = k.one();
  for (std::uint32_t e = 0; e < n; ++e) {
    tb.log[cur.index] = e;
    tb.exp[e] = tb.exp[e + n] = cur.index;
    cur = k.mul(cur, g);
  }
  if (cur.index != 1) throw std::logic_error("generator order mismatch");

  tb.ce.resize(q);
  tb.cf.resize(q);
  tb.ie.assign(q, 0);
  tb.if_.assign(q, 0);
  for (std::uint32_t i = 0; i < q; ++i) {
    std::tie(tb.ce[i], tb.cf[i]) = k.components({i});
    if (i == 0) continue;
    const std::uint32_t inv = tb.exp[(n - tb.log[i]) % n];
    std::tie(tb.ie[i], tb.if_[i]) = k.components({inv});
  }

  const ff::Element t{t_index};
  const ff::Element one = k.one();
  const ff::Element four_t = k.mul(k.from_int(4), t);
  tb.weight.resize(q);
  for (std::uint32_t w = 0; w < q; ++w) {
    const ff::Element m = k.sub(k.sub({w}, one), t);
    tb.weight[w] = static_cast<std::uint8_t>(k.quad_char(k.sub(k.mul(m, m), four_t)) + 1);
  }
  return tb;
}

template <int D>
std::uint64_t chunk_kernel(const Tables& tb, std::uint32_t lo, std::uint32_t hi) {
  const std::uint32_t p = tb.p, q = tb.q;
  const std::uint32_t* ce = tb.ce.data();
  const std::uint32_t* cf = tb.cf.data();
  const std::uint32_t* ie = tb.ie.data();
  const std::uint32_t* jf = tb.if_.data();
  const std::uint32_t* lg = tb.log.data();
  const std::uint32_t* ex = tb.exp.data();
  const std::uint8_t* wt = tb.weight.data();

  auto addp = [p](std::uint32_t a, std::uint32_t b) {
    const std::uint32_t s = a + b;
    return s >= p ? s - p : s;
  };
  auto idx = [p](std::uint32_t e, std::uint32_t f) { return D == 1 ? e : e + f * p; };
  auto w = [&](std::uint32_t ia, std::uint32_t ib) -> std::uint32_t { return wt[ex[lg[ia] + lg[ib]]]; };

  std::uint64_t sum = 0;
  for (std::uint32_t x = lo; x < hi; ++x) {
    const std::uint32_t sxe = addp(1, ce[x]);
    const std::uint32_t sxf = D == 1 ? 0 : cf[x];
    const std::uint32_t rxe = addp(1, ie[x]);
    const std::uint32_t rxf = D == 1 ? 0 : jf[x];
    for (std::uint32_t y = x; y < q; ++y) {
      const std::uint32_t se = addp(sxe, ce[y]);
      const std::uint32_t re = addp(rxe, ie[y]);
      const std::uint32_t sf = D == 1 ? 0 : addp(sxf, cf[y]);
      const std::uint32_t rf = D == 1 ? 0 : addp(rxf, jf[y]);

      const std::uint32_t diag =
          w(idx(addp(se, ce[y]), D == 1 ? 0 : addp(sf, cf[y])), idx(addp(re, ie[y]), D == 1 ? 0 : addp(rf, jf[y])));
      std::uint32_t inner = 0;
      for (std::uint32_t z = y + 1; z < q; ++z) {
        const std::uint32_t ia = idx(addp(se, ce[z]), D == 1 ? 0 : addp(sf, cf[z]));
        const std::uint32_t ib = idx(addp(re, ie[z]), D == 1 ? 0 : addp(rf, jf[z]));
        inner += w(ia, ib);
      }
      if (x == y) sum += diag + 3ull * inner;
      else sum += 3ull * diag + 6ull * inner;
    }
  }
  return sum;
}

void validate_bounds(const std::vector<std::uint32_t>& b, std::uint32_t q) {
  if (b.size() < 2 || b.front() != 1 || b.back() != q) {
    throw std::invalid_argument("chunk bounds must start at 1 and end at q");
  }
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (b[i] <= b[i - 1]) throw std::invalid_argument("chunk bounds must be strictly increasing");
  }
}

template <class F>
CountProgress run_with_field(const F& k, const CountJob& job, std::uint32_t t_index, const std::string& modulus) {
  const std::uint32_t q = k.order();
  CheckpointHeader header{job.p, job.power, job.t, modulus,
                          job.chunk_bounds.empty() ? uniform_chunks(q, job.p) : job.chunk_bounds};
  validate_bounds(header.bounds, q);
  const std::size_t nchunks = header.bounds.size() - 1;

  CheckpointState state;
  state.header = header;
  if (job.checkpoint_path && std::filesystem::exists(*job.checkpoint_path)) {
    state = load_checkpoint(*job.checkpoint_path, header);
  }
  std::optional<CheckpointWriter> writer;
  if (job.checkpoint_path) writer.emplace(*job.checkpoint_path, state);

  CountProgress progress;
  progress.chunks_total = nchunks;
  progress.chunks_resumed = state.completed.size();

  std::vector<std::size_t> pending;
  for (std::size_t c = 0; c < nchunks; ++c) {
    if (!state.completed.count(c)) pending.push_back(c);
  }
  const std::size_t budget = std::min(pending.size(), job.max_new_chunks.value_or(pending.size()));

  const Tables tb = build_tables(k, t_index);
  std::vector<std::uint64_t> sums(nchunks, 0);
  for (const auto& [c, s] : state.completed) sums[c] = s;
  std::vector<char> done(nchunks, 0);
  for (const auto& [c, s] : state.completed) done[c] = 1;

  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    try {
      for (;;) {
        const std::size_t slot = next.fetch_add(1);
        if (slot >= budget) return;
        const std::size_t c = pending[slot];
        const std::uint32_t lo = header.bounds[c], hi = header.bounds[c + 1];
        const std::uint64_t s = F::degree() == 1 ? chunk_kernel<1>(tb, lo, hi) : chunk_kernel<2>(tb, lo, hi);
        sums[c] = s;
        done[c] = 1;
        ChunkRecord rec{c, s, 0};
        if (writer) rec = writer->append(c, s);
        if (job.on_chunk) job.on_chunk(rec);
      }
    } catch (...) {
      std::lock_guard lock(err_mutex);
      if (!error) error = std::current_exception();
      next.store(budget);
    }
  };

  const unsigned nthreads = std::max(1u, std::min<unsigned>(job.threads, static_cast<unsigned>(std::max<std::size_t>(budget, 1))));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  std::uint64_t total = 0;
  for (std::size_t c = 0; c < nchunks; ++c) {
    if (!done[c]) continue;
    ++progress.chunks_done;
    if (__builtin_add_overflow(total, sums[c], &total)) throw ArithmeticOverflow("solution sum overflow");
  }
  progress.partial_solution_sum = total;
  if (progress.chunks_done == nchunks) progress.result = make_result(job.p, job.power, total);
  return progress;
}

}  // namespace

bool has_good_reduction(std::uint32_t p, const Rational& t) {
  if (p == 2 || !ff::is_prime(p)) return false;
  const auto r = t.reduce_mod(p);
  if (!r) return false;
  for (std::uint32_t bad : {0u, 1u, 9u, 25u}) {
    if (*r == bad % p) return false;
  }
  return true;
}

void require_good_reduction(std::uint32_t p, const Rational& t) {
  if (p != 2 && !ff::is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (!has_good_reduction(p, t)) {
    throw BadReduction("t = " + t.to_string() + " has bad reduction at p = " + std::to_string(p));
  }
}

std::vector<std::uint32_t> uniform_chunks(std::uint32_t q, std::size_t n) {
  if (q < 2) throw std::invalid_argument("field order must be at least 2");
  n = std::clamp<std::size_t>(n, 1, q - 1);
  std::vector<std::uint32_t> b(n + 1);
  for (std::size_t i = 0; i <= n; ++i) b[i] = static_cast<std::uint32_t>(1 + std::uint64_t{q - 1} * i / n);
  return b;
}

CountResult make_result(std::uint32_t p, int power, std::uint64_t solution_sum) {
  CountResult r;
  r.p = p;
  r.power = power;
  r.q = ipow(p, power);
  const std::uint64_t cube = ipow(r.q - 1, 3);
  if (solution_sum > 2 * cube) throw ArithmeticOverflow("solution sum exceeds 2(q-1)^3");
  r.solution_sum = solution_sum;
  r.char_sum_S = static_cast<std::int64_t>(solution_sum) - static_cast<std::int64_t>(cube);
  r.total = 48 * r.q * r.q + 46 * r.q + 14 + solution_sum;
  return r;
}

CountProgress run_char_sum(const CountJob& job) {
  if (job.power != 1 && job.power != 2) throw std::invalid_argument("power must be 1 or 2");
  require_good_reduction(job.p, job.t);
  if (ipow(job.p, job.power) > kMaxOrder) {
    throw ArithmeticOverflow("q = " + std::to_string(job.p) + "^" + std::to_string(job.power) +
                             " is too large for 64-bit accumulation");
  }
  const std::uint32_t t_mod_p = *job.t.reduce_mod(job.p);
  if (job.power == 1) {
    const ff::PrimeField k(job.p);
    return run_with_field(k, job, t_mod_p, "none");
  }
  const ff::QuadExtField k = ff::make_quadratic_extension(job.p);
  return run_with_field(k, job, t_mod_p, k.modulus_string());
}

CountResult char_sum(const CountJob& job) {
  const CountProgress progress = run_char_sum(job);
  if (!progress.result) {
    throw CheckpointError("count stopped after " + std::to_string(progress.chunks_done) + " of " +
                          std::to_string(progress.chunks_total) + " chunks");
  }
  return *progress.result;
}

std::uint64_t count_xbar(std::uint32_t p, int power, const Rational& t, unsigned threads) {
  CountJob job;
  job.p = p;
  job.power = power;
  job.t = t;
  job.threads = threads;
  return char_sum(job).total;
}

std::int64_t trace_h3(std::uint32_t p, int power, std::uint64_t count) {
  const std::int64_t P = p;
  const std::int64_t base = power == 1 ? 1 + P * P * P + 45 * (P + P * P)
                                       : 1 + P * P * P * P * P * P + 45 * (P * P + P * P * P * P);
  return base - static_cast<std::int64_t>(count);
}

std::int64_t s_identity_expected(std::uint32_t p, std::int64_t a_p, std::int64_t b_p) {
  const std::int64_t P = p;
  return -(a_p + 5 * P * b_p + 4 * P + 12);
}

bool s_identity_check(std::uint32_t p, std::int64_t a_p, std::int64_t b_p, std::int64_t char_sum_S) {
  return char_sum_S == s_identity_expected(p, a_p, b_p);
}

}  // namespace hvcheck::count
