#include "hvcheck/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace hvcheck {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  return v;
}

std::uint32_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t signed_mod(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / (g == 0 ? 1 : g);
  den_ = den / (g == 0 ? 1 : g);
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
}

std::optional<std::uint32_t> Rational::reduce_mod(std::uint32_t p) const {
  const std::uint32_t d = signed_mod(den_, p);
  if (d == 0) return std::nullopt;
  // p is prime for every caller, so Fermat inversion applies.
  const std::uint64_t inv = mod_pow(d, p - 2, p);
  return static_cast<std::uint32_t>(signed_mod(num_, p) * inv % p);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace hvcheck
