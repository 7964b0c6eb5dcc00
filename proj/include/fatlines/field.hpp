#pragma once

// Exact ground fields. Every algorithm in the library is a template over a
// field object F exposing `value_type` and the arithmetic below; the two
// models are the rationals (GMP) and a prime field GF(p) with p < 2^62.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fatlines/error.hpp"

namespace fatlines {

using BigInt = mpz_class;
using BigRational = mpq_class;

template <class F>
concept Field = requires(const F& f, const typename F::value_type& a, const BigInt& n) {
  typename F::value_type;
  { f.zero() } -> std::convertible_to<typename F::value_type>;
  { f.one() } -> std::convertible_to<typename F::value_type>;
  { f.from_integer(n) } -> std::convertible_to<typename F::value_type>;
  { f.add(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.sub(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.div(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.neg(a) } -> std::convertible_to<typename F::value_type>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.characteristic() } -> std::convertible_to<std::uint64_t>;
  { f.name() } -> std::convertible_to<std::string>;
};

/// The rational numbers. mpq_class keeps values canonical (reduced, positive
/// denominator), so operator== is structural equality.
class Rationals {
 public:
  using value_type = BigRational;

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_integer(const BigInt& n) const { return value_type(n); }
  value_type from_int(long n) const { return value_type(n); }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type div(const value_type& a, const value_type& b) const { return a / b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const { return 1 / a; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }

  std::uint64_t characteristic() const { return 0; }
  std::string name() const { return "Q"; }
  bool operator==(const Rationals&) const = default;

  /// Scales a projective vector to the primitive integer vector on the same
  /// ray whose first nonzero entry is positive.
  std::vector<BigInt> primitive_integers(std::span<const value_type> v) const {
    BigInt den = 1;
    for (const auto& x : v) den = lcm(den, BigInt(x.get_den()));
    std::vector<BigInt> out;
    out.reserve(v.size());
    BigInt content = 0;
    for (const auto& x : v) {
      BigInt n = x.get_num() * (den / x.get_den());
      content = gcd(content, n);
      out.push_back(std::move(n));
    }
    if (content == 0) return out;
    bool flip = false;
    for (const auto& n : out) {
      if (n != 0) {
        flip = n < 0;
        break;
      }
    }
    if (flip) content = -content;
    for (auto& n : out) n /= content;
    return out;
  }

  /// Integer representative of a single value; throws if it is not integral.
  BigInt to_integer(const value_type& a) const {
    if (a.get_den() != 1) throw Error(ErrorKind::SchemaError, "non-integral coefficient " + a.get_str());
    return a.get_num();
  }
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// GF(p), elements stored as canonical residues in [0, p).
class PrimeField {
 public:
  using value_type = std::uint64_t;

  static constexpr std::uint64_t kMaxModulus = (1ULL << 62);

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= kMaxModulus || !is_prime(p)) {
      throw Error(ErrorKind::NonPrimeModulus, std::to_string(p) + " is not a supported prime");
    }
  }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_integer(const BigInt& n) const {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(p_));
    return r.get_ui();
  }
  value_type from_int(long n) const { return from_integer(BigInt(n)); }

  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type mul(value_type a, value_type b) const { return detail::mulmod(a, b, p_); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const { return detail::powmod(a, p_ - 2, p_); }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  bool is_zero(value_type a) const { return a == 0; }

  std::uint64_t characteristic() const { return p_; }
  std::uint64_t modulus() const { return p_; }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }
  bool operator==(const PrimeField&) const = default;

  /// Scales a projective vector so that its first nonzero entry is 1.
  std::vector<BigInt> primitive_integers(std::span<const value_type> v) const {
    value_type lead = 0;
    for (auto x : v) {
      if (x != 0) {
        lead = inv(x);
        break;
      }
    }
    std::vector<BigInt> out;
    out.reserve(v.size());
    for (auto x : v) out.emplace_back(static_cast<unsigned long>(lead == 0 ? 0 : mul(x, lead)));
    return out;
  }

  BigInt to_integer(value_type a) const { return BigInt(static_cast<unsigned long>(a)); }

 private:
  std::uint64_t p_;
};

static_assert(Field<Rationals>);
static_assert(Field<PrimeField>);

template <Field F>
using Vec = std::vector<typename F::value_type>;

/// Scales `v` in place so that its first nonzero coordinate is 1.
/// Returns false when `v` is the zero vector.
template <Field F>
bool normalize_projective(const F& field, Vec<F>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!field.is_zero(v[i])) {
      auto lead = v[i];
      for (std::size_t j = i; j < v.size(); ++j) v[j] = field.div(v[j], lead);
      return true;
    }
  }
  return false;
}

template <Field F>
typename F::value_type dot(const F& field, std::span<const typename F::value_type> a,
                           std::span<const typename F::value_type> b) {
  auto acc = field.zero();
  for (std::size_t i = 0; i < a.size(); ++i) acc = field.add(acc, field.mul(a[i], b[i]));
  return acc;
}

template <Field F>
Vec<F> integer_vector(const F& field, std::initializer_list<long> values) {
  Vec<F> out;
  out.reserve(values.size());
  for (long x : values) out.push_back(field.from_integer(BigInt(x)));
  return out;
}

}  // namespace fatlines
