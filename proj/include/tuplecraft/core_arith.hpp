#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tuplecraft {

// Exact signed integer with magnitude bounded by 2^96. Arithmetic is checked:
// a result outside the range throws OverflowError instead of wrapping.
class WideInt {
 public:
  using raw_type = __int128;
  static constexpr raw_type kLimit = raw_type(1) << 96;

  constexpr WideInt() = default;
  constexpr WideInt(std::int64_t v) : value_(v) {}  // NOLINT(implicit)

  static WideInt from_raw(raw_type v);
  static WideInt from_u64(std::uint64_t v) { return from_raw(static_cast<raw_type>(v)); }

  constexpr raw_type raw() const { return value_; }

  bool fits_u64() const { return value_ >= 0 && value_ <= raw_type(UINT64_MAX); }
  bool fits_i64() const { return value_ >= INT64_MIN && value_ <= INT64_MAX; }
  std::uint64_t to_u64() const;
  std::int64_t to_i64() const;

  std::string to_string() const;

  friend WideInt operator+(WideInt lhs, WideInt rhs);
  friend WideInt operator-(WideInt lhs, WideInt rhs);
  friend WideInt operator*(WideInt lhs, WideInt rhs);
  WideInt operator-() const { return from_raw(-value_); }

  friend constexpr bool operator==(WideInt, WideInt) = default;
  friend constexpr auto operator<=>(WideInt lhs, WideInt rhs) { return lhs.value_ <=> rhs.value_; }

 private:
  raw_type value_ = 0;
};

std::uint64_t gcd(std::int64_t a, std::int64_t b);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
// Throws OverflowError when the lcm does not fit in 64 bits.
std::uint64_t lcm(std::int64_t a, std::int64_t b);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
// Inverse of a modulo m; requires gcd(a, m) = 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
// Representative of a in [0, m).
std::uint64_t mod_floor(std::int64_t a, std::uint64_t m);
std::uint64_t mod_floor(WideInt a, std::uint64_t m);

// Deterministic on the whole 64-bit range (strong-pseudoprime test with the
// first twelve prime bases).
bool is_prime(std::uint64_t n);
// Negative values are not prime; values >= 2^64 throw UnsupportedRange.
bool is_prime(WideInt n);

// Prime factorization as (prime, exponent) pairs in increasing prime order.
// n = 0 throws DomainError; n = 1 yields an empty list.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::uint64_t smallest_prime_factor(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

// Smallest prime strictly greater than t (t may be negative).
std::uint64_t next_prime_above(double t);

/// li(x) = integral from 2 to x of dt / ln t, for x >= 2.
///
/// The range is split into dyadic pieces [t, 2t) and each piece is integrated
/// by adaptive Simpson, halving until successive estimates agree to 1e-13
/// relative. The integrand is positive, so piecewise relative accuracy is
/// global relative accuracy.
double log_integral(double x);

/// li evaluated at every point of an ascending sequence (all >= 2), built by
/// integrating between consecutive points. Much cheaper than independent calls
/// when the points are dense.
std::vector<double> log_integral_at(std::span<const double> ascending_points);

}  // namespace tuplecraft
