#include "tuplecraft/core_arith.hpp"

#include "tuplecraft/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace tuplecraft {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

i128 checked(i128 v) {
  if (v > WideInt::kLimit || v < -WideInt::kLimit) throw OverflowError("integer result exceeds 2^96 in magnitude");
  return v;
}

std::uint64_t magnitude(std::int64_t v) {
  return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
}

}  // namespace

WideInt WideInt::from_raw(raw_type v) {
  WideInt w;
  w.value_ = checked(v);
  return w;
}

std::uint64_t WideInt::to_u64() const {
  if (!fits_u64()) throw UnsupportedRange("value " + to_string() + " does not fit in 64 unsigned bits");
  return static_cast<std::uint64_t>(value_);
}

std::int64_t WideInt::to_i64() const {
  if (!fits_i64()) throw UnsupportedRange("value " + to_string() + " does not fit in 64 signed bits");
  return static_cast<std::int64_t>(value_);
}

std::string WideInt::to_string() const {
  if (value_ == 0) return "0";
  u128 m = value_ < 0 ? static_cast<u128>(-value_) : static_cast<u128>(value_);
  std::string digits;
  while (m != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(m % 10)));
    m /= 10;
  }
  if (value_ < 0) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

// Operands are bounded by 2^96, so sums fit in 128 bits; products can reach
// 2^192 and are checked before multiplying.
WideInt operator+(WideInt lhs, WideInt rhs) { return WideInt::from_raw(lhs.value_ + rhs.value_); }
WideInt operator-(WideInt lhs, WideInt rhs) { return WideInt::from_raw(lhs.value_ - rhs.value_); }
WideInt operator*(WideInt lhs, WideInt rhs) {
  if (lhs.value_ == 0 || rhs.value_ == 0) return WideInt{};
  u128 a = lhs.value_ < 0 ? static_cast<u128>(-lhs.value_) : static_cast<u128>(lhs.value_);
  u128 b = rhs.value_ < 0 ? static_cast<u128>(-rhs.value_) : static_cast<u128>(rhs.value_);
  if (a > static_cast<u128>(WideInt::kLimit) / b) throw OverflowError("integer product exceeds 2^96 in magnitude");
  return WideInt::from_raw(lhs.value_ * rhs.value_);
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(magnitude(a), magnitude(b)); }

std::uint64_t lcm(std::int64_t a, std::int64_t b) {
  std::uint64_t ma = magnitude(a), mb = magnitude(b);
  if (ma == 0 || mb == 0) return 0;
  u128 l = static_cast<u128>(ma / std::gcd(ma, mb)) * mb;
  if (l > UINT64_MAX) throw OverflowError("lcm exceeds 64 bits");
  return static_cast<std::uint64_t>(l);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  i128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    i128 quot = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - quot * r};
    std::tie(old_s, s) = std::pair{s, old_s - quot * s};
  }
  if (old_r != 1) throw DomainError("no modular inverse: arguments not coprime");
  i128 inv = old_s % static_cast<i128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

std::uint64_t mod_floor(std::int64_t a, std::uint64_t m) {
  if (m == 0) throw DomainError("modulus must be positive");
  i128 r = static_cast<i128>(a) % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t mod_floor(WideInt a, std::uint64_t m) {
  if (m == 0) throw DomainError("modulus must be positive");
  i128 r = a.raw() % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

namespace {

constexpr std::array<std::uint64_t, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool strong_probable_prime(std::uint64_t n, std::uint64_t d, unsigned s, std::uint64_t base) {
  std::uint64_t x = powmod(base, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : kWitnesses) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 37 * 37) return true;
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t base : kWitnesses)
    if (!strong_probable_prime(n, d, s, base)) return false;
  return true;
}

bool is_prime(WideInt n) {
  if (n < WideInt{2}) return false;
  if (!n.fits_u64()) throw UnsupportedRange("primality is supported only below 2^64, got " + n.to_string());
  return is_prime(n.to_u64());
}

namespace {

// Brent's variant of Pollard rho; n must be an odd composite.
std::uint64_t pollard_brent(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t kBatch = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += kBatch;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("cannot factor 0");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<std::uint64_t, unsigned>> result;
  for (std::uint64_t p : primes) {
    if (!result.empty() && result.back().first == p)
      ++result.back().second;
    else
      result.emplace_back(p, 1u);
  }
  return result;
}

std::uint64_t smallest_prime_factor(std::uint64_t n) {
  if (n < 2) throw DomainError("smallest prime factor needs n >= 2");
  return factorize(n).front().first;
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw DomainError("euler_phi requires n >= 1");
  std::uint64_t phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

std::uint64_t next_prime_above(double t) {
  std::uint64_t n = t < 2.0 ? 2 : static_cast<std::uint64_t>(std::floor(t)) + 1;
  while (!is_prime(n)) ++n;
  return n;
}

namespace {

constexpr double kSimpsonRelTol = 1e-13;
constexpr int kMaxDepth = 60;

double integrand(double t) { return 1.0 / std::log(t); }

double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(double a, double fa, double m, double fm, double b, double fb, double whole, double tol,
                int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = integrand(lm), frm = integrand(rm);
  double left = simpson(a, fa, flm, m, fm);
  double right = simpson(m, fm, frm, b, fb);
  double delta = left + right - whole;
  if (depth >= kMaxDepth || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1) +
         adaptive(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1);
}

// Integral of 1/ln t over [a, b], 2 <= a <= b.
double integrate_piece(double a, double b) {
  if (b <= a) return 0.0;
  double m = 0.5 * (a + b);
  double fa = integrand(a), fm = integrand(m), fb = integrand(b);
  double whole = simpson(a, fa, fm, b, fb);
  return adaptive(a, fa, m, fm, b, fb, whole, kSimpsonRelTol * whole, 0);
}

double integrate_dyadic(double a, double b) {
  double sum = 0.0;
  while (a < b) {
    double next = std::min(b, 2.0 * a);
    sum += integrate_piece(a, next);
    a = next;
  }
  return sum;
}

}  // namespace

double log_integral(double x) {
  if (!(x >= 2.0)) throw DomainError("log_integral requires x >= 2");
  if (std::isinf(x)) throw DomainError("log_integral requires finite x");
  return integrate_dyadic(2.0, x);
}

std::vector<double> log_integral_at(std::span<const double> ascending_points) {
  std::vector<double> values;
  values.reserve(ascending_points.size());
  double prev = 2.0;
  long double acc = 0.0L;
  for (double t : ascending_points) {
    if (!(t >= 2.0)) throw DomainError("log_integral requires x >= 2");
    if (t < prev) throw DomainError("log_integral_at requires ascending points");
    acc += integrate_dyadic(prev, t);
    values.push_back(static_cast<double>(acc));
    prev = t;
  }
  return values;
}

}  // namespace tuplecraft
