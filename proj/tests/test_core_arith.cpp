#include "doctest.h"
#include "oracles.hpp"

#include "tuplecraft/core_arith.hpp"
#include "tuplecraft/errors.hpp"

#include <cmath>
#include <random>

using namespace tuplecraft;

TEST_CASE("gcd examples and identities") {
  CHECK(gcd(0, 7) == 7);
  CHECK(gcd(12, 18) == 6);
  CHECK(gcd(3, 19) == 1);
  CHECK(gcd(0, 0) == 0);
  CHECK(gcd(-12, 18) == 6);
  CHECK(gcd(INT64_MIN, 0) == std::uint64_t{1} << 63);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t a = static_cast<std::int64_t>(rng() % 200001) - 100000;
    std::int64_t b = static_cast<std::int64_t>(rng() % 200001) - 100000;
    if (a == 0 || b == 0) continue;
    const auto g = gcd(a, b);
    CHECK(a % static_cast<std::int64_t>(g) == 0);
    CHECK(b % static_cast<std::int64_t>(g) == 0);
    CHECK(static_cast<__int128>(g) * lcm(a, b) == static_cast<__int128>(std::abs(a)) * std::abs(b));
  }
}

TEST_CASE("euler_phi") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(13) == 12);
  CHECK_THROWS_AS(euler_phi(0), DomainError);
  for (std::uint64_t n = 1; n <= 500; ++n) CHECK(euler_phi(n) == oracle::phi_by_count(n));
  // large semiprime and prime through the rho path
  CHECK(euler_phi(1000000007ULL * 998244353ULL) == 1000000006ULL * 998244352ULL);
  CHECK(euler_phi(18446744073709551557ULL) == 18446744073709551556ULL);
}

TEST_CASE("euler_phi multiplicativity") {
  for (std::uint64_t m = 1; m <= 60; ++m) {
    for (std::uint64_t n = 1; n <= 60; ++n) {
      if (gcd(static_cast<std::int64_t>(m), static_cast<std::int64_t>(n)) == 1)
        CHECK(euler_phi(m * n) == euler_phi(m) * euler_phi(n));
      CHECK(euler_phi(m * n) >= euler_phi(m) * euler_phi(n));
    }
  }
}

TEST_CASE("is_prime") {
  CHECK_FALSE(is_prime(std::uint64_t{0}));
  CHECK_FALSE(is_prime(std::uint64_t{1}));
  CHECK(is_prime(std::uint64_t{2}));
  CHECK(is_prime(std::uint64_t{1000000007}));
  CHECK(oracle::trial_division_is_prime(1000000007));
  // strong pseudoprimes to several small bases
  CHECK_FALSE(is_prime(std::uint64_t{3215031751}));
  CHECK_FALSE(is_prime(std::uint64_t{3825123056546413051ULL}));
  for (std::uint64_t carmichael : {561ULL, 41041ULL, 825265ULL, 321197185ULL, 5394826801ULL})
    CHECK_FALSE(is_prime(carmichael));
  CHECK(is_prime(std::uint64_t{18446744073709551557ULL}));
  CHECK_FALSE(is_prime(std::uint64_t{UINT64_MAX}));

  CHECK_FALSE(is_prime(WideInt{-7}));
  CHECK_THROWS_AS(is_prime(WideInt::from_raw(static_cast<__int128>(UINT64_MAX) + 1)), UnsupportedRange);
}

TEST_CASE("is_prime agrees with trial division up to 10^6") {
  const auto sieve = oracle::naive_sieve(1000000);
  std::uint64_t mismatches = 0;
  for (std::uint64_t n = 0; n <= 1000000; ++n) mismatches += is_prime(n) != sieve[n];
  CHECK(mismatches == 0);
  for (std::uint64_t n = 0; n <= 20000; ++n) REQUIRE(is_prime(n) == oracle::trial_division_is_prime(n));
}

TEST_CASE("WideInt checked arithmetic") {
  const WideInt big = WideInt::from_raw(WideInt::kLimit);
  CHECK_THROWS_AS(big + WideInt{1}, OverflowError);
  CHECK_THROWS_AS(WideInt::from_raw(WideInt::kLimit + 1), OverflowError);
  CHECK_THROWS_AS(WideInt{INT64_MAX} * WideInt{INT64_MAX}, OverflowError);
  CHECK((WideInt{3} * WideInt{8} - WideInt{5}).to_i64() == 19);
  CHECK((WideInt{1} - WideInt{2}).to_string() == "-1");
  CHECK(WideInt::from_raw(WideInt::kLimit).to_string() == "79228162514264337593543950336");
  CHECK_THROWS_AS(WideInt{-1}.to_u64(), UnsupportedRange);
}

TEST_CASE("log_integral") {
  CHECK(log_integral(2.0) == 0.0);
  CHECK_THROWS_AS(log_integral(1.5), DomainError);
  // frozen from a 30-digit reference evaluation
  CHECK(log_integral(10.0) == doctest::Approx(5.12043572466980515).epsilon(1e-12));
  CHECK(log_integral(100.0) == doctest::Approx(29.0809778039621371).epsilon(1e-12));
  CHECK(log_integral(1e6) == doctest::Approx(78626.5039956820644).epsilon(1e-12));

  // converged trapezoid and the series oracle
  const double trap = oracle::li_trapezoid(2.0, 10.0, 200000);
  CHECK(std::fabs(log_integral(10.0) - trap) / trap < 1e-10);
  for (double x : {3.0, 17.5, 1e3, 1e5, 1e8, 1e12}) {
    const double ref = oracle::li_series(x);
    CHECK(std::fabs(log_integral(x) - ref) / ref < 1e-10);
  }

  const auto sieve = oracle::naive_sieve(1000000);
  const double pi = static_cast<double>(oracle::naive_pi(sieve, 1000000));
  CHECK(std::fabs(log_integral(1e6) - pi) / pi < 0.01);
}

TEST_CASE("log_integral is increasing with the step lower bound") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(2.0, 1e6);
  for (int i = 0; i < 300; ++i) {
    double x1 = dist(rng), x2 = dist(rng);
    if (x1 > x2) std::swap(x1, x2);
    if (x1 == x2) continue;
    const double diff = log_integral(x2) - log_integral(x1);
    CHECK(diff > 0.0);
    CHECK(diff >= (x2 - x1) / std::log(x2) * (1 - 1e-12));
  }
}

TEST_CASE("log_integral_at matches pointwise evaluation") {
  std::vector<double> pts{2.0, 2.5, 3.0, 10.0, 10.0, 1000.0, 123456.0};
  const auto vals = log_integral_at(pts);
  REQUIRE(vals.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(vals[i] == doctest::Approx(log_integral(pts[i])).epsilon(1e-12));
  std::vector<double> bad{3.0, 2.5};
  CHECK_THROWS_AS(log_integral_at(bad), DomainError);
}

TEST_CASE("modular helpers") {
  CHECK(mod_floor(-1, 7) == 6);
  CHECK(mod_floor(std::int64_t{14}, 7) == 0);
  CHECK(invmod(3, 7) == 5);
  CHECK_THROWS_AS(invmod(2, 4), DomainError);
  CHECK(powmod(2, 10, 1000) == 24);
  CHECK(next_prime_above(2.363) == 3);
  CHECK(next_prime_above(0.1) == 2);
  CHECK(next_prime_above(7.0) == 11);
  CHECK(factorize(360) == std::vector<std::pair<std::uint64_t, unsigned>>{{2, 3}, {3, 2}, {5, 1}});
}
