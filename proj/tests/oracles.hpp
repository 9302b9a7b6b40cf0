#pragma once

// Reference implementations used only by tests. Each one follows the
// definition directly and shares no code path with the library it checks.

#include "tuplecraft/forms.hpp"

#include <cstdint>
#include <vector>

namespace oracle {

// Plain full-array sieve of Eratosthenes over [0, n].
std::vector<bool> naive_sieve(std::uint64_t n);
std::uint64_t naive_pi(const std::vector<bool>& sieve, std::uint64_t x);

bool trial_division_is_prime(std::uint64_t n);

// li(x) - li(2) via Ramanujan's series for li(x).
double li_series(double x);
// Composite trapezoid rule for the integral of 1/ln t on [a, b] with n panels.
double li_trapezoid(double a, double b, std::uint64_t panels);
// li at every integer 2..U by adding 8-point Gauss-Legendre integrals over unit steps.
std::vector<double> li_integer_table(std::uint64_t U);

std::uint64_t phi_by_count(std::uint64_t n);

// #{n in [0, p) : p | prod L_i(n)}, by scanning residues.
std::uint64_t omega_by_scan(const tuplecraft::TupleSet& tuple, std::uint64_t p);
// For every prime p <= bound, some n_p in [0, p) with p not dividing prod L_i(n_p).
bool admissible_by_definition(const tuplecraft::TupleSet& tuple, std::uint64_t bound);

struct Census {
  std::uint64_t count = 0;
  std::vector<std::uint64_t> histogram;
};
// Per-n set-semantics census with trial-division primality.
Census brute_census(const tuplecraft::TupleSet& tuple, std::int64_t begin, std::int64_t end, std::uint64_t m);

// max over integer u in [2, U] and (b, r) = 1 of |pi(u; r, b) - li(u)/phi(r)|.
double brute_bv_term(std::uint64_t r, std::uint64_t U, const std::vector<bool>& sieve, const std::vector<double>& li);

std::vector<std::uint64_t> brute_f(const std::vector<std::int64_t>& set, std::int64_t x);

}  // namespace oracle
