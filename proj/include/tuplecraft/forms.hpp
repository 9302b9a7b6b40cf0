#pragma once

#include "tuplecraft/core_arith.hpp"

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tuplecraft {

// L(n) = a*n + b with slope a >= 1.
struct LinearForm {
  std::int64_t a = 1;
  std::int64_t b = 0;

  friend constexpr auto operator<=>(const LinearForm&, const LinearForm&) = default;

  // Rendered as "3n-5", "n+2", "2n".
  std::string to_string() const;
};

WideInt evaluate(const LinearForm& form, WideInt n);

// Ordered list of pairwise distinct forms, k >= 1. Immutable after validation.
class TupleSet {
 public:
  explicit TupleSet(std::vector<LinearForm> forms);

  // {n + o_j}
  static TupleSet from_offsets(std::span<const std::int64_t> offsets);

  std::size_t size() const { return forms_.size(); }
  const LinearForm& operator[](std::size_t i) const { return forms_[i]; }
  std::span<const LinearForm> forms() const { return forms_; }
  auto begin() const { return forms_.begin(); }
  auto end() const { return forms_.end(); }

  TupleSet subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const TupleSet&, const TupleSet&) = default;

 private:
  std::vector<LinearForm> forms_;
};

// Number of residues n mod p with p | prod L_i(n). p must be prime.
std::uint64_t omega_p(const TupleSet& tuple, std::uint64_t p);

struct Admissibility {
  bool admissible = true;
  std::optional<std::uint64_t> witness;        // blocking prime
  std::optional<std::size_t> offending_form;   // set when gcd(a_i, b_i) > 1 caused the failure

  explicit operator bool() const { return admissible; }
};

// A form with gcd(a, b) = 1 has at most one root mod p, so only primes p <= k
// can be covered once every gcd is 1.
Admissibility is_admissible(const TupleSet& tuple);

enum class ScanOrder { given, seeded_random };

// Greedy admissible subset: forms are visited in scan order and kept when the
// kept set stays admissible. Returned indices are 0-based and ascending.
// Every form must satisfy gcd(a, b) = 1.
std::vector<std::size_t> admissible_subset(const TupleSet& tuple, ScanOrder order, std::uint64_t seed = 0);

/// Truncated Hardy-Littlewood product over primes p <= cutoff:
///   prod (1 - omega(p)/p) (1 - 1/p)^(-k).
/// Exactly 0 when some factor vanishes. No tail correction is applied.
double singular_series(const TupleSet& tuple, std::uint64_t cutoff);

// phi(|a| q) / phi(|a|). The ratio equals q2 * phi(q1) where q1 is the part of
// q coprime to a, so it is always a positive integer.
std::uint64_t phi_L(const LinearForm& form, std::uint64_t q);

struct ShiftedTuple {
  TupleSet forms;
  std::int64_t shift;
};

// Input forms a_i n - b_i with b_i > 0. With b* = max b_i and shift = b* + 1,
// F_i(n) = a_i n + a_i shift - b_i = L_i(n + shift) has a positive intercept.
ShiftedTuple shift_to_positive(const TupleSet& tuple);

// Soft checks against a_i <= exp(c0 sqrt(ln x)) and b_i <= x exp(c0 sqrt(ln x)).
std::vector<std::string> coefficient_warnings(const TupleSet& tuple, double x, double c0);

// Tuple file: one "a b" pair per line; '#' starts a comment line; blank lines ignored.
TupleSet parse_tuple_file(std::istream& in);
TupleSet read_tuple_file(const std::string& path);

std::vector<std::int64_t> parse_offsets(const std::string& csv);

}  // namespace tuplecraft
