#pragma once

#include "tuplecraft/forms.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tuplecraft {

struct CensusResult {
  std::int64_t x = 0;
  int span = 2;  // 0 for an explicit window
  std::uint64_t m = 0;
  std::size_t k = 0;
  // Window of n actually scanned, half-open.
  std::int64_t begin = 0;
  std::int64_t end = 0;
  std::uint64_t count = 0;
  // histogram[h] = #{n in window : exactly h distinct prime values among L_i(n)}
  std::vector<std::uint64_t> histogram;
  // n in the window where two distinct forms take the same value.
  std::uint64_t coincidences = 0;

  std::uint64_t window_length() const { return static_cast<std::uint64_t>(end - begin); }

  friend bool operator==(const CensusResult&, const CensusResult&) = default;
};

struct CensusOptions {
  unsigned threads = 1;
  // false: x <= n < span*x. true: x <= n <= span*x - 2.
  bool closed_end = false;
};

// #({L_1(n), ..., L_k(n)} ∩ P), equal values counted once, negative values nonprime.
std::uint64_t count_prime_hits(const TupleSet& tuple, std::int64_t n);

CensusResult tuple_census(const TupleSet& tuple, std::int64_t x, int span, std::uint64_t m,
                          const CensusOptions& options = {});

// Census over an explicit half-open n-window. The result reports x = begin and span = 0.
CensusResult census_window(const TupleSet& tuple, std::int64_t begin, std::int64_t end, std::uint64_t m,
                           unsigned threads = 1);

// x / ((ln x)^k e^(C k))
double theorem_bound(double x, std::uint64_t k, double C);
// ceil(ln k / C)
std::uint64_t theorem_threshold(std::uint64_t k, double C);

// {n - a_1, ..., n - a_k}. Members must be distinct; with x given they must lie in [1, x].
TupleSet corollary1_tuple(std::span<const std::int64_t> members, std::optional<std::int64_t> x = std::nullopt);

}  // namespace tuplecraft
