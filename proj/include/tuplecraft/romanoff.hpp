#pragma once

#include "tuplecraft/census.hpp"
#include "tuplecraft/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tuplecraft {

enum class DuplicatePolicy { reject, dedup };

struct PowersOf {
  std::int64_t base;
};
struct DoublyExponential {
  std::int64_t base;
};
struct SetFile {
  std::string path;
  DuplicatePolicy duplicates = DuplicatePolicy::reject;
};
using SetSource = std::variant<PowersOf, DoublyExponential, SetFile>;

// {a^k : k >= 1, a^k <= cap}
std::vector<std::int64_t> powers_set(std::int64_t base, std::int64_t cap);
// {a^(2^n) : n >= 1, a^(2^n) <= cap}
std::vector<std::int64_t> doubly_exponential_set(std::int64_t base, std::int64_t cap);

// One positive decimal integer per line. Duplicates throw under reject; under
// dedup they are dropped and reported through warnings.
std::vector<std::int64_t> parse_set(std::istream& in, DuplicatePolicy policy, std::vector<std::string>* warnings = nullptr);
std::vector<std::int64_t> read_set_file(const std::string& path, DuplicatePolicy policy,
                                        std::vector<std::string>* warnings = nullptr);

// Sorted distinct members <= cap.
std::vector<std::int64_t> build_set(const SetSource& source, std::int64_t cap,
                                    std::vector<std::string>* warnings = nullptr);

// f_A(n) = #{a in A : n - a prime}
std::uint64_t representation_count(std::span<const std::int64_t> sorted_set, std::int64_t n);

struct RepresentationProfile {
  std::int64_t x = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;  // f value -> #{1 <= n <= x}
  std::uint64_t sum_f = 0;
  std::uint64_t sum_f2 = 0;
  std::uint64_t represented = 0;
  Rational cs_bound = 0;  // sum_f^2 / sum_f2, 0 when sum_f2 = 0

  bool cauchy_schwarz_holds() const { return Rational(BigInt(represented)) >= cs_bound; }
  std::uint64_t max_f() const { return histogram.empty() ? 0 : histogram.rbegin()->first; }

  friend bool operator==(const RepresentationProfile&, const RepresentationProfile&) = default;
};

RepresentationProfile profile(std::span<const std::int64_t> sorted_set, std::int64_t x, unsigned threads = 1);

// (checkpoint, max_{n <= checkpoint} f_A(n)) for increasing checkpoints.
std::vector<std::pair<std::int64_t, std::uint64_t>> erdos_probe(std::span<const std::int64_t> sorted_set,
                                                               std::span<const std::int64_t> checkpoints);

// Census over [x, 3x) of {n - a} for the k largest members of A ∩ [1, x],
// computed through the shifted tuple F(n) = L(n + shift) on [x - shift, 3x - shift).
CensusResult corollary1_experiment(std::span<const std::int64_t> sorted_set, std::size_t k, std::int64_t x,
                                   std::uint64_t m, unsigned threads = 1);

}  // namespace tuplecraft
