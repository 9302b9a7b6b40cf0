#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace tuplecraft {

inline constexpr std::uint64_t kSegmentLength = std::uint64_t{1} << 20;

// Immutable primality bitmap over the half-open window [lo, hi).
// Bit i corresponds to lo + i. A rank index over 64-bit words gives O(1)
// counts of primes below any point of the window.
class PrimeTable {
 public:
  PrimeTable(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t> words);

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }
  std::uint64_t size() const { return hi_ - lo_; }

  // n must lie in [lo, hi); otherwise DomainError.
  bool contains(std::uint64_t n) const;
  bool covers(std::uint64_t n) const { return n >= lo_ && n < hi_; }

  std::uint64_t count() const { return rank_.back(); }
  // Number of primes in [lo, n) for lo <= n <= hi.
  std::uint64_t count_below(std::uint64_t n) const;

  template <class Fn>
  void for_each_prime(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        fn(lo_ + 64 * w + static_cast<std::uint64_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  // Primes in [from, to) ∩ [lo, hi), ascending.
  template <class Fn>
  void for_each_prime_in(std::uint64_t from, std::uint64_t to, Fn&& fn) const {
    from = from < lo_ ? lo_ : from;
    to = to > hi_ ? hi_ : to;
    if (from >= to) return;
    const std::uint64_t first = from - lo_, last = to - lo_;
    for (std::uint64_t w = first / 64; w <= (last - 1) / 64; ++w) {
      std::uint64_t bits = words_[w];
      if (w == first / 64) bits &= ~std::uint64_t{0} << (first % 64);
      if (w == (last - 1) / 64 && last % 64 != 0) bits &= (std::uint64_t{1} << (last % 64)) - 1;
      while (bits != 0) {
        fn(lo_ + 64 * w + static_cast<std::uint64_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::uint64_t> primes() const;
  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const PrimeTable& a, const PrimeTable& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.words_ == b.words_;
  }

 private:
  std::uint64_t lo_;
  std::uint64_t hi_;
  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> rank_;  // rank_[w] = primes in words [0, w)
};

// Primes p <= limit, cached process-wide and shared read-only.
std::shared_ptr<const std::vector<std::uint32_t>> base_primes(std::uint64_t limit);

// Segments of kSegmentLength are sieved independently; threads > 1 sieves
// them concurrently with bit-identical output.
PrimeTable sieve_window(std::uint64_t lo, std::uint64_t hi, unsigned threads = 1);

// pi(x). Real arguments are floored; the count streams segments and never
// stores the primes.
std::uint64_t prime_count(double x, unsigned threads = 1);
std::uint64_t prime_count(std::uint64_t x, unsigned threads = 1);

// pi(x; q, a) = #{p <= x : p = a (mod q)}; q >= 1, a any integer.
std::uint64_t prime_count_ap(double x, std::uint64_t q, std::int64_t a, unsigned threads = 1);
std::uint64_t prime_count_ap(std::uint64_t x, std::uint64_t q, std::int64_t a, unsigned threads = 1);

std::vector<std::uint64_t> primes_in_class(const PrimeTable& table, std::uint64_t q, std::int64_t a);

}  // namespace tuplecraft
