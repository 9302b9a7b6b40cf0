#include "tuplecraft/sieve.hpp"

#include "tuplecraft/core_arith.hpp"
#include "tuplecraft/errors.hpp"
#include "tuplecraft/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

namespace tuplecraft {

namespace {

using u128 = unsigned __int128;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint32_t> simple_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

std::mutex base_mutex;
std::shared_ptr<const std::vector<std::uint32_t>> base_cache;
std::uint64_t base_cache_limit = 0;

constexpr std::uint64_t kCachedBaseLimit = std::uint64_t{1} << 24;

// Marks every odd number of [seg_lo, seg_hi) (and 2) as a candidate; bit i <-> seg_lo + i.
void init_segment(std::uint64_t seg_lo, std::uint64_t seg_hi, std::span<std::uint64_t> words) {
  const std::uint64_t len = seg_hi - seg_lo;
  const std::uint64_t odd_mask = (seg_lo % 2 == 0) ? 0xAAAAAAAAAAAAAAAAULL : 0x5555555555555555ULL;
  std::fill(words.begin(), words.end(), odd_mask);
  if (len % 64 != 0) words.back() &= (std::uint64_t{1} << (len % 64)) - 1;
  if (seg_lo <= 1 && seg_hi > 1) words[(1 - seg_lo) / 64] &= ~(std::uint64_t{1} << ((1 - seg_lo) % 64));
  if (seg_lo <= 2 && seg_hi > 2) words[(2 - seg_lo) / 64] |= std::uint64_t{1} << ((2 - seg_lo) % 64);
}

// Clears odd multiples m >= p^2 of each odd prime p in [seg_lo, seg_hi).
template <class Primes>
void cross_off(std::uint64_t seg_lo, std::uint64_t seg_hi, std::span<std::uint64_t> words, const Primes& primes) {
  const std::uint64_t len = seg_hi - seg_lo;
  for (auto p_raw : primes) {
    const auto p = static_cast<std::uint64_t>(p_raw);
    if (p == 2) continue;
    const u128 square = static_cast<u128>(p) * p;
    if (square >= seg_hi) break;
    u128 start = std::max<u128>(square, (static_cast<u128>(seg_lo) + p - 1) / p * p);
    if (start % 2 == 0) start += p;
    for (u128 j = start - seg_lo; j < len; j += 2 * p) {
      const auto i = static_cast<std::uint64_t>(j);
      words[i / 64] &= ~(std::uint64_t{1} << (i % 64));
    }
  }
}

void sieve_segment(std::uint64_t seg_lo, std::uint64_t seg_hi, std::span<std::uint64_t> words,
                   const std::vector<std::uint32_t>& base) {
  init_segment(seg_lo, seg_hi, words);
  cross_off(seg_lo, seg_hi, words, base);
}

struct Segment {
  std::uint64_t lo;
  std::uint64_t hi;
};

std::vector<Segment> segments_of(std::uint64_t lo, std::uint64_t hi) {
  std::vector<Segment> segs;
  for (std::uint64_t s = lo; s < hi;) {
    std::uint64_t e = (hi - s > kSegmentLength) ? s + kSegmentLength : hi;
    segs.push_back({s, e});
    s = e;
  }
  return segs;
}

std::uint64_t words_for(std::uint64_t len) { return (len + 63) / 64; }

std::uint64_t floor_real(double x) {
  if (!(x >= 0.0)) return 0;
  if (x >= 18446744073709551615.0) throw UnsupportedRange("prime counting beyond 2^64 is not supported");
  return static_cast<std::uint64_t>(std::floor(x));
}

template <class SegmentCounter>
std::uint64_t stream_count(std::uint64_t x, unsigned threads, SegmentCounter&& count_segment) {
  if (x < 2) return 0;
  if (x == UINT64_MAX) throw UnsupportedRange("prime counting at 2^64 - 1 is not supported");
  const auto segs = segments_of(0, x + 1);
  const auto base = base_primes(isqrt(x));
  std::vector<std::uint64_t> counts(segs.size(), 0);
  parallel_for(segs.size(), threads, [&](std::size_t i) {
    std::vector<std::uint64_t> words(words_for(segs[i].hi - segs[i].lo));
    sieve_segment(segs[i].lo, segs[i].hi, words, *base);
    counts[i] = count_segment(segs[i].lo, words);
  });
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

}  // namespace

std::shared_ptr<const std::vector<std::uint32_t>> base_primes(std::uint64_t limit) {
  if (limit > 0xFFFFFFFFULL) throw UnsupportedRange("base primes above 2^32 are not supported");
  std::lock_guard lock(base_mutex);
  if (!base_cache || base_cache_limit < limit) {
    std::uint64_t grow = std::max<std::uint64_t>({limit, 2 * base_cache_limit, 1u << 16});
    grow = std::min<std::uint64_t>(grow, 0xFFFFFFFFULL);
    base_cache = std::make_shared<const std::vector<std::uint32_t>>(simple_primes(grow));
    base_cache_limit = grow;
  }
  return base_cache;
}

PrimeTable::PrimeTable(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t> words)
    : lo_(lo), hi_(hi), words_(std::move(words)) {
  if (lo >= hi) throw DomainError("prime table needs lo < hi");
  if (words_.size() != words_for(hi - lo)) throw DomainError("prime table bitmap has the wrong length");
  rank_.resize(words_.size() + 1);
  rank_[0] = 0;
  for (std::size_t w = 0; w < words_.size(); ++w)
    rank_[w + 1] = rank_[w] + static_cast<std::uint64_t>(std::popcount(words_[w]));
}

bool PrimeTable::contains(std::uint64_t n) const {
  if (!covers(n))
    throw DomainError("value " + std::to_string(n) + " outside prime table [" + std::to_string(lo_) + ", " +
                      std::to_string(hi_) + ")");
  std::uint64_t i = n - lo_;
  return (words_[i / 64] >> (i % 64)) & 1;
}

std::uint64_t PrimeTable::count_below(std::uint64_t n) const {
  if (n <= lo_) return 0;
  if (n >= hi_) return count();
  std::uint64_t i = n - lo_;
  std::uint64_t partial = words_[i / 64] & ((std::uint64_t{1} << (i % 64)) - 1);
  return rank_[i / 64] + static_cast<std::uint64_t>(std::popcount(partial));
}

std::vector<std::uint64_t> PrimeTable::primes() const {
  std::vector<std::uint64_t> out;
  out.reserve(count());
  for_each_prime([&](std::uint64_t p) { out.push_back(p); });
  return out;
}

PrimeTable sieve_window(std::uint64_t lo, std::uint64_t hi, unsigned threads) {
  if (lo >= hi)
    throw DomainError("sieve window needs lo < hi, got [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
  const std::uint64_t root = isqrt(hi - 1);
  const auto base = base_primes(std::min(root, kCachedBaseLimit));
  const auto segs = segments_of(lo, hi);
  std::vector<std::uint64_t> words(words_for(hi - lo));
  auto segment_words = [&](std::size_t i) {
    const std::uint64_t first_word = (segs[i].lo - lo) / 64;
    return std::span(words).subspan(first_word, words_for(segs[i].hi - segs[i].lo));
  };
  parallel_for(segs.size(), threads, [&](std::size_t i) { sieve_segment(segs[i].lo, segs[i].hi, segment_words(i), *base); });

  // Base primes above the cached limit are streamed in windows instead of stored.
  for (std::uint64_t b_lo = kCachedBaseLimit + 1; root > kCachedBaseLimit && b_lo <= root;) {
    const std::uint64_t b_hi = std::min(root + 1, b_lo + kSegmentLength);
    const auto chunk = sieve_window(b_lo, b_hi).primes();
    parallel_for(segs.size(), threads, [&](std::size_t i) { cross_off(segs[i].lo, segs[i].hi, segment_words(i), chunk); });
    b_lo = b_hi;
  }
  return PrimeTable(lo, hi, std::move(words));
}

std::uint64_t prime_count(std::uint64_t x, unsigned threads) {
  return stream_count(x, threads, [](std::uint64_t, std::span<const std::uint64_t> words) {
    std::uint64_t c = 0;
    for (auto w : words) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  });
}

std::uint64_t prime_count(double x, unsigned threads) { return prime_count(floor_real(x), threads); }

std::uint64_t prime_count_ap(std::uint64_t x, std::uint64_t q, std::int64_t a, unsigned threads) {
  if (q == 0) throw DomainError("modulus q must be >= 1");
  if (q == 1) return prime_count(x, threads);
  const std::uint64_t residue = mod_floor(a, q);
  return stream_count(x, threads, [&](std::uint64_t seg_lo, std::span<const std::uint64_t> words) {
    std::uint64_t c = 0;
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t bits = words[w];
      while (bits != 0) {
        std::uint64_t p = seg_lo + 64 * w + static_cast<std::uint64_t>(std::countr_zero(bits));
        if (p % q == residue) ++c;
        bits &= bits - 1;
      }
    }
    return c;
  });
}

std::uint64_t prime_count_ap(double x, std::uint64_t q, std::int64_t a, unsigned threads) {
  return prime_count_ap(floor_real(x), q, a, threads);
}

std::vector<std::uint64_t> primes_in_class(const PrimeTable& table, std::uint64_t q, std::int64_t a) {
  if (q == 0) throw DomainError("modulus q must be >= 1");
  const std::uint64_t residue = mod_floor(a, q);
  std::vector<std::uint64_t> out;
  table.for_each_prime([&](std::uint64_t p) {
    if (p % q == residue) out.push_back(p);
  });
  return out;
}

}  // namespace tuplecraft
