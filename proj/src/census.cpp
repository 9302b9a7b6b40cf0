#include "tuplecraft/census.hpp"

#include "tuplecraft/errors.hpp"
#include "tuplecraft/parallel.hpp"
#include "tuplecraft/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace tuplecraft {

namespace {

using i128 = __int128;

constexpr std::uint64_t kImageBudget = std::uint64_t{1} << 21;

std::uint64_t distinct_prime_values(const TupleSet& tuple, std::int64_t n) {
  std::vector<WideInt> primes;
  for (const auto& f : tuple) {
    WideInt v = evaluate(f, WideInt{n});
    if (is_prime(v)) primes.push_back(v);
  }
  std::sort(primes.begin(), primes.end());
  return static_cast<std::uint64_t>(std::unique(primes.begin(), primes.end()) - primes.begin());
}

// n in [begin, end) where two distinct forms agree: a_i n + b_i = a_j n + b_j.
std::vector<std::int64_t> coincidence_points(const TupleSet& tuple, std::int64_t begin, std::int64_t end) {
  std::set<std::int64_t> points;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      const i128 da = static_cast<i128>(tuple[i].a) - tuple[j].a;
      if (da == 0) continue;
      const i128 db = static_cast<i128>(tuple[j].b) - tuple[i].b;
      if (db % da != 0) continue;
      const i128 n = db / da;
      if (n >= begin && n < end) points.insert(static_cast<std::int64_t>(n));
    }
  }
  return {points.begin(), points.end()};
}

}  // namespace

std::uint64_t count_prime_hits(const TupleSet& tuple, std::int64_t n) { return distinct_prime_values(tuple, n); }

CensusResult census_window(const TupleSet& tuple, std::int64_t begin, std::int64_t end, std::uint64_t m,
                           unsigned threads) {
  if (begin >= end) throw DomainError("census window is empty");
  std::int64_t max_slope = 1;
  for (const auto& f : tuple) {
    WideInt top = evaluate(f, WideInt{end - 1});
    if (top > WideInt::from_u64(UINT64_MAX))
      throw UnsupportedRange("value of " + f.to_string() + " on the window exceeds 2^64");
    max_slope = std::max(max_slope, f.a);
  }

  const std::uint64_t k = tuple.size();
  const std::uint64_t length = static_cast<std::uint64_t>(end - begin);
  const std::uint64_t chunk =
      std::clamp<std::uint64_t>(kImageBudget / static_cast<std::uint64_t>(max_slope), 1, kSegmentLength);
  const std::uint64_t n_chunks = (length + chunk - 1) / chunk;
  const auto coincident = coincidence_points(tuple, begin, end);

  std::vector<std::vector<std::uint64_t>> partial(n_chunks);
  parallel_for(n_chunks, threads, [&](std::size_t c) {
    const std::int64_t n0 = begin + static_cast<std::int64_t>(c * chunk);
    const std::int64_t n1 = std::min<std::int64_t>(end, n0 + static_cast<std::int64_t>(chunk));
    std::vector<std::uint32_t> hits(static_cast<std::size_t>(n1 - n0), 0);
    for (const auto& f : tuple) {
      const i128 v_first = static_cast<i128>(f.a) * n0 + f.b;
      const i128 v_last = static_cast<i128>(f.a) * (n1 - 1) + f.b;
      if (v_last < 2) continue;
      const auto lo = static_cast<std::uint64_t>(std::max<i128>(v_first, 0));
      const auto table = sieve_window(lo, static_cast<std::uint64_t>(v_last) + 1);
      i128 v = v_first;
      for (std::size_t i = 0; i < hits.size(); ++i, v += f.a)
        if (v >= 2 && table.contains(static_cast<std::uint64_t>(v))) ++hits[i];
    }
    auto first = std::lower_bound(coincident.begin(), coincident.end(), n0);
    for (auto it = first; it != coincident.end() && *it < n1; ++it)
      hits[static_cast<std::size_t>(*it - n0)] = static_cast<std::uint32_t>(distinct_prime_values(tuple, *it));
    std::vector<std::uint64_t> histogram(k + 1, 0);
    for (auto h : hits) ++histogram[h];
    partial[c] = std::move(histogram);
  });

  CensusResult result;
  result.x = begin;
  result.span = 0;
  result.m = m;
  result.k = k;
  result.begin = begin;
  result.end = end;
  result.histogram.assign(k + 1, 0);
  for (const auto& h : partial)
    for (std::size_t i = 0; i <= k; ++i) result.histogram[i] += h[i];
  for (std::uint64_t h = m; h <= k; ++h) result.count += result.histogram[h];
  result.coincidences = coincident.size();
  return result;
}

CensusResult tuple_census(const TupleSet& tuple, std::int64_t x, int span, std::uint64_t m,
                          const CensusOptions& options) {
  if (x < 2) throw DomainError("census needs x >= 2");
  if (span != 2 && span != 3) throw DomainError("census span must be 2 or 3");
  WideInt end_wide = WideInt{span} * WideInt{x} - WideInt{options.closed_end ? 1 : 0};
  if (!end_wide.fits_i64()) throw UnsupportedRange("census window end exceeds 64 bits");
  CensusResult result = census_window(tuple, x, end_wide.to_i64(), m, options.threads);
  result.x = x;
  result.span = span;
  return result;
}

double theorem_bound(double x, std::uint64_t k, double C) {
  if (!(x > 1.0)) throw DomainError("theorem bound needs x > 1");
  if (k < 1) throw DomainError("theorem bound needs k >= 1");
  if (!(C > 0.0)) throw DomainError("theorem bound needs C > 0");
  const double kk = static_cast<double>(k);
  return std::exp(std::log(x) - kk * std::log(std::log(x)) - C * kk);
}

std::uint64_t theorem_threshold(std::uint64_t k, double C) {
  if (k < 1) throw DomainError("threshold needs k >= 1");
  if (!(C > 0.0)) throw DomainError("threshold needs C > 0");
  return static_cast<std::uint64_t>(std::ceil(std::log(static_cast<double>(k)) / C));
}

TupleSet corollary1_tuple(std::span<const std::int64_t> members, std::optional<std::int64_t> x) {
  std::set<std::int64_t> seen;
  std::vector<LinearForm> forms;
  forms.reserve(members.size());
  for (auto a : members) {
    if (!seen.insert(a).second) throw DomainError("duplicate member " + std::to_string(a));
    if (a < 1 || (x && a > *x))
      throw DomainError("member " + std::to_string(a) + " outside [1, x]");
    forms.push_back({1, -a});
  }
  return TupleSet(std::move(forms));
}

}  // namespace tuplecraft
