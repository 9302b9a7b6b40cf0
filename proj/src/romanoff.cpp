#include "tuplecraft/romanoff.hpp"

#include "tuplecraft/errors.hpp"
#include "tuplecraft/parallel.hpp"
#include "tuplecraft/sieve.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>

namespace tuplecraft {

namespace {

constexpr std::int64_t kBlock = std::int64_t{1} << 16;

void require_base(std::int64_t base) {
  if (base < 2) throw DomainError("set base must be >= 2, got " + std::to_string(base));
}

void require_sorted_set(std::span<const std::int64_t> set) {
  for (std::size_t i = 1; i < set.size(); ++i)
    if (set[i - 1] >= set[i]) throw DomainError("set must be sorted and distinct");
}

// f(n) for n in [n0, n1), given a table covering [0, n1 - min(A)).
std::vector<std::uint32_t> f_block(std::span<const std::int64_t> set, const PrimeTable& table, std::int64_t n0,
                                   std::int64_t n1) {
  std::vector<std::uint32_t> f(static_cast<std::size_t>(n1 - n0), 0);
  for (auto a : set) {
    if (a > n1 - 3) break;
    const std::int64_t from = std::max<std::int64_t>(2, n0 - a);
    table.for_each_prime_in(static_cast<std::uint64_t>(from), static_cast<std::uint64_t>(n1 - a),
                            [&](std::uint64_t p) { ++f[static_cast<std::size_t>(static_cast<std::int64_t>(p) + a - n0)]; });
  }
  return f;
}

}  // namespace

std::vector<std::int64_t> powers_set(std::int64_t base, std::int64_t cap) {
  require_base(base);
  std::vector<std::int64_t> out;
  for (std::int64_t v = base; v <= cap;) {
    out.push_back(v);
    if (v > cap / base) break;
    v *= base;
  }
  return out;
}

std::vector<std::int64_t> doubly_exponential_set(std::int64_t base, std::int64_t cap) {
  require_base(base);
  std::vector<std::int64_t> out;
  if (base > cap / base) return out;
  for (std::int64_t v = base * base; v <= cap;) {
    out.push_back(v);
    if (v > cap / v) break;
    v *= v;
  }
  return out;
}

std::vector<std::int64_t> parse_set(std::istream& in, DuplicatePolicy policy, std::vector<std::string>* warnings) {
  std::set<std::int64_t> members;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    std::int64_t v = 0;
    const char* b = line.data() + first;
    const char* e = line.data() + last + 1;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || ptr != e || v < 1)
      throw DomainError("set file line " + std::to_string(line_no) + ": expected a positive integer");
    if (!members.insert(v).second) {
      if (policy == DuplicatePolicy::reject)
        throw DomainError("set file line " + std::to_string(line_no) + ": duplicate member " + std::to_string(v));
      if (warnings) warnings->push_back("dropped duplicate member " + std::to_string(v));
    }
  }
  return {members.begin(), members.end()};
}

std::vector<std::int64_t> read_set_file(const std::string& path, DuplicatePolicy policy,
                                        std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open set file " + path);
  return parse_set(in, policy, warnings);
}

std::vector<std::int64_t> build_set(const SetSource& source, std::int64_t cap, std::vector<std::string>* warnings) {
  if (cap < 2) throw DomainError("set cap must be >= 2");
  return std::visit(
      [&](const auto& s) -> std::vector<std::int64_t> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PowersOf>) {
          return powers_set(s.base, cap);
        } else if constexpr (std::is_same_v<T, DoublyExponential>) {
          return doubly_exponential_set(s.base, cap);
        } else {
          auto all = read_set_file(s.path, s.duplicates, warnings);
          std::erase_if(all, [cap](std::int64_t v) { return v > cap; });
          return all;
        }
      },
      source);
}

std::uint64_t representation_count(std::span<const std::int64_t> sorted_set, std::int64_t n) {
  if (n < 0) throw DomainError("representation count needs n >= 0");
  require_sorted_set(sorted_set);
  if (sorted_set.empty() || n - sorted_set.front() < 2) return 0;
  const auto table = sieve_window(0, static_cast<std::uint64_t>(n - sorted_set.front()) + 1);
  std::uint64_t f = 0;
  for (auto a : sorted_set) {
    if (n - a < 2) break;
    if (table.contains(static_cast<std::uint64_t>(n - a))) ++f;
  }
  return f;
}

RepresentationProfile profile(std::span<const std::int64_t> sorted_set, std::int64_t x, unsigned threads) {
  if (x < 2) throw DomainError("profile needs x >= 2");
  require_sorted_set(sorted_set);
  const auto table = sieve_window(0, static_cast<std::uint64_t>(x));

  struct Partial {
    std::map<std::uint64_t, std::uint64_t> histogram;
    std::uint64_t sum_f = 0, sum_f2 = 0, represented = 0;
  };
  const std::int64_t n_blocks = (x + kBlock - 1) / kBlock;
  std::vector<Partial> partial(static_cast<std::size_t>(n_blocks));
  parallel_for(partial.size(), threads, [&](std::size_t i) {
    const std::int64_t n0 = 1 + static_cast<std::int64_t>(i) * kBlock;
    const std::int64_t n1 = std::min(x + 1, n0 + kBlock);
    Partial& out = partial[i];
    for (auto f : f_block(sorted_set, table, n0, n1)) {
      ++out.histogram[f];
      out.sum_f += f;
      out.sum_f2 += static_cast<std::uint64_t>(f) * f;
      if (f > 0) ++out.represented;
    }
  });

  RepresentationProfile result;
  result.x = x;
  for (const auto& p : partial) {
    for (auto [v, c] : p.histogram) result.histogram[v] += c;
    result.sum_f += p.sum_f;
    result.sum_f2 += p.sum_f2;
    result.represented += p.represented;
  }
  if (result.sum_f2 > 0) result.cs_bound = Rational(BigInt(result.sum_f) * result.sum_f, BigInt(result.sum_f2));
  return result;
}

std::vector<std::pair<std::int64_t, std::uint64_t>> erdos_probe(std::span<const std::int64_t> sorted_set,
                                                               std::span<const std::int64_t> checkpoints) {
  require_sorted_set(sorted_set);
  for (std::size_t i = 1; i < checkpoints.size(); ++i)
    if (checkpoints[i] < checkpoints[i - 1]) throw DomainError("checkpoints must be increasing");
  std::vector<std::pair<std::int64_t, std::uint64_t>> out;
  if (checkpoints.empty()) return out;
  const std::int64_t top = std::max<std::int64_t>(checkpoints.back(), 2);
  const auto table = sieve_window(0, static_cast<std::uint64_t>(top));

  std::uint64_t running = 0;
  std::size_t next = 0;
  while (next < checkpoints.size() && checkpoints[next] < 1) out.emplace_back(checkpoints[next++], 0);
  for (std::int64_t n0 = 1; n0 <= top && next < checkpoints.size(); n0 += kBlock) {
    const std::int64_t n1 = std::min(top + 1, n0 + kBlock);
    const auto f = f_block(sorted_set, table, n0, n1);
    for (std::int64_t n = n0; n < n1; ++n) {
      running = std::max<std::uint64_t>(running, f[static_cast<std::size_t>(n - n0)]);
      while (next < checkpoints.size() && checkpoints[next] == n) out.emplace_back(checkpoints[next++], running);
    }
  }
  return out;
}

CensusResult corollary1_experiment(std::span<const std::int64_t> sorted_set, std::size_t k, std::int64_t x,
                                   std::uint64_t m, unsigned threads) {
  require_sorted_set(sorted_set);
  if (k < 1) throw DomainError("corollary experiment needs k >= 1");
  if (x < 2) throw DomainError("corollary experiment needs x >= 2");
  std::vector<std::int64_t> usable;
  for (auto a : sorted_set)
    if (a >= 1 && a <= x) usable.push_back(a);
  if (usable.size() < k)
    throw DomainError("only " + std::to_string(usable.size()) + " members in [1, x], need k = " + std::to_string(k));
  const std::vector<std::int64_t> chosen(usable.end() - static_cast<std::ptrdiff_t>(k), usable.end());

  const auto shifted = shift_to_positive(corollary1_tuple(chosen, x));
  CensusResult result = census_window(shifted.forms, x - shifted.shift, 3 * x - shifted.shift, m, threads);
  result.x = x;
  result.span = 3;
  result.begin = x;
  result.end = 3 * x;
  return result;
}

}  // namespace tuplecraft
