#include "tuplecraft/forms.hpp"

#include "tuplecraft/errors.hpp"
#include "tuplecraft/sieve.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <random>
#include <set>
#include <sstream>

namespace tuplecraft {

std::string LinearForm::to_string() const {
  std::string s = (a == 1) ? "n" : std::to_string(a) + "n";
  if (b > 0) s += "+" + std::to_string(b);
  if (b < 0) s += std::to_string(b);
  return s;
}

WideInt evaluate(const LinearForm& form, WideInt n) { return WideInt{form.a} * n + WideInt{form.b}; }

TupleSet::TupleSet(std::vector<LinearForm> forms) : forms_(std::move(forms)) {
  if (forms_.empty()) throw DomainError("a tuple needs at least one linear form");
  std::set<LinearForm> seen;
  for (const auto& f : forms_) {
    if (f.a < 1) throw DomainError("slope must be >= 1 in form " + f.to_string());
    if (!seen.insert(f).second) throw DomainError("duplicate linear form " + f.to_string());
  }
}

TupleSet TupleSet::from_offsets(std::span<const std::int64_t> offsets) {
  std::vector<LinearForm> forms;
  forms.reserve(offsets.size());
  for (auto o : offsets) forms.push_back({1, o});
  return TupleSet(std::move(forms));
}

TupleSet TupleSet::subset(std::span<const std::size_t> indices) const {
  std::vector<LinearForm> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(forms_.at(i));
  return TupleSet(std::move(out));
}

namespace {

// Root of a n + b mod p, or nullopt when p | a. Sets all_residues when p | a and p | b.
std::optional<std::uint64_t> root_mod(const LinearForm& f, std::uint64_t p, bool& all_residues) {
  const std::uint64_t am = mod_floor(f.a, p);
  const std::uint64_t bm = mod_floor(f.b, p);
  if (am == 0) {
    if (bm == 0) all_residues = true;
    return std::nullopt;
  }
  return mulmod((p - bm) % p, invmod(am, p), p);
}

std::uint64_t omega_unchecked(const TupleSet& tuple, std::uint64_t p) {
  std::vector<std::uint64_t> roots;
  roots.reserve(tuple.size());
  for (const auto& f : tuple) {
    bool all = false;
    auto r = root_mod(f, p, all);
    if (all) return p;
    if (r) roots.push_back(*r);
  }
  std::sort(roots.begin(), roots.end());
  return static_cast<std::uint64_t>(std::unique(roots.begin(), roots.end()) - roots.begin());
}

void require_coprime_coefficients(const TupleSet& tuple) {
  for (const auto& f : tuple)
    if (gcd(f.a, f.b) != 1) throw DomainError("form " + f.to_string() + " has gcd(a, b) > 1");
}

}  // namespace

std::uint64_t omega_p(const TupleSet& tuple, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("omega_p needs a prime, got " + std::to_string(p));
  return omega_unchecked(tuple, p);
}

Admissibility is_admissible(const TupleSet& tuple) {
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const std::uint64_t g = gcd(tuple[i].a, tuple[i].b);
    if (g > 1) return {false, smallest_prime_factor(g), i};
  }
  const auto k = static_cast<std::uint64_t>(tuple.size());
  if (k < 2) return {};
  for (std::uint32_t p : *base_primes(k)) {
    if (p > k) break;
    if (omega_unchecked(tuple, p) == p) return {false, p, std::nullopt};
  }
  return {};
}

std::vector<std::size_t> admissible_subset(const TupleSet& tuple, ScanOrder order, std::uint64_t seed) {
  require_coprime_coefficients(tuple);
  const std::size_t k = tuple.size();
  std::vector<std::size_t> scan(k);
  for (std::size_t i = 0; i < k; ++i) scan[i] = i;
  if (order == ScanOrder::seeded_random) {
    // Fisher-Yates with a raw engine draw so the order is identical across standard libraries.
    std::mt19937_64 rng(seed);
    for (std::size_t i = k; i > 1; --i) std::swap(scan[i - 1], scan[rng() % i]);
  }

  // covered[j][r]: residue r mod primes[j] is a root of some kept form.
  std::vector<std::uint64_t> primes;
  for (std::uint32_t p : *base_primes(std::max<std::size_t>(k, 2)))
    if (p <= k) primes.push_back(p);
  std::vector<std::vector<bool>> covered;
  std::vector<std::uint64_t> covered_count(primes.size(), 0);
  for (auto p : primes) covered.emplace_back(p, false);

  std::vector<std::size_t> kept;
  std::vector<std::optional<std::uint64_t>> roots(primes.size());
  for (std::size_t idx : scan) {
    bool ok = true;
    for (std::size_t j = 0; j < primes.size() && ok; ++j) {
      bool all = false;
      roots[j] = root_mod(tuple[idx], primes[j], all);
      const bool adds = roots[j] && !covered[j][*roots[j]];
      if (covered_count[j] + (adds ? 1 : 0) >= primes[j]) ok = false;
    }
    if (!ok) continue;
    for (std::size_t j = 0; j < primes.size(); ++j) {
      if (roots[j] && !covered[j][*roots[j]]) {
        covered[j][*roots[j]] = true;
        ++covered_count[j];
      }
    }
    kept.push_back(idx);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

double singular_series(const TupleSet& tuple, std::uint64_t cutoff) {
  if (cutoff < 2) throw DomainError("singular series cutoff must be >= 2");
  const auto table = sieve_window(0, cutoff + 1);
  const long double k = static_cast<long double>(tuple.size());
  long double log_sum = 0.0L;
  bool vanished = false;
  table.for_each_prime([&](std::uint64_t p) {
    if (vanished) return;
    const std::uint64_t w = omega_unchecked(tuple, p);
    if (w == p) {
      vanished = true;
      return;
    }
    const long double pl = static_cast<long double>(p);
    log_sum += std::log1p(-static_cast<long double>(w) / pl) - k * std::log1p(-1.0L / pl);
  });
  return vanished ? 0.0 : static_cast<double>(std::exp(log_sum));
}

std::uint64_t phi_L(const LinearForm& form, std::uint64_t q) {
  if (q == 0) throw DomainError("phi_L needs q >= 1");
  const std::uint64_t a = gcd(form.a, 0);
  std::uint64_t result = 1;
  for (auto [p, e] : factorize(q)) {
    std::uint64_t pe = 1;
    for (unsigned i = 1; i < e; ++i) pe *= p;
    result *= (a % p == 0) ? pe * p : pe * (p - 1);
  }
  return result;
}

ShiftedTuple shift_to_positive(const TupleSet& tuple) {
  std::int64_t b_star = 0;
  for (const auto& f : tuple) {
    if (f.b >= 0)
      throw DomainError("form " + f.to_string() + " must be written a n - b with b > 0");
    if (gcd(f.a, f.b) != 1) throw DomainError("form " + f.to_string() + " has gcd(a, b) > 1");
    b_star = std::max(b_star, -f.b);
  }
  const std::int64_t shift = b_star + 1;
  std::vector<LinearForm> shifted;
  shifted.reserve(tuple.size());
  for (const auto& f : tuple) {
    WideInt l = WideInt{f.a} * WideInt{shift} + WideInt{f.b};
    if (!l.fits_i64()) throw OverflowError("shifted intercept of " + f.to_string() + " exceeds 64 bits");
    shifted.push_back({f.a, l.to_i64()});
  }
  return {TupleSet(std::move(shifted)), shift};
}

std::vector<std::string> coefficient_warnings(const TupleSet& tuple, double x, double c0) {
  std::vector<std::string> out;
  if (!(x > 1.0)) return out;
  const double growth = std::exp(c0 * std::sqrt(std::log(x)));
  for (const auto& f : tuple) {
    if (static_cast<double>(f.a) > growth)
      out.push_back("slope of " + f.to_string() + " exceeds exp(c0 sqrt(ln x))");
    if (static_cast<double>(f.b < 0 ? -f.b : f.b) > x * growth)
      out.push_back("intercept of " + f.to_string() + " exceeds x exp(c0 sqrt(ln x))");
  }
  return out;
}

namespace {

bool parse_i64(std::string_view s, std::int64_t& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

TupleSet parse_tuple_file(std::istream& in) {
  std::vector<LinearForm> forms;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string a_text, b_text, extra;
    fields >> a_text >> b_text;
    std::int64_t a = 0, b = 0;
    if (b_text.empty() || (fields >> extra) || !parse_i64(a_text, a) || !parse_i64(b_text, b))
      throw DomainError("tuple file line " + std::to_string(line_no) + ": expected two integers \"a b\"");
    forms.push_back({a, b});
  }
  return TupleSet(std::move(forms));
}

TupleSet read_tuple_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open tuple file " + path);
  return parse_tuple_file(in);
}

std::vector<std::int64_t> parse_offsets(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto first = item.find_first_not_of(" \t");
    auto last = item.find_last_not_of(" \t");
    std::int64_t v = 0;
    if (first == std::string::npos || !parse_i64(std::string_view(item).substr(first, last - first + 1), v))
      throw DomainError("invalid offset list \"" + csv + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw DomainError("empty offset list");
  return out;
}

}  // namespace tuplecraft
