#include "tuplecraft/audit.hpp"

#include "tuplecraft/errors.hpp"
#include "tuplecraft/parallel.hpp"
#include "tuplecraft/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tuplecraft {

namespace {

// #{0 <= n <= upper : n = r (mod q)}, 0 <= r < q
std::uint64_t count_up_to(std::int64_t upper, std::uint64_t q, std::uint64_t r) {
  if (upper < 0 || static_cast<std::uint64_t>(upper) < r) return 0;
  return (static_cast<std::uint64_t>(upper) - r) / q + 1;
}

std::optional<double> log10_rhs(std::uint64_t count, std::int64_t x, std::uint64_t k) {
  if (count == 0 || x < 3) return std::nullopt;
  const double kk = static_cast<double>(k);
  return std::log10(static_cast<double>(count)) - 100.0 * kk * kk * std::log10(std::log(static_cast<double>(x)));
}

void require_prime_B(std::uint64_t B) {
  if (!is_prime(B)) throw DomainError("B must be prime, got " + std::to_string(B));
}

Rational abs_diff_over(const BigInt& scaled_count, const BigInt& total, const BigInt& den) {
  BigInt diff = scaled_count - total;
  if (diff < 0) diff = -diff;
  return Rational(diff, den);
}

}  // namespace

WindowSet::WindowSet(bool naturals, std::int64_t x, std::vector<std::int64_t> members)
    : naturals_(naturals), x_(x), members_(std::move(members)) {}

WindowSet WindowSet::naturals(std::int64_t x) {
  if (x < 1) throw DomainError("window base x must be a positive integer");
  if (x > (INT64_MAX / 2)) throw UnsupportedRange("window base x too large");
  return WindowSet(true, x, {});
}

WindowSet WindowSet::from_members(std::vector<std::int64_t> members, std::int64_t x) {
  if (x < 1) throw DomainError("window base x must be a positive integer");
  if (x > (INT64_MAX / 2)) throw UnsupportedRange("window base x too large");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::erase_if(members, [x](std::int64_t n) { return n < x || n >= 2 * x; });
  return WindowSet(false, x, std::move(members));
}

std::uint64_t WindowSet::count() const {
  return naturals_ ? static_cast<std::uint64_t>(x_) : static_cast<std::uint64_t>(members_.size());
}

std::uint64_t WindowSet::count_ap(std::uint64_t q, std::int64_t a) const {
  if (q == 0) throw DomainError("modulus q must be >= 1");
  const std::uint64_t r = mod_floor(a, q);
  if (naturals_) return count_up_to(2 * x_ - 1, q, r) - count_up_to(x_ - 1, q, r);
  return static_cast<std::uint64_t>(
      std::count_if(members_.begin(), members_.end(), [&](std::int64_t n) { return mod_floor(n, q) == r; }));
}

std::uint64_t floor_power(std::int64_t x, double theta) {
  const double v = std::pow(static_cast<double>(x), theta);
  return static_cast<std::uint64_t>(std::floor(v * (1.0 + 1e-12)));
}

AuditConfig make_audit_config(std::int64_t x, double theta, std::uint64_t B, std::uint64_t k) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("theta must lie in (0, 1)");
  if (x < 1) throw DomainError("x must be a positive integer");
  require_prime_B(B);
  const std::uint64_t Q = floor_power(x, theta);
  if (Q < 1) throw DomainError("floor(x^theta) must be >= 1");
  return {x, theta, Q, B, k};
}

std::vector<std::int64_t> prime_image_members(const WindowSet& window, const LinearForm& form) {
  std::vector<std::int64_t> out;
  if (window.count() == 0) return out;
  if (!window.is_naturals()) {
    for (auto n : window.members())
      if (is_prime(evaluate(form, WideInt{n}))) out.push_back(n);
    return out;
  }
  const WideInt first = evaluate(form, WideInt{window.begin()});
  const WideInt last = evaluate(form, WideInt{window.end() - 1});
  if (last > WideInt::from_u64(UINT64_MAX))
    throw UnsupportedRange("values of " + form.to_string() + " on the window exceed 2^64");
  if (last < WideInt{2}) return out;
  const std::uint64_t lo = first < WideInt{0} ? 0 : first.to_u64();
  const auto table = sieve_window(lo, last.to_u64() + 1);
  for (std::int64_t n = window.begin(); n < window.end(); ++n) {
    const WideInt v = evaluate(form, WideInt{n});
    if (v >= WideInt{2} && table.contains(v.to_u64())) out.push_back(n);
  }
  return out;
}

std::uint64_t count_P_LA(const WindowSet& window, const LinearForm& form,
                         std::optional<std::pair<std::uint64_t, std::int64_t>> residue) {
  const auto members = prime_image_members(window, form);
  if (!residue) return members.size();
  const auto [q, a] = *residue;
  if (q == 0) throw DomainError("modulus q must be >= 1");
  const std::uint64_t r = mod_floor(a, q);
  return static_cast<std::uint64_t>(
      std::count_if(members.begin(), members.end(), [&](std::int64_t n) { return mod_floor(n, q) == r; }));
}

DiscrepancyReport hyp1_sum(const WindowSet& window, std::uint64_t Q, std::uint64_t k, unsigned threads) {
  if (Q < 1) throw DomainError("Q must be >= 1");
  const std::uint64_t total = window.count();
  std::vector<DiscrepancyTerm> terms(Q);
  parallel_for(Q, threads, [&](std::size_t i) {
    const std::uint64_t q = i + 1;
    std::vector<std::uint64_t> counts(q, 0);
    if (window.is_naturals()) {
      for (std::uint64_t a = 0; a < q; ++a) counts[a] = window.count_ap(q, static_cast<std::int64_t>(a));
    } else {
      for (auto n : window.members()) ++counts[mod_floor(n, q)];
    }
    // |c - N/q| = |c q - N| / q
    std::uint64_t best_dev = 0;
    std::int64_t worst = 0;
    for (std::uint64_t a = 0; a < q; ++a) {
      const BigInt scaled = BigInt(counts[a]) * q;
      BigInt dev = scaled - total;
      if (dev < 0) dev = -dev;
      const auto d = dev.convert_to<std::uint64_t>();
      if (a == 0 || d > best_dev) {
        best_dev = d;
        worst = static_cast<std::int64_t>(a);
      }
    }
    const Rational value{BigInt(best_dev), BigInt(q)};
    terms[i] = {q, worst, value, to_double(value), std::nullopt};
  });
  DiscrepancyReport report;
  report.kind = "hyp1";
  Rational sum = 0;
  for (const auto& t : terms) sum += *t.exact;
  report.terms = std::move(terms);
  report.exact_total = sum;
  report.total = to_double(sum);
  report.comparators = {total, std::nullopt, k, log10_rhs(total, window.x(), k)};
  return report;
}

DiscrepancyReport hyp2_sum(const WindowSet& window, const LinearForm& form, std::uint64_t B, std::uint64_t Q,
                           std::uint64_t k, unsigned threads) {
  if (Q < 1) throw DomainError("Q must be >= 1");
  require_prime_B(B);
  const auto members = prime_image_members(window, form);
  const std::uint64_t primes = members.size();

  std::vector<std::uint64_t> moduli;
  for (std::uint64_t q = 1; q <= Q; ++q)
    if (q % B != 0) moduli.push_back(q);

  std::vector<DiscrepancyTerm> terms(moduli.size());
  parallel_for(moduli.size(), threads, [&](std::size_t i) {
    const std::uint64_t q = moduli[i];
    const std::uint64_t phi = phi_L(form, q);
    std::vector<std::uint64_t> counts(q, 0);
    for (auto n : members) ++counts[mod_floor(n, q)];
    const std::uint64_t slope = mod_floor(form.a, q), intercept = mod_floor(form.b, q);
    std::optional<Rational> best;
    std::int64_t worst = -1;
    for (std::uint64_t a = 0; a < q; ++a) {
      const std::uint64_t image = (mulmod(slope, a, q) + intercept) % q;
      if (gcd_u64(image, q) != 1) continue;
      Rational dev = abs_diff_over(BigInt(counts[a]) * phi, BigInt(primes), BigInt(phi));
      if (!best || dev > *best) {
        best = dev;
        worst = static_cast<std::int64_t>(a);
      }
    }
    Rational value = best.value_or(Rational(0));
    terms[i] = {q, worst, value, to_double(value), std::nullopt};
  });

  DiscrepancyReport report;
  report.kind = "hyp2";
  Rational sum = 0;
  for (const auto& t : terms) {
    sum += *t.exact;
    if (t.worst_a < 0) report.notes.push_back("modulus " + std::to_string(t.q) + " has no class with (L(a), q) = 1");
  }
  report.terms = std::move(terms);
  report.exact_total = sum;
  report.total = to_double(sum);
  report.comparators = {window.count(), primes, k, log10_rhs(primes, window.x(), k)};
  return report;
}

Concentration hyp3_concentration(const WindowSet& window, std::uint64_t q) {
  if (q == 0) throw DomainError("hyp3 needs q >= 1");
  const std::uint64_t total = window.count();
  if (total == 0) throw DomainError("hyp3 ratio undefined on an empty window");
  std::vector<std::uint64_t> counts(q, 0);
  if (window.is_naturals()) {
    for (std::uint64_t a = 0; a < q; ++a) counts[a] = window.count_ap(q, static_cast<std::int64_t>(a));
  } else {
    for (auto n : window.members()) ++counts[mod_floor(n, q)];
  }
  auto it = std::max_element(counts.begin(), counts.end());
  const std::uint64_t best = *it;
  return {q, best, static_cast<std::int64_t>(it - counts.begin()), Rational(BigInt(best) * q, BigInt(total))};
}

DiscrepancyReport hyp3_report(const WindowSet& window, std::uint64_t Q, unsigned threads) {
  if (Q < 1) throw DomainError("Q must be >= 1");
  std::vector<DiscrepancyTerm> terms(Q);
  parallel_for(Q, threads, [&](std::size_t i) {
    const auto c = hyp3_concentration(window, i + 1);
    terms[i] = {c.q, c.worst_a, c.ratio, to_double(c.ratio), std::nullopt};
  });
  DiscrepancyReport report;
  report.kind = "hyp3";
  Rational sum = 0, worst = 0;
  for (const auto& t : terms) {
    sum += *t.exact;
    worst = std::max(worst, *t.exact);
  }
  report.terms = std::move(terms);
  report.exact_total = sum;
  report.total = to_double(sum);
  report.comparators = {window.count(), std::nullopt, 1, std::nullopt};
  report.notes.push_back("term values are ratios max_a #A(x;q,a) / (#A(x)/q); maximum ratio " +
                         worst.str());
  return report;
}

DiscrepancyReport bv_discrepancy(const BvConfig& config) {
  if (config.U < 3) throw DomainError("bv needs U >= 3");
  if (config.rmax < 1) throw DomainError("bv needs rmax >= 1");
  require_prime_B(config.B);

  const auto primes = sieve_window(0, config.U + 1).primes();
  const bool integer_scan = config.scan == UScan::integer;

  std::vector<double> points;
  points.reserve(2 * primes.size() + 1);
  for (auto p : primes) {
    if (integer_scan && p >= 3) points.push_back(static_cast<double>(p - 1));
    points.push_back(static_cast<double>(p));
  }
  points.push_back(static_cast<double>(config.U));
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const auto li_values = log_integral_at(points);
  auto li_of = [&](std::uint64_t u) {
    auto it = std::lower_bound(points.begin(), points.end(), static_cast<double>(u));
    return li_values[static_cast<std::size_t>(it - points.begin())];
  };
  std::vector<double> li_prime(primes.size()), li_before(primes.size(), 0.0);
  for (std::size_t j = 0; j < primes.size(); ++j) {
    li_prime[j] = li_of(primes[j]);
    li_before[j] = integer_scan ? (primes[j] >= 3 ? li_of(primes[j] - 1) : 0.0) : li_prime[j];
  }
  const double li_U = li_of(config.U);

  std::vector<std::uint64_t> moduli;
  for (std::uint64_t r = 1; r <= config.rmax; ++r)
    if (r % config.B != 0) moduli.push_back(r);

  std::vector<DiscrepancyTerm> terms(moduli.size());
  parallel_for(moduli.size(), config.threads, [&](std::size_t i) {
    const std::uint64_t r = moduli[i];
    const long double phi = static_cast<long double>(euler_phi(r));
    std::vector<std::uint64_t> counts(r, 0);
    std::vector<bool> coprime(r);
    for (std::uint64_t b = 0; b < r; ++b) coprime[b] = gcd_u64(b, r) == 1;

    long double best = -1.0L;
    std::int64_t worst_b = 0;
    std::uint64_t worst_u = 2;
    auto consider = [&](long double v, std::uint64_t b, std::uint64_t u) {
      if (v > best) {
        best = v;
        worst_b = static_cast<std::int64_t>(b);
        worst_u = u;
      }
    };
    for (std::size_t j = 0; j < primes.size(); ++j) {
      const std::uint64_t p = primes[j];
      const std::uint64_t b = p % r;
      if (!coprime[b]) continue;
      const long double jumped = static_cast<long double>(++counts[b]);
      if (!integer_scan || p >= 3)
        consider(std::fabs(jumped - 1.0L - li_before[j] / phi), b, integer_scan ? p - 1 : p);
      consider(std::fabs(jumped - li_prime[j] / phi), b, p);
    }
    for (std::uint64_t b = 0; b < r; ++b)
      if (coprime[b]) consider(std::fabs(static_cast<long double>(counts[b]) - li_U / phi), b, config.U);
    terms[i] = {r, worst_b, std::nullopt, static_cast<double>(best), worst_u};
  });

  DiscrepancyReport report;
  report.kind = "bv";
  long double sum = 0.0L;
  for (const auto& t : terms) sum += t.value;
  report.terms = std::move(terms);
  report.total = static_cast<double>(sum);
  report.comparators = {std::nullopt, std::nullopt, 1, std::nullopt};
  report.notes.push_back(integer_scan ? "u scanned over integers in [2, U]"
                                      : "u scanned over reals in [2, U]; left limits at jumps included");
  if (config.x > 0) report.notes.push_back("x = " + std::to_string(config.x) + " recorded as annotation");
  return report;
}

DeltaReport delta_statistic(const WindowSet& window, std::span<const LinearForm> forms, std::uint64_t B) {
  if (forms.empty()) throw DomainError("delta needs at least one form");
  if (window.x() < 3) throw DomainError("delta needs x >= 3");
  require_prime_B(B);
  const std::uint64_t total = window.count();
  if (total == 0) throw DomainError("delta undefined on an empty window");

  DeltaReport report;
  report.k = forms.size();
  report.count_A = total;
  Rational weighted = 0;
  for (const auto& f : forms) {
    const std::uint64_t count = count_P_LA(window, f);
    report.count_P.push_back(count);
    const auto a = static_cast<std::uint64_t>(f.a);
    weighted += Rational(BigInt(euler_phi(a)) * count, BigInt(a));
  }
  report.exact_factor = weighted * Rational(BigInt(B - 1), BigInt(B)) / Rational(BigInt(report.k) * total);
  report.ln_x = std::log(static_cast<double>(window.x()));
  report.value = to_double(report.exact_factor) * report.ln_x;
  report.exceeds_one_eighth = report.value > 0.125;
  if (report.k >= 2) {
    report.inverse_ln_k = 1.0 / std::log(static_cast<double>(report.k));
    report.exceeds_inverse_ln_k = report.value > *report.inverse_ln_k;
  }
  return report;
}

DeltaReport delta_statistic(const WindowSet& window, const TupleSet& tuple, std::uint64_t B) {
  return delta_statistic(window, tuple.forms(), B);
}

BChoice choose_B(double x) {
  if (!(x > std::numbers::e)) throw DomainError("choose_B needs x > e");
  if (std::isinf(x)) throw DomainError("choose_B needs finite x");
  const double threshold = 0.9 * std::log(std::log(x));
  return {next_prime_above(threshold), threshold, false};
}

}  // namespace tuplecraft
