#pragma once

#include "tuplecraft/forms.hpp"
#include "tuplecraft/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tuplecraft {

// A source set restricted to its window A(x) = {n in A : x <= n < 2x}.
class WindowSet {
 public:
  static WindowSet naturals(std::int64_t x);
  // Members are deduplicated and sorted; only those in [x, 2x) are kept.
  static WindowSet from_members(std::vector<std::int64_t> members, std::int64_t x);

  bool is_naturals() const { return naturals_; }
  std::int64_t x() const { return x_; }
  std::int64_t begin() const { return x_; }
  std::int64_t end() const { return 2 * x_; }
  // Window members (explicit source only).
  std::span<const std::int64_t> members() const { return members_; }

  // #A(x)
  std::uint64_t count() const;
  // #A(x; q, a)
  std::uint64_t count_ap(std::uint64_t q, std::int64_t a) const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    if (naturals_) {
      for (std::int64_t n = x_; n < 2 * x_; ++n) fn(n);
    } else {
      for (auto n : members_) fn(n);
    }
  }

 private:
  WindowSet(bool naturals, std::int64_t x, std::vector<std::int64_t> members);

  bool naturals_;
  std::int64_t x_;
  std::vector<std::int64_t> members_;
};

struct AuditConfig {
  std::int64_t x;
  double theta;
  std::uint64_t Q;  // floor(x^theta)
  std::uint64_t B;
  std::uint64_t k;
};

// Validates 0 < theta < 1, B prime, Q >= 1.
AuditConfig make_audit_config(std::int64_t x, double theta, std::uint64_t B, std::uint64_t k);
std::uint64_t floor_power(std::int64_t x, double theta);

struct DiscrepancyTerm {
  std::uint64_t q;
  std::int64_t worst_a;
  std::optional<Rational> exact;  // absent for terms involving li
  double value;
  std::optional<std::uint64_t> worst_u;
};

// The formal right sides #A(x)/(ln x)^{100k^2} and #P/(ln x)^{100k^2} underflow
// doubles at any feasible x, so they are carried as log10 values. They annotate
// reports only; nothing is graded against them.
struct Comparators {
  std::optional<std::uint64_t> count_A;
  std::optional<std::uint64_t> count_P;
  std::uint64_t k = 1;
  std::optional<double> log10_rhs;
};

struct DiscrepancyReport {
  std::string kind;
  std::vector<DiscrepancyTerm> terms;
  std::optional<Rational> exact_total;
  double total = 0.0;
  Comparators comparators;
  std::vector<std::string> notes;
};

// #P_{L,A}(x), or #P_{L,A}(x; q, a) when a residue class is given.
std::uint64_t count_P_LA(const WindowSet& window, const LinearForm& form,
                         std::optional<std::pair<std::uint64_t, std::int64_t>> residue = std::nullopt);

// The n in A(x) with L(n) prime, ascending.
std::vector<std::int64_t> prime_image_members(const WindowSet& window, const LinearForm& form);

// sum_{q <= Q} max_a |#A(x;q,a) - #A(x)/q|
DiscrepancyReport hyp1_sum(const WindowSet& window, std::uint64_t Q, std::uint64_t k = 1, unsigned threads = 1);

// sum_{q <= Q, (q,B)=1} max_{(L(a),q)=1} |#P_{L,A}(x;q,a) - #P_{L,A}(x)/phi_L(q)|
DiscrepancyReport hyp2_sum(const WindowSet& window, const LinearForm& form, std::uint64_t B, std::uint64_t Q,
                           std::uint64_t k = 1, unsigned threads = 1);

struct Concentration {
  std::uint64_t q;
  std::uint64_t max_count;
  std::int64_t worst_a;
  Rational ratio;  // max_count / (#A(x)/q)
};

Concentration hyp3_concentration(const WindowSet& window, std::uint64_t q);
// Concentration for every 1 <= q <= Q, reported as terms whose value is the ratio.
DiscrepancyReport hyp3_report(const WindowSet& window, std::uint64_t Q, unsigned threads = 1);

enum class UScan {
  integer,  // u ranges over integers in [2, U]
  real,     // u ranges over reals; jump points contribute their left limits
};

struct BvConfig {
  std::int64_t x = 0;  // annotation only
  std::uint64_t rmax = 1;
  std::uint64_t B = 2;
  std::uint64_t U = 3;
  UScan scan = UScan::integer;
  unsigned threads = 1;
};

/// sum_{r <= rmax, (r,B)=1} max_{2 <= u <= U} max_{(b,r)=1} |pi(u;r,b) - li(u)/phi(r)|.
///
/// pi(.; r, b) is a step function and li is increasing, so on every step the
/// difference is monotone and its extremes sit at the step ends. Only the
/// primes of each class and the endpoint U are visited.
DiscrepancyReport bv_discrepancy(const BvConfig& config);

struct DeltaReport {
  double value;
  Rational exact_factor;  // delta / ln x
  double ln_x;
  std::uint64_t k;
  std::uint64_t count_A;
  std::vector<std::uint64_t> count_P;
  bool exceeds_one_eighth;
  std::optional<double> inverse_ln_k;  // absent for k = 1
  std::optional<bool> exceeds_inverse_ln_k;
};

/// delta = (1/k) (phi(B)/B) sum_i (phi(a_i)/a_i) #P_{L_i,A}(x) ln x / #A(x)
DeltaReport delta_statistic(const WindowSet& window, std::span<const LinearForm> forms, std::uint64_t B);
DeltaReport delta_statistic(const WindowSet& window, const TupleSet& tuple, std::uint64_t B);

struct BChoice {
  std::uint64_t B;
  double threshold;  // 0.9 ln ln x
  bool exceptional_branch_evaluated = false;
};

// Smallest prime strictly greater than 0.9 ln ln x; x > e.
BChoice choose_B(double x);

}  // namespace tuplecraft
