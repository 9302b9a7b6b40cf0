#include "doctest.h"
#include "oracles.hpp"

#include "tuplecraft/audit.hpp"
#include "tuplecraft/core_arith.hpp"
#include "tuplecraft/errors.hpp"

#include <cmath>
#include <numeric>

using namespace tuplecraft;

namespace {

// Independent double-loop evaluation of sum_q max_a |#A(x;q,a) - #A(x)/q|.
Rational brute_hyp1(const std::vector<std::int64_t>& members, std::uint64_t Q) {
  Rational total = 0;
  const auto n = static_cast<std::int64_t>(members.size());
  for (std::uint64_t q = 1; q <= Q; ++q) {
    Rational best = 0;
    for (std::uint64_t a = 0; a < q; ++a) {
      std::int64_t c = 0;
      for (auto m : members) c += (static_cast<std::uint64_t>(m) % q == a);
      Rational d = Rational(c) - Rational(n) / Rational(BigInt(q));
      if (d < 0) d = -d;
      if (d > best) best = d;
    }
    total += best;
  }
  return total;
}

std::vector<std::int64_t> range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(hi - lo));
  std::iota(v.begin(), v.end(), lo);
  return v;
}

}  // namespace

TEST_CASE("window counts") {
  const auto nat = WindowSet::naturals(100);
  CHECK(nat.count() == 100);
  std::uint64_t mx = 0;
  for (std::int64_t a = 0; a < 7; ++a) {
    const auto c = nat.count_ap(7, a);
    CHECK((c == 14 || c == 15));
    mx = std::max(mx, c);
  }
  CHECK(mx == 15);
  const auto ex = WindowSet::from_members({4, 16, 256, 16}, 10);
  CHECK(ex.count() == 1);
  CHECK(ex.members().size() == 1);
  CHECK(ex.count_ap(5, 1) == 1);
  CHECK(ex.count_ap(5, -4) == 1);
}

TEST_CASE("count_P_LA examples") {
  const auto nat = WindowSet::naturals(10);
  CHECK(count_P_LA(nat, {1, 1}) == 4);
  CHECK(count_P_LA(nat, {2, 1}, std::pair<std::uint64_t, std::int64_t>{2, 1}) == 2);
  CHECK(count_P_LA(nat, {2, 4}) == 0);
  CHECK(prime_image_members(nat, {1, 1}) == std::vector<std::int64_t>{10, 12, 16, 18});
}

TEST_CASE("count_P_LA for naturals equals the prime-count difference") {
  const auto sieve = oracle::naive_sieve(200000);
  for (LinearForm L : {LinearForm{1, 1}, LinearForm{2, 1}, LinearForm{3, 2}, LinearForm{6, 7}}) {
    const std::int64_t x = 10000;
    const auto nat = WindowSet::naturals(x);
    std::uint64_t expected = 0;
    for (std::int64_t v = L.a * x + L.b; v < 2 * L.a * x + L.b; v += L.a) expected += sieve[static_cast<std::size_t>(v)];
    CHECK(count_P_LA(nat, L) == expected);
    const auto ex = WindowSet::from_members(range(x, 2 * x), x);
    CHECK(count_P_LA(ex, L) == expected);
  }
}

TEST_CASE("hyp1") {
  const auto r = hyp1_sum(WindowSet::naturals(100), 4);
  REQUIRE(r.exact_total);
  CHECK(*r.exact_total == Rational(2) / 3);
  CHECK(*r.exact_total == brute_hyp1(range(100, 200), 4));
  CHECK(r.terms.size() == 4);

  const auto single = hyp1_sum(WindowSet::from_members({5}, 4), 2);
  CHECK(*single.terms[1].exact == Rational(1) / 2);

  const std::vector<std::int64_t> members{1009, 1013, 1100, 1234, 1500, 1777, 1999, 2000, 2001};
  const auto w = WindowSet::from_members(members, 1000);
  std::vector<std::int64_t> kept{1009, 1013, 1100, 1234, 1500, 1777, 1999};
  CHECK(*hyp1_sum(w, 12).exact_total == brute_hyp1(kept, 12));
}

TEST_CASE("hyp1 naturals bound") {
  const std::int64_t x = 3000;
  const auto r = hyp1_sum(WindowSet::naturals(x), 14, 1, 2);
  Rational sum = 0;
  for (const auto& t : r.terms) {
    CHECK(*t.exact <= 1);
    CHECK(*t.exact >= 0);
    sum += *t.exact;
  }
  CHECK(sum == *r.exact_total);
  CHECK(*r.exact_total <= 14);
}

TEST_CASE("hyp2") {
  const auto nat = WindowSet::naturals(100);
  const auto r = hyp2_sum(nat, {1, 1}, 5, 4);
  REQUIRE(r.exact_total);
  CHECK(*r.exact_total == 1);
  CHECK(*r.terms.front().exact == 0);

  const auto skip = hyp2_sum(nat, {1, 1}, 3, 9);
  std::vector<std::uint64_t> qs;
  for (const auto& t : skip.terms) qs.push_back(t.q);
  CHECK(qs == std::vector<std::uint64_t>{1, 2, 4, 5, 7, 8});
}

TEST_CASE("hyp2 against enumeration") {
  const std::int64_t x = 2000;
  const auto nat = WindowSet::naturals(x);
  const LinearForm L{3, 2};
  const auto sieve = oracle::naive_sieve(20000);
  std::vector<std::int64_t> hits;
  for (std::int64_t n = x; n < 2 * x; ++n)
    if (sieve[static_cast<std::size_t>(3 * n + 2)]) hits.push_back(n);
  Rational total = 0;
  for (std::uint64_t q = 1; q <= 20; ++q) {
    if (q % 7 == 0) continue;
    std::uint64_t coprime_aq = 0;
    for (std::uint64_t r = 1; r <= 3 * q; ++r) coprime_aq += std::gcd(r, 3 * q) == 1;
    const Rational expected = Rational(BigInt(hits.size())) / Rational(BigInt(coprime_aq / 2));
    Rational best = 0;
    for (std::uint64_t a = 0; a < q; ++a) {
      if (std::gcd((3 * a + 2) % q, q) != 1 && q != 1) continue;
      std::int64_t c = 0;
      for (auto n : hits) c += static_cast<std::uint64_t>(n) % q == a;
      Rational d = Rational(c) - expected;
      if (d < 0) d = -d;
      if (d > best) best = d;
    }
    total += best;
  }
  CHECK(*hyp2_sum(nat, L, 7, 20).exact_total == total);
}

TEST_CASE("hyp3") {
  const auto nat = WindowSet::naturals(100);
  const auto c = hyp3_concentration(nat, 7);
  CHECK(c.max_count == 15);
  CHECK(c.ratio == Rational(105, 100));
  const auto one = hyp3_concentration(nat, 1);
  CHECK(one.max_count == 100);
  CHECK(one.ratio == 1);
  CHECK_THROWS_AS(hyp3_concentration(nat, 0), DomainError);
  CHECK_THROWS_AS(hyp3_concentration(WindowSet::from_members({}, 10), 3), DomainError);

  const std::int64_t x = 1000;
  const auto w = WindowSet::naturals(x);
  for (std::uint64_t q = 1; q <= 1000; q += 37) {
    const auto cq = hyp3_concentration(w, q);
    CHECK(Rational(BigInt(cq.max_count)) <= Rational(x) / Rational(BigInt(q)) + 1);
    CHECK(cq.ratio <= 2);
  }
  const auto rep = hyp3_report(w, 10);
  CHECK(rep.terms.size() == 10);
}

TEST_CASE("bv examples") {
  BvConfig cfg;
  cfg.rmax = 1;
  cfg.B = 2;
  cfg.U = 100;
  const auto r = bv_discrepancy(cfg);
  CHECK(r.total == doctest::Approx(4.20854260995978307).epsilon(1e-10));
  cfg.scan = UScan::real;
  CHECK(bv_discrepancy(cfg).total == doctest::Approx(4.42738318240539108).epsilon(1e-10));

  cfg.scan = UScan::integer;
  cfg.rmax = 12;
  const auto even = bv_discrepancy(cfg);
  for (const auto& t : even.terms) CHECK(t.q % 2 == 1);
  CHECK_THROWS_AS(bv_discrepancy({0, 1, 2, 2, UScan::integer, 1}), DomainError);
}

TEST_CASE("bv scan equals brute force over integer u") {
  const std::uint64_t U = 3000;
  const auto sieve = oracle::naive_sieve(U);
  const auto li = oracle::li_integer_table(U);
  for (std::uint64_t r = 1; r <= 12; ++r) {
    BvConfig cfg{0, r, 13, U, UScan::integer, 1};
    const auto rep = bv_discrepancy(cfg);
    const double expected = oracle::brute_bv_term(r, U, sieve, li);
    REQUIRE(rep.terms.back().q == r);
    CHECK(rep.terms.back().value == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("bv parallel equals sequential") {
  BvConfig a{0, 30, 7, 20000, UScan::integer, 1};
  BvConfig b = a;
  b.threads = 3;
  const auto ra = bv_discrepancy(a);
  const auto rb = bv_discrepancy(b);
  REQUIRE(ra.terms.size() == rb.terms.size());
  for (std::size_t i = 0; i < ra.terms.size(); ++i) {
    CHECK(ra.terms[i].value == rb.terms[i].value);
    CHECK(ra.terms[i].worst_a == rb.terms[i].worst_a);
  }
  CHECK(ra.total == rb.total);
}

TEST_CASE("delta statistic") {
  const std::int64_t x = 10000;
  const auto sieve = oracle::naive_sieve(2 * x + 1);
  std::uint64_t diff = 0;
  for (std::int64_t v = x + 1; v <= 2 * x; ++v) diff += sieve[static_cast<std::size_t>(v)];
  const auto d = delta_statistic(WindowSet::naturals(x), TupleSet({{1, 1}}), 5);
  const double expected = 0.8 * static_cast<double>(diff) * std::log(static_cast<double>(x)) / static_cast<double>(x);
  CHECK(d.value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(d.exact_factor == Rational(4, 5) * Rational(BigInt(diff)) / Rational(x));
  CHECK(d.exceeds_one_eighth);
  CHECK(!d.inverse_ln_k);

  const std::vector<LinearForm> twice{{1, 1}, {1, 1}};
  CHECK(delta_statistic(WindowSet::naturals(x), twice, 5).value == doctest::Approx(d.value).epsilon(1e-14));

  const auto b2 = delta_statistic(WindowSet::naturals(x), TupleSet({{1, 1}}), 2);
  CHECK(b2.exact_factor * Rational(8, 5) == d.exact_factor);

  CHECK_THROWS_AS(delta_statistic(WindowSet::from_members({}, 100), TupleSet({{1, 1}}), 5), DomainError);
  CHECK_THROWS_AS(delta_statistic(WindowSet::naturals(2), TupleSet({{1, 1}}), 5), DomainError);

  const auto pair = delta_statistic(WindowSet::naturals(x), TupleSet({{1, 1}, {2, 1}}), 3);
  REQUIRE(pair.inverse_ln_k);
  CHECK(*pair.inverse_ln_k == doctest::Approx(1 / std::log(2.0)));
  CHECK(pair.count_P.size() == 2);
}

TEST_CASE("choose_B") {
  const auto b6 = choose_B(1e6);
  CHECK(b6.B == 3);
  CHECK(b6.threshold == doctest::Approx(2.363).epsilon(1e-3));
  CHECK(choose_B(1e100).B == 5);
  CHECK(choose_B(std::exp(std::exp(1.0)) * 1.01).B == 2);
  CHECK(!b6.exceptional_branch_evaluated);
  CHECK_THROWS_AS(choose_B(2.5), DomainError);
}

TEST_CASE("audit config") {
  const auto c = make_audit_config(10000, 1.0 / 3, 5, 1);
  CHECK(c.Q == 21);
  CHECK(floor_power(1000, 1.0 / 3) == 10);
  CHECK_THROWS_AS(make_audit_config(10000, 1.5, 5, 1), DomainError);
  CHECK_THROWS_AS(make_audit_config(10000, 0.3, 4, 1), DomainError);
}
