#include "doctest.h"
#include "oracles.hpp"

#include "tuplecraft/census.hpp"
#include "tuplecraft/errors.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace tuplecraft;

namespace {

TupleSet twins() { return TupleSet({{1, 0}, {1, 2}}); }

}  // namespace

TEST_CASE("count_prime_hits") {
  CHECK(count_prime_hits(twins(), 11) == 2);
  CHECK(count_prime_hits(twins(), 10) == 0);
  CHECK(count_prime_hits(TupleSet({{2, 1}}), 1) == 1);
  // n + 4 and 2n + 1 both equal 7 at n = 3: one distinct prime value
  CHECK(count_prime_hits(TupleSet({{1, 4}, {2, 1}}), 3) == 1);
  CHECK(count_prime_hits(TupleSet({{1, -20}}), 5) == 0);
}

TEST_CASE("tuple_census examples") {
  const auto r = tuple_census(twins(), 10, 2, 2);
  CHECK(r.count == 2);
  CHECK(r.histogram[2] == 2);
  CHECK(tuple_census(twins(), 10, 2, 0).count == 10);
  CHECK(tuple_census(twins(), 10, 2, 3).count == 0);
  CHECK_THROWS_AS(tuple_census(twins(), 1, 2, 1), DomainError);
  CHECK_THROWS_AS(tuple_census(twins(), 10, 4, 1), DomainError);
  CHECK_THROWS_AS(tuple_census(TupleSet({{4, 1}}), INT64_MAX / 4, 3, 1), UnsupportedRange);
  CHECK_THROWS_AS(tuple_census(twins(), INT64_MAX / 2, 3, 1), UnsupportedRange);
}

TEST_CASE("census invariants") {
  const auto r = tuple_census(TupleSet({{1, 0}, {1, 2}, {1, 6}, {2, 1}}), 5000, 3, 1);
  CHECK(std::accumulate(r.histogram.begin(), r.histogram.end(), std::uint64_t{0}) == r.window_length());
  CHECK(r.window_length() == 10000);
  std::uint64_t prev = r.window_length() + 1;
  for (std::uint64_t m = 0; m <= 5; ++m) {
    const auto c = tuple_census(TupleSet({{1, 0}, {1, 2}, {1, 6}, {2, 1}}), 5000, 3, m).count;
    CHECK(c <= prev);
    prev = c;
  }
  CHECK(prev == 0);
}

TEST_CASE("histogram weight equals per-form prime counts for non-coinciding forms") {
  const auto r = tuple_census(twins(), 20000, 2, 1);
  std::uint64_t weighted = 0;
  for (std::size_t h = 0; h < r.histogram.size(); ++h) weighted += h * r.histogram[h];
  const auto sieve = oracle::naive_sieve(50000);
  std::uint64_t per_form = 0;
  for (std::int64_t n = 20000; n < 40000; ++n) per_form += sieve[static_cast<std::size_t>(n)] + sieve[static_cast<std::size_t>(n + 2)];
  CHECK(weighted == per_form);
  CHECK(r.coincidences == 0);
}

TEST_CASE("census agrees with the brute-force oracle") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = 1 + rng() % 5;
    std::vector<LinearForm> forms;
    while (forms.size() < k) {
      LinearForm f{1 + static_cast<std::int64_t>(rng() % 6), static_cast<std::int64_t>(rng() % 61) - 30};
      if (std::find(forms.begin(), forms.end(), f) == forms.end()) forms.push_back(f);
    }
    const TupleSet t(forms);
    const std::int64_t x = 2 + static_cast<std::int64_t>(rng() % 3000);
    const int span = 2 + static_cast<int>(rng() % 2);
    const std::uint64_t m = rng() % (k + 1);
    const auto r = tuple_census(t, x, span, m);
    const auto o = oracle::brute_census(t, x, span * x, m);
    REQUIRE(r.count == o.count);
    REQUIRE(r.histogram == o.histogram);
  }
}

TEST_CASE("coinciding values are counted once") {
  // n + 4 = 2n + 1 at n = 3 (value 7); 3n - 2 = 2n + 1 at n = 3 too
  const TupleSet t({{1, 4}, {2, 1}, {3, -2}});
  const auto r = census_window(t, 0, 50, 1);
  const auto o = oracle::brute_census(t, 0, 50, 1);
  CHECK(r.histogram == o.histogram);
  CHECK(r.coincidences == 1);
}

TEST_CASE("parallel census equals sequential") {
  const TupleSet t({{1, 0}, {1, 2}, {1, 6}, {3, 1}});
  const auto seq = tuple_census(t, 300000, 2, 2, {1, false});
  const auto par = tuple_census(t, 300000, 2, 2, {4, false});
  CHECK(seq == par);
}

TEST_CASE("closed endpoint window") {
  const auto open = tuple_census(twins(), 10, 2, 0);
  const auto closed = tuple_census(twins(), 10, 2, 0, {1, true});
  CHECK(open.end == 20);
  CHECK(closed.end == 19);
  CHECK(closed.count == 9);
}

TEST_CASE("theorem bound and threshold") {
  CHECK(theorem_bound(1000, 2, 1) == doctest::Approx(2.8362019374227723).epsilon(1e-12));
  CHECK(theorem_bound(1e4, 2, 1) > theorem_bound(1e3, 2, 1));
  CHECK(theorem_threshold(8, 1.0) == 3);
  CHECK(theorem_threshold(1, 1.0) == 0);
  CHECK_THROWS_AS(theorem_bound(1.0, 2, 1), DomainError);
  CHECK_THROWS_AS(theorem_bound(10.0, 2, 0), DomainError);
}

TEST_CASE("corollary1_tuple") {
  std::vector<std::int64_t> a{1, 4, 6};
  CHECK(corollary1_tuple(a) == TupleSet({{1, -1}, {1, -4}, {1, -6}}));
  std::vector<std::int64_t> dup{2, 2};
  CHECK_THROWS_AS(corollary1_tuple(dup), DomainError);
  std::vector<std::int64_t> out{5, 50};
  CHECK_THROWS_AS(corollary1_tuple(out, 10), DomainError);

  std::vector<std::int64_t> two{2};
  const auto r = tuple_census(corollary1_tuple(two, 10), 10, 3, 1);
  CHECK(r.count == oracle::brute_census(corollary1_tuple(two, 10), 10, 30, 1).count);
  CHECK(r.count == 5);
}

TEST_CASE("shifted tuple census equals census of the original on the shifted window") {
  std::vector<std::int64_t> a{3, 10, 17, 40};
  const auto L = corollary1_tuple(a, 50);
  const auto s = shift_to_positive(L);
  for (std::uint64_t m = 0; m <= 4; ++m) {
    auto f = census_window(s.forms, 50, 100, m);
    auto l = census_window(L, 50 + s.shift, 100 + s.shift, m);
    CHECK(f.histogram == l.histogram);
    CHECK(f.count == l.count);
  }
}
