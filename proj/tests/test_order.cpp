#include <doctest.h>

#include <algorithm>
#include <vector>

#include "ordtope/order.hpp"
#include "ordtope/rng.hpp"

using namespace ordtope;

namespace {

FixedLog fx(long mantissa, int digits) { return FixedLog(mpz_class(mantissa), digits); }

std::vector<unsigned> bits(unsigned mask, std::size_t n) {
  std::vector<unsigned> a(n, 0);
  for (std::size_t i = 0; i < n; ++i) a[i] = (mask >> i) & 1u;
  return a;
}

OrderCurve curve_of(std::vector<std::pair<FixedLog, std::vector<unsigned>>> codes) {
  return order_curve(std::move(codes));
}

}  // namespace

TEST_SUITE("order") {

TEST_CASE("order_curve sorts the subset family") {
  PrimeBasis b = gen_primes(3);
  std::vector<std::pair<FixedLog, std::vector<unsigned>>> codes;
  for (unsigned mask = 0; mask < 8; ++mask)
    codes.emplace_back(l_encode(bits(mask, 3), b, 6).sum, bits(mask, 3));
  OrderCurve curve = order_curve(std::move(codes));
  // sorted preimages: {}, {2}, {3}, {5}, {2,3}, {2,5}, {3,5}, {2,3,5}
  std::vector<std::vector<unsigned>> expect{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                                            {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  REQUIRE(curve.entries.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(curve.entries[i].rank == i);
    CHECK(curve.entries[i].preimage == expect[i]);
  }
}

TEST_CASE("order_curve of a singleton") {
  OrderCurve curve = curve_of({{fx(5, 1), {1}}});
  REQUIRE(curve.entries.size() == 1);
  CHECK(curve.entries[0].rank == 0);
}

TEST_CASE("permutation g-codes sort into the stated order") {
  PrimeBasis b = gen_primes(3);
  std::vector<std::vector<unsigned>> perms{{1, 2, 3}, {1, 3, 2}, {2, 1, 3},
                                           {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
  std::vector<std::pair<FixedLog, std::vector<unsigned>>> codes;
  for (const auto& p : perms) {
    // integer values wrapped exactly as one-digit fixed point
    codes.emplace_back(FixedLog(g_encode(p, b).value * 10, 1), p);
  }
  OrderCurve curve = order_curve(std::move(codes));
  std::vector<long> values;
  std::vector<std::vector<unsigned>> preimages;
  for (const auto& e : curve.entries) {
    values.push_back(e.value.mantissa().get_si() / 10);
    preimages.push_back(e.preimage);
  }
  CHECK(values == std::vector<long>{360, 540, 600, 1350, 1500, 2250});
  CHECK(preimages == std::vector<std::vector<unsigned>>{{3, 2, 1}, {2, 3, 1}, {3, 1, 2},
                                                        {1, 3, 2}, {2, 1, 3}, {1, 2, 3}});
}

TEST_CASE("ties break by preimage lexicographic order") {
  OrderCurve curve = curve_of({{fx(7, 1), {2, 1}}, {fx(7, 1), {1, 2}}, {fx(3, 1), {9, 9}}});
  CHECK(curve.entries[0].preimage == std::vector<unsigned>{9, 9});
  CHECK(curve.entries[1].preimage == std::vector<unsigned>{1, 2});
  CHECK(curve.entries[2].preimage == std::vector<unsigned>{2, 1});
}

TEST_CASE("order-curve CSV is stable") {
  PrimeBasis b = gen_primes(2);
  OrderCurve curve = curve_of({{l_encode({1, 0}, b, 3).sum, {1, 0}},
                                  {l_encode({0, 0}, b, 3).sum, {0, 0}}});
  CHECK(order_curve_csv(curve) == "0,0,3,0_0\n1,301,3,1_0\n");
}

TEST_CASE("rank counts codes strictly below") {
  PrimeBasis b = gen_primes(3);
  RankOracle oracle(b, 3, 1, RankStrategy::Enumerate);
  CHECK(oracle.rank(fx(0, 1)) == 0);
  CHECK(oracle.rank_at_infinity() == 8);
  FixedLog v = l_encode({0, 1, 0}, b, oracle.digits()).sum;  // {3}
  CHECK(oracle.rank(v) == 2);  // {} and {2} lie below
}

TEST_CASE("meet-in-the-middle rank equals enumeration rank") {
  PrimeBasis b = gen_primes(8);
  RankOracle enumerate(b, 8, 1, RankStrategy::Enumerate);
  RankOracle mitm(b, 8, 1, RankStrategy::MeetInTheMiddle);
  CHECK(enumerate.digits() == mitm.digits());
  Rng rng(5);
  std::int64_t top = enumerate.max_value().mantissa().get_si() + 10;
  for (int t = 0; t < 200; ++t) {
    FixedLog probe = fx(static_cast<long>(rng.below(static_cast<std::uint64_t>(top))), enumerate.digits());
    CHECK(enumerate.rank(probe) == mitm.rank(probe));
  }
}

TEST_CASE("unranking inverts rank") {
  PrimeBasis b = gen_primes(6);
  for (RankStrategy strategy : {RankStrategy::Enumerate, RankStrategy::MeetInTheMiddle}) {
    RankOracle oracle(b, 6, 1, strategy);
    for (std::size_t r = 0; r < oracle.size(); ++r) {
      FixedLog v = oracle.value_at(r);
      CHECK(oracle.rank(v) == r);
      CHECK(l_encode(oracle.preimage_at(r), b, oracle.digits()).sum == v);
    }
  }
}

TEST_CASE("order_search finds targets within the comparison bound") {
  PrimeBasis b = gen_primes(3);
  RankOracle oracle(b, 3, 1, RankStrategy::Enumerate);
  int d = oracle.digits();

  FixedLog target = l_encode({1, 1, 0}, b, d).sum;  // {2,3}
  SearchResult hit = order_search(target, oracle);
  REQUIRE(hit.preimage.has_value());
  CHECK(*hit.preimage == std::vector<unsigned>{1, 1, 0});
  CHECK(hit.comparisons <= 5);  // ceil(log2 8) + 2

  SearchResult zero = order_search(fx(0, d), oracle);
  REQUIRE(zero.preimage.has_value());
  CHECK(*zero.preimage == std::vector<unsigned>{0, 0, 0});

  SearchResult miss = order_search(FixedLog::from_string("0.5", 6), oracle);
  CHECK_FALSE(miss.preimage.has_value());
}

TEST_CASE("search comparison bound holds across the family") {
  PrimeBasis b = gen_primes(10);
  RankOracle oracle(b, 10, 1, RankStrategy::MeetInTheMiddle);
  Rng rng(17);
  for (int t = 0; t < 64; ++t) {
    std::size_t r = static_cast<std::size_t>(rng.below(oracle.size()));
    SearchResult result = order_search(oracle.value_at(r), oracle);
    REQUIRE(result.preimage.has_value());
    CHECK(result.comparisons <= 12);  // ceil(log2 1024) + 2
  }
}

TEST_CASE("linear scan baseline agrees with order_search") {
  PrimeBasis b = gen_primes(6);
  RankOracle oracle(b, 6, 1, RankStrategy::Enumerate);
  Rng rng(19);
  for (int t = 0; t < 20; ++t) {
    std::size_t r = static_cast<std::size_t>(rng.below(oracle.size()));
    FixedLog target = oracle.value_at(r);
    ScanResult scan = linear_scan_search(target, oracle);
    SearchResult search = order_search(target, oracle);
    REQUIRE(scan.preimage.has_value());
    REQUIRE(search.preimage.has_value());
    CHECK(l_encode(*scan.preimage, b, oracle.digits()).sum ==
          l_encode(*search.preimage, b, oracle.digits()).sum);
  }
}

TEST_CASE("count_coprime by inclusion-exclusion") {
  CHECK(count_coprime(30, {2, 3, 5}) == 8);  // {1,7,11,13,17,19,23,29}
  CHECK(totient_formula(30, {2, 3, 5}) == 8);
  CHECK(count_coprime(10, {}) == 10);
  CHECK(count_coprime(7, {2}) == 4);  // {1,3,5,7}
  CHECK(totient_formula(7, {2}) == mpq_class(7, 2));  // 3.5: the formula differs when 2 does not divide 7

  // exhaustive cross-check oracle
  Rng rng(29);
  std::vector<std::uint64_t> pool{2, 3, 5, 7, 11, 13};
  for (int t = 0; t < 50; ++t) {
    std::uint64_t n = 1 + rng.below(1000);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p : pool)
      if (rng.below(2) && primes.size() < 4) primes.push_back(p);
    std::uint64_t brute = 0;
    for (std::uint64_t m = 1; m <= n; ++m) {
      bool coprime = true;
      for (std::uint64_t p : primes)
        if (m % p == 0) coprime = false;
      if (coprime) ++brute;
    }
    CHECK(count_coprime(n, primes) == brute);
  }
}

TEST_CASE("finite differences and compact orders") {
  OrderCurve curve = curve_of({{fx(0, 3), {0}}, {fx(301, 3), {1}}, {fx(477, 3), {2}}});
  auto diffs = finite_differences(curve);
  REQUIRE(diffs.size() == 2);
  CHECK(diffs[0].mantissa() == 301);
  CHECK(diffs[1].mantissa() == 176);

  OrderCurve constant = curve_of({{fx(4, 1), {0}}, {fx(4, 1), {1}}, {fx(4, 1), {2}}});
  for (const auto& d : finite_differences(constant)) CHECK(d.is_zero());
  CHECK(is_compact_order(constant));

  OrderCurve arith = curve_of({{fx(3, 1), {0}}, {fx(5, 1), {1}}, {fx(7, 1), {2}}, {fx(9, 1), {3}}});
  CHECK(is_compact_order(arith));
  for (const auto& d : finite_differences(arith)) CHECK(d > fx(0, 1));

  OrderCurve uneven = curve_of({{fx(0, 1), {0}}, {fx(10, 1), {1}}, {fx(30, 1), {2}}});
  CHECK_FALSE(is_compact_order(uneven));

  // the subset-sum curve of (2,3,5) is not compact
  PrimeBasis b = gen_primes(3);
  std::vector<std::pair<FixedLog, std::vector<unsigned>>> codes;
  for (unsigned mask = 0; mask < 8; ++mask)
    codes.emplace_back(l_encode(bits(mask, 3), b, 6).sum, bits(mask, 3));
  CHECK_FALSE(is_compact_order(order_curve(std::move(codes))));
}

TEST_CASE("oracle rejects over-budget domains") {
  PrimeBasis b = gen_primes(31);
  CHECK_THROWS_AS(RankOracle(b, 31, 1, RankStrategy::Enumerate), Error);
}

TEST_CASE("order_curve ranks form a permutation") {
  Rng rng(37);
  std::vector<std::pair<FixedLog, std::vector<unsigned>>> codes;
  for (unsigned i = 0; i < 50; ++i)
    codes.emplace_back(fx(static_cast<long>(rng.below(1000)), 3), std::vector<unsigned>{i});
  OrderCurve curve = order_curve(std::move(codes));
  for (std::size_t i = 0; i < curve.entries.size(); ++i) CHECK(curve.entries[i].rank == i);
  for (std::size_t i = 1; i < curve.entries.size(); ++i)
    CHECK(curve.entries[i - 1].value <= curve.entries[i].value);
}

}  // TEST_SUITE
