#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ordtope/codes.hpp"
#include "ordtope/numeric.hpp"

namespace ordtope {

struct OrderEntry {
  std::size_t rank = 0;
  FixedLog value;
  std::vector<unsigned> preimage;
};

// The sorted rank structure Or(.) of a code family. Ties break by preimage
// lexicographic order so exports are reproducible.
struct OrderCurve {
  std::vector<OrderEntry> entries;
};

OrderCurve order_curve(std::vector<std::pair<FixedLog, std::vector<unsigned>>> codes);
OrderCurve order_curve(const std::vector<LCode>& codes);

// Successive value differences of the curve.
std::vector<FixedLog> finite_differences(const OrderCurve& curve);

// True iff all finite differences are equal (the values form an arithmetic
// progression, the normalizable-to-1 compact order).
bool is_compact_order(const OrderCurve& curve);

// rank,value_mantissa,digits,preimage rows; preimage exponents joined by '_'.
std::string order_curve_csv(const OrderCurve& curve);

enum class RankStrategy { Enumerate, MeetInTheMiddle };

// Rank oracle over the bounded-exponent domain a in {0..k}^n of a prime
// basis: rank(v) = |{codes with value < v}|. Enumerate materializes the
// sorted family; MeetInTheMiddle keeps two sorted half tables and counts per
// query in O(2^(n/2) log 2^(n/2)). Read-only after construction.
class RankOracle {
 public:
  RankOracle(const PrimeBasis& basis, std::size_t n, unsigned k, RankStrategy strategy,
             int digits = 0,  // 0: use required_digits(basis, n, k)
             std::size_t budget = kDefaultBudget);

  std::size_t size() const { return total_; }
  int digits() const { return digits_; }
  std::size_t length() const { return n_; }
  unsigned max_exponent() const { return k_; }
  RankStrategy strategy() const { return strategy_; }
  const PrimeBasis& basis() const { return basis_; }

  std::size_t rank(const FixedLog& value) const;
  std::size_t rank_at_infinity() const { return total_; }

  // Unranking: the value/preimage at a given 0-based rank, resolved by binary
  // search over the mantissa range with rank calls.
  FixedLog value_at(std::size_t rank) const;
  std::vector<unsigned> preimage_at(std::size_t rank) const;
  std::optional<std::vector<unsigned>> preimage_of(const FixedLog& value) const;

  FixedLog max_value() const { return FixedLog(mpz_class(static_cast<long>(max_sum_)), digits_); }

 private:
  std::size_t count_lt(std::int64_t mantissa) const;
  std::size_t count_eq(std::int64_t mantissa) const;
  // exact count of codes strictly below an arbitrary-precision value
  std::size_t count_below(const FixedLog& value) const;
  std::vector<unsigned> unpack(std::uint64_t packed) const;

  PrimeBasis basis_;
  std::size_t n_ = 0;
  unsigned k_ = 0;
  int digits_ = 0;
  RankStrategy strategy_ = RankStrategy::Enumerate;
  std::size_t total_ = 0;
  std::int64_t max_sum_ = 0;
  std::vector<std::int64_t> mantissas_;
  // enumerate: the full family; mitm: two halves (packed exponents in the
  // second member, mixed radix k+1)
  std::vector<std::pair<std::int64_t, std::uint64_t>> table_;
  std::vector<std::pair<std::int64_t, std::uint64_t>> half_lo_, half_hi_;
  std::size_t split_ = 0;
};

struct SearchResult {
  std::optional<std::vector<unsigned>> preimage;
  std::size_t comparisons = 0;
};

// Binary search on rank space: bisect [0, N), materialize the probed rank by
// unranking, compare against the target. Comparison count (target vs
// materialized values) is at most ceil(log2 N) + 2.
SearchResult order_search(const FixedLog& target, const RankOracle& oracle);

// Linear-scan baseline; probes counts value comparisons until a hit (or N on
// a miss).
struct ScanResult {
  std::optional<std::vector<unsigned>> preimage;
  std::size_t probes = 0;
};
ScanResult linear_scan_search(const FixedLog& target, const RankOracle& oracle);

// Exact count of m in [1, n] divisible by none of the primes
// (inclusion-exclusion). The Euler-style product formula
// n * prod (1 - 1/p_i) matches it exactly when every p_i divides n.
std::uint64_t count_coprime(std::uint64_t n, const std::vector<std::uint64_t>& primes);
mpq_class totient_formula(std::uint64_t n, const std::vector<std::uint64_t>& primes);

}  // namespace ordtope
