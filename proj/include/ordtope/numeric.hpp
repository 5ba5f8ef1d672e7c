#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ordtope/errors.hpp"

namespace ordtope {

inline constexpr int kDefaultDigits = 12;
inline constexpr std::size_t kDefaultBudget = std::size_t{1} << 20;

// Fixed-point decimal: value = mantissa * 10^-digits, digits >= 1.
// Addition and subtraction at equal precision are exact integer arithmetic;
// mixed precisions are first raised to the larger (exact) scale.
class FixedLog {
 public:
  FixedLog() : mantissa_(0), digits_(1) {}
  FixedLog(mpz_class mantissa, int digits);

  const mpz_class& mantissa() const { return mantissa_; }
  int digits() const { return digits_; }
  bool is_zero() const { return mantissa_ == 0; }

  // Exact when raising precision; truncates toward zero when lowering.
  FixedLog rescaled(int digits) const;
  // Exact scaling by a natural number (exponent weights).
  FixedLog scaled(unsigned long factor) const;

  std::string to_string() const;
  double to_double() const;

  // Parses "12.345" / "-0.5" into an exact fixed-point value at `digits`,
  // truncating extra fraction digits toward zero.
  static FixedLog from_string(const std::string& text, int digits);

  friend FixedLog operator+(const FixedLog& a, const FixedLog& b);
  friend FixedLog operator-(const FixedLog& a, const FixedLog& b);

 private:
  mpz_class mantissa_;
  int digits_;
};

// Exact cross-precision comparison: sign of a - b.
int compare(const FixedLog& a, const FixedLog& b);

inline bool operator==(const FixedLog& a, const FixedLog& b) { return compare(a, b) == 0; }
inline bool operator!=(const FixedLog& a, const FixedLog& b) { return compare(a, b) != 0; }
inline bool operator<(const FixedLog& a, const FixedLog& b) { return compare(a, b) < 0; }
inline bool operator<=(const FixedLog& a, const FixedLog& b) { return compare(a, b) <= 0; }
inline bool operator>(const FixedLog& a, const FixedLog& b) { return compare(a, b) > 0; }
inline bool operator>=(const FixedLog& a, const FixedLog& b) { return compare(a, b) >= 0; }

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

// floor-to-D-digits of log10(x), truncated toward zero. The D-digit prefix is
// certified by directed-rounding interval evaluation at widening precision,
// so results are bit-exact across platforms.
FixedLog log_floor(std::uint64_t x, int digits);
FixedLog log_floor(const mpq_class& x, int digits);

// Ordered primes p_1 < ... < p_m with their truncated logs at a shared
// precision. Immutable after construction.
class PrimeBasis {
 public:
  PrimeBasis() = default;

  std::size_t size() const { return primes_.size(); }
  std::uint64_t prime(std::size_t i) const { return primes_[i]; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  const FixedLog& log(std::size_t i) const { return logs_[i]; }
  const std::vector<FixedLog>& logs() const { return logs_; }
  int digits() const { return digits_; }

  PrimeBasis with_digits(int digits) const;

  // Wraps an explicit prime list; every element must pass is_prime.
  static PrimeBasis from_primes(std::vector<std::uint64_t> primes, int digits = kDefaultDigits);

 private:
  std::vector<std::uint64_t> primes_;
  std::vector<FixedLog> logs_;
  int digits_ = kDefaultDigits;
};

// First m primes.
PrimeBasis gen_primes(std::size_t m, int digits = kDefaultDigits);
// First m primes in the arithmetic progression a, a+d, a+2d, ...; requires
// gcd(a, d) = 1.
PrimeBasis gen_primes(std::size_t m, std::uint64_t a, std::uint64_t d, int digits = kDefaultDigits);

// Smallest D such that the (k+1)^n truncated l-code sums over exponent
// vectors {0..k}^n are pairwise more than n*k ulps apart. That margin keeps
// the truncated sums in the same order as the exact logarithms, so sorting
// l-codes at this precision reproduces the g-code order. Found by brute-force
// enumeration while (k+1)^n <= budget; past the budget the caller must supply
// the minimum exact pairwise gap, which feeds the bound
// D >= ceil(log10(n*k / min_gap)).
int required_digits(const PrimeBasis& basis, std::size_t n, unsigned k,
                    std::size_t budget = kDefaultBudget,
                    std::optional<double> min_gap = std::nullopt);

}  // namespace ordtope
