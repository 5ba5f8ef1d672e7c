#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ordtope/numeric.hpp"

namespace ordtope {

// Library-level desk-scale bounds on code shape.
inline constexpr std::size_t kMaxCodeLength = 64;
inline constexpr unsigned kMaxExponent = 64;

// Exact product encoding: value = prod p_i^{a_i}. Injective on exponent
// vectors by unique factorization.
struct GCode {
  mpz_class value;
  PrimeBasis basis;
  std::size_t length = 0;

  std::string to_decimal() const { return value.get_str(); }
};

// Truncated log-sum encoding: sum = sum a_i * floor_D(log10 p_i), exact in
// fixed point.
struct LCode {
  FixedLog sum;
  std::vector<unsigned> exponents;
  PrimeBasis basis;
  // set when the caller declared (n, k) and the chosen precision is below
  // required_digits for that family
  bool precision_warning = false;
};

GCode g_encode(const std::vector<unsigned>& exponents, const PrimeBasis& basis);
std::vector<unsigned> g_decode(const GCode& code);
std::vector<unsigned> g_decode(const mpz_class& value, const PrimeBasis& basis);

// digits == 0 means "use the basis precision". declared_max_exponent > 0 asks
// for the precision-sufficiency check against required_digits(|a|, k).
LCode l_encode(const std::vector<unsigned>& exponents, const PrimeBasis& basis, int digits = 0,
               unsigned declared_max_exponent = 0);

// A list of code values is a factorial domain iff all pairwise values differ
// by more than the tolerance (the cut-metric equality neighborhood).
bool check_factorial_domain(std::vector<FixedLog> values, const FixedLog& tolerance);
bool check_factorial_domain(std::vector<mpz_class> values, const mpz_class& tolerance);
bool check_factorial_domain(std::vector<double> values, double tolerance);

// Order-normalizing constants c_i = trunc_D(v_i^-1 (1 + i*eps)), i = 1..m,
// with eps the smallest power of ten for which the exact products c_i * v_i
// are strictly increasing and all lie in [1, 1 + m*eps].
struct ConstantsResult {
  std::vector<FixedLog> constants;
  int epsilon_exponent = 0;  // eps = 10^-epsilon_exponent
  int max_digit_count = 0;   // max decimal digits over the c_i mantissas
};
ConstantsResult derive_constants(const std::vector<FixedLog>& values, int digits);

// Iterated encodings: a finite tree of g-codes. A Leaf encodes one exponent
// vector. A Compose node re-encodes the decimal digit blocks of its inner
// code `iterations` times through the outer leaf parameters. A Union node
// concatenates its children's code lists.
struct EncodingSpec {
  enum class Kind { Leaf, Compose, Union };
  Kind kind = Kind::Leaf;

  // leaf parameters
  PrimeBasis basis;
  std::size_t length = 0;

  // Compose: children = {outer leaf, inner spec}; Union: any children
  std::vector<EncodingSpec> children;
  unsigned iterations = 1;
};

struct IteratedCode {
  std::vector<mpz_class> values;
  // Compose bookkeeping: per iteration, the number of outer codes emitted for
  // each value of the previous layer (needed to invert).
  std::vector<std::vector<std::size_t>> layers;
  std::vector<IteratedCode> parts;  // Union children / Compose inner
};

IteratedCode iterate_encode(const EncodingSpec& spec, const std::vector<std::vector<unsigned>>& payload);
std::vector<std::vector<unsigned>> iterate_decode(const EncodingSpec& spec, const IteratedCode& code);

}  // namespace ordtope
