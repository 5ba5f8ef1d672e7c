#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ordtope/audit.hpp"
#include "ordtope/codes.hpp"
#include "ordtope/numeric.hpp"

namespace ordtope {

// The (K+M) x (2K+2M) block matrix
//   [ (I_K (x) 1_2)^T | B ; 0 | (I_M (x) 1_2)^T ]
// with B a seeded random binary K x 2M block.
struct JstMatrix {
  int k_blocks = 0;  // K
  int m_blocks = 0;  // M
  Eigen::MatrixXi s;
  Eigen::MatrixXi b;
  std::uint64_t seed = 0;

  int rows() const { return k_blocks + m_blocks; }
  int cols() const { return 2 * (k_blocks + m_blocks); }
};

JstMatrix build_jst(int k_blocks, int m_blocks, std::uint64_t seed);

// The three l-codes attached to a JST matrix:
//  code1: row-wise indicator l-codes over the first 2K+2M basis primes
//  constants/code2: order-normalizing constants assigned by code1 rank, so
//    the exact products c_i * code1_i reproduce the code1 order
//  code3: the bounded-exponent family over K+M primes, kept as parameters
//    (its order set is enumerated by the audits)
struct JstCodes {
  std::vector<FixedLog> code1;
  std::vector<FixedLog> constants;
  std::vector<FixedLog> code2;  // exact products, order equals Or(code1)
  std::size_t code3_length = 0;
  unsigned code3_max_exponent = 1;
  std::vector<std::pair<std::size_t, std::size_t>> collisions;  // equal code1 rows
};

JstCodes jst_lcodes(const JstMatrix& jst, const PrimeBasis& basis, int digits = 0, unsigned k = 1);

// Brute-force order audits: eq.prop1 (row codes are a rank subset of the full
// indicator order), eq.prop2 (Or(code2) = Or(code1)), eq.prop3 (quotient
// reading, ambiguous), eq.prop4 (order-set cardinality vs (K+M+1)^(K+M)),
// eq.dirac (order-curve density trend), remark-sigmoid (shape descriptor).
// Brute-force counts are authoritative; the source formulas are hypotheses.
std::vector<AuditReport> audit_jst_orders(int k_blocks, int m_blocks, unsigned k, std::uint64_t seed,
                                          int digits = 0, std::size_t budget = kDefaultBudget);

}  // namespace ordtope
