#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ordtope/order.hpp"

namespace ordtope {

// Instrumented comparison counts of order_search against the linear-scan and
// sort-then-binary-search baselines over a grid of indicator domains.
// Comparison columns are deterministic under (grid, seed); wall times are
// informational and reported only on request.
struct BenchCell {
  std::size_t n = 0;           // code length; domain size is 2^n
  std::string method;          // order-search | linear-scan | sort-then-search
  double comparisons_mean = 0.0;
  std::size_t comparisons_max = 0;
  double wall_ms = 0.0;
  std::int64_t value_range = 0;  // mantissa span of the domain
};

std::vector<BenchCell> run_bench(const std::vector<std::size_t>& lengths, std::size_t targets_per_cell,
                                 std::uint64_t seed, bool timings = false,
                                 std::size_t budget = kDefaultBudget);

// n,N,method,comparisons_mean,comparisons_max,wall_ms (header row included)
std::string bench_csv(const std::vector<BenchCell>& cells);

}  // namespace ordtope
