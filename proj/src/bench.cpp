#include "ordtope/bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "ordtope/rng.hpp"

namespace ordtope {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::vector<BenchCell> run_bench(const std::vector<std::size_t>& lengths, std::size_t targets_per_cell,
                                 std::uint64_t seed, bool timings, std::size_t budget) {
  std::vector<BenchCell> cells;
  for (std::size_t n : lengths) {
    PrimeBasis basis = gen_primes(n);
    RankStrategy strategy = n >= 14 ? RankStrategy::MeetInTheMiddle : RankStrategy::Enumerate;
    RankOracle oracle(basis, n, 1, strategy, 0, budget);

    Rng rng(seed + n);
    std::vector<FixedLog> targets;
    targets.reserve(targets_per_cell);
    for (std::size_t t = 0; t < targets_per_cell; ++t)
      targets.push_back(oracle.value_at(static_cast<std::size_t>(rng.below(oracle.size()))));

    std::int64_t range = oracle.max_value().mantissa().get_si();

    {
      BenchCell cell{n, "order-search", 0.0, 0, 0.0, range};
      auto start = std::chrono::steady_clock::now();
      std::size_t total = 0;
      for (const FixedLog& t : targets) {
        SearchResult r = order_search(t, oracle);
        total += r.comparisons;
        cell.comparisons_max = std::max(cell.comparisons_max, r.comparisons);
      }
      cell.comparisons_mean = static_cast<double>(total) / static_cast<double>(targets.size());
      if (timings) cell.wall_ms = ms_since(start);
      cells.push_back(std::move(cell));
    }
    {
      BenchCell cell{n, "linear-scan", 0.0, 0, 0.0, range};
      auto start = std::chrono::steady_clock::now();
      std::size_t total = 0;
      for (const FixedLog& t : targets) {
        ScanResult r = linear_scan_search(t, oracle);
        total += r.probes;
        cell.comparisons_max = std::max(cell.comparisons_max, r.probes);
      }
      cell.comparisons_mean = static_cast<double>(total) / static_cast<double>(targets.size());
      if (timings) cell.wall_ms = ms_since(start);
      cells.push_back(std::move(cell));
    }
    {
      // sort once (counted), then binary-search each target (counted)
      BenchCell cell{n, "sort-then-search", 0.0, 0, 0.0, range};
      auto start = std::chrono::steady_clock::now();
      std::vector<std::int64_t> family;
      family.reserve(oracle.size());
      {
        std::vector<unsigned> exps(n, 0);
        std::int64_t sum = 0;
        std::vector<std::int64_t> mantissas(n);
        for (std::size_t i = 0; i < n; ++i)
          mantissas[i] = (oracle.basis().digits() == oracle.digits()
                              ? oracle.basis().log(i)
                              : log_floor(oracle.basis().prime(i), oracle.digits()))
                             .mantissa()
                             .get_si();
        while (true) {
          family.push_back(sum);
          std::size_t pos = 0;
          while (pos < n && exps[pos] == 1) {
            sum -= mantissas[pos];
            exps[pos] = 0;
            ++pos;
          }
          if (pos == n) break;
          exps[pos] = 1;
          sum += mantissas[pos];
        }
      }
      std::size_t sort_comparisons = 0;
      std::sort(family.begin(), family.end(), [&](std::int64_t a, std::int64_t b) {
        ++sort_comparisons;
        return a < b;
      });
      std::size_t total = 0;
      for (const FixedLog& t : targets) {
        std::size_t probe_comparisons = 0;
        std::int64_t tm = t.rescaled(oracle.digits()).mantissa().get_si();
        std::lower_bound(family.begin(), family.end(), tm, [&](std::int64_t a, std::int64_t b) {
          ++probe_comparisons;
          return a < b;
        });
        std::size_t cost = sort_comparisons / targets.size() + probe_comparisons;
        total += cost;
        cell.comparisons_max = std::max(cell.comparisons_max, cost);
      }
      cell.comparisons_mean = static_cast<double>(total) / static_cast<double>(targets.size());
      if (timings) cell.wall_ms = ms_since(start);
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

std::string bench_csv(const std::vector<BenchCell>& cells) {
  std::ostringstream out;
  out << "n,N,method,comparisons_mean,comparisons_max,wall_ms\n";
  for (const BenchCell& c : cells) {
    out << c.n << ',' << (std::size_t{1} << c.n) << ',' << c.method << ',' << c.comparisons_mean << ','
        << c.comparisons_max << ',' << c.wall_ms << '\n';
  }
  return out.str();
}

}  // namespace ordtope
