#include "ordtope/order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ordtope {

OrderCurve order_curve(std::vector<std::pair<FixedLog, std::vector<unsigned>>> codes) {
  std::stable_sort(codes.begin(), codes.end(), [](const auto& a, const auto& b) {
    int c = compare(a.first, b.first);
    if (c != 0) return c < 0;
    return a.second < b.second;
  });
  OrderCurve curve;
  curve.entries.reserve(codes.size());
  for (std::size_t r = 0; r < codes.size(); ++r)
    curve.entries.push_back({r, std::move(codes[r].first), std::move(codes[r].second)});
  return curve;
}

OrderCurve order_curve(const std::vector<LCode>& codes) {
  std::vector<std::pair<FixedLog, std::vector<unsigned>>> pairs;
  pairs.reserve(codes.size());
  for (const LCode& c : codes) pairs.emplace_back(c.sum, c.exponents);
  return order_curve(std::move(pairs));
}

std::vector<FixedLog> finite_differences(const OrderCurve& curve) {
  if (curve.entries.size() < 2) fail(Errc::ParameterError, "finite differences need at least 2 entries");
  std::vector<FixedLog> diffs;
  diffs.reserve(curve.entries.size() - 1);
  for (std::size_t i = 1; i < curve.entries.size(); ++i)
    diffs.push_back(curve.entries[i].value - curve.entries[i - 1].value);
  return diffs;
}

bool is_compact_order(const OrderCurve& curve) {
  auto diffs = finite_differences(curve);
  for (std::size_t i = 1; i < diffs.size(); ++i)
    if (diffs[i] != diffs[0]) return false;
  return true;
}

std::string order_curve_csv(const OrderCurve& curve) {
  std::ostringstream out;
  for (const OrderEntry& e : curve.entries) {
    out << e.rank << ',' << e.value.mantissa().get_str() << ',' << e.value.digits() << ',';
    for (std::size_t i = 0; i < e.preimage.size(); ++i) {
      if (i) out << '_';
      out << e.preimage[i];
    }
    out << '\n';
  }
  return out.str();
}

namespace {

std::uint64_t pow_sz(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

// sorted (sum, packed exponents) over {0..k}^, exponents packed mixed radix
std::vector<std::pair<std::int64_t, std::uint64_t>> build_table(
    const std::vector<std::int64_t>& mantissas, std::size_t from, std::size_t to, unsigned k) {
  std::vector<std::pair<std::int64_t, std::uint64_t>> table{{0, 0}};
  std::uint64_t radix = 1;
  for (std::size_t i = from; i < to; ++i) {
    std::vector<std::pair<std::int64_t, std::uint64_t>> next;
    next.reserve(table.size() * (k + 1));
    for (unsigned e = 0; e <= k; ++e) {
      std::int64_t add = static_cast<std::int64_t>(e) * mantissas[i];
      std::uint64_t tag = radix * e;
      for (const auto& [s, p] : table) next.emplace_back(s + add, p + tag);
    }
    table.swap(next);
    radix *= (k + 1);
  }
  std::sort(table.begin(), table.end());
  return table;
}

std::size_t count_lt_sorted(const std::vector<std::pair<std::int64_t, std::uint64_t>>& table,
                            std::int64_t value) {
  return static_cast<std::size_t>(
      std::lower_bound(table.begin(), table.end(), value,
                       [](const auto& entry, std::int64_t v) { return entry.first < v; }) -
      table.begin());
}

std::size_t count_le_sorted(const std::vector<std::pair<std::int64_t, std::uint64_t>>& table,
                            std::int64_t value) {
  return static_cast<std::size_t>(
      std::upper_bound(table.begin(), table.end(), value,
                       [](std::int64_t v, const auto& entry) { return v < entry.first; }) -
      table.begin());
}

}  // namespace

RankOracle::RankOracle(const PrimeBasis& basis, std::size_t n, unsigned k, RankStrategy strategy,
                       int digits, std::size_t budget)
    : basis_(basis), n_(n), k_(k), strategy_(strategy) {
  if (n == 0 || n > basis.size()) fail(Errc::ParameterError, "oracle length must be in [1, |basis|]");
  if (k == 0) fail(Errc::ParameterError, "oracle max exponent must be >= 1");
  if (n > 30) fail(Errc::BudgetExceeded, "oracle enumeration budget is n <= 30");
  double count = std::pow(static_cast<double>(k) + 1.0, static_cast<double>(n));
  if (count > 0x1p62) fail(Errc::BudgetExceeded, "domain size exceeds the 64-bit fast path");
  if (count > static_cast<double>(budget) &&
      !(strategy == RankStrategy::MeetInTheMiddle &&
        std::pow(static_cast<double>(k) + 1.0, static_cast<double>((n + 1) / 2)) <= static_cast<double>(budget)))
    fail(Errc::BudgetExceeded, "domain size exceeds enumeration budget");

  digits_ = digits == 0 ? required_digits(basis, n, k, budget) : digits;
  total_ = static_cast<std::size_t>(pow_sz(k + 1, n));

  mantissas_.reserve(n);
  unsigned __int128 bound = 0;
  for (std::size_t i = 0; i < n; ++i) {
    FixedLog lg = basis.digits() == digits_ ? basis.log(i) : log_floor(basis.prime(i), digits_);
    if (!lg.mantissa().fits_slong_p()) fail(Errc::BudgetExceeded, "mantissa exceeds the 64-bit fast path");
    mantissas_.push_back(lg.mantissa().get_si());
    bound += static_cast<unsigned __int128>(mantissas_.back()) * k;
  }
  if (bound > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max()))
    fail(Errc::BudgetExceeded, "sum bound exceeds the 64-bit fast path");
  max_sum_ = static_cast<std::int64_t>(bound);

  if (strategy_ == RankStrategy::Enumerate) {
    table_ = build_table(mantissas_, 0, n_, k_);
  } else {
    split_ = n_ / 2;
    half_lo_ = build_table(mantissas_, 0, split_, k_);
    half_hi_ = build_table(mantissas_, split_, n_, k_);
  }
}

std::size_t RankOracle::count_lt(std::int64_t mantissa) const {
  if (strategy_ == RankStrategy::Enumerate) return count_lt_sorted(table_, mantissa);
  std::size_t total = 0;
  for (const auto& [s, p] : half_hi_) {
    if (s >= mantissa) continue;  // half_lo_ sums are >= 0
    total += count_lt_sorted(half_lo_, mantissa - s);
  }
  return total;
}

std::size_t RankOracle::count_eq(std::int64_t mantissa) const {
  if (strategy_ == RankStrategy::Enumerate)
    return count_le_sorted(table_, mantissa) - count_lt_sorted(table_, mantissa);
  std::size_t total = 0;
  for (const auto& [s, p] : half_hi_) {
    if (s > mantissa) continue;
    std::int64_t want = mantissa - s;
    total += count_le_sorted(half_lo_, want) - count_lt_sorted(half_lo_, want);
  }
  return total;
}

std::size_t RankOracle::count_below(const FixedLog& value) const {
  if (value.mantissa() < 0) return 0;
  const int dv = value.digits();
  if (dv <= digits_) {
    mpz_class m = value.rescaled(digits_).mantissa();
    if (!m.fits_slong_p()) return total_;  // beyond the family range
    return count_lt(m.get_si());
  }
  // dv > digits_: codes below v iff code < floor(v) or (remainder > 0 and
  // code == floor(v)) at the oracle scale
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(dv - digits_));
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), value.mantissa().get_mpz_t(), scale.get_mpz_t());
  if (!q.fits_slong_p()) return total_;
  std::int64_t m = q.get_si();
  return count_lt(m) + (r != 0 ? count_eq(m) : 0);
}

std::size_t RankOracle::rank(const FixedLog& value) const { return count_below(value); }

std::vector<unsigned> RankOracle::unpack(std::uint64_t packed) const {
  std::vector<unsigned> exps(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    exps[i] = static_cast<unsigned>(packed % (k_ + 1));
    packed /= (k_ + 1);
  }
  return exps;
}

FixedLog RankOracle::value_at(std::size_t rank) const {
  if (rank >= total_) fail(Errc::ParameterError, "rank out of range");
  // smallest mantissa m with |{codes <= m}| >= rank+1
  std::int64_t lo = 0, hi = max_sum_;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    std::size_t le = count_lt(mid + 1);
    if (le >= rank + 1)
      hi = mid;
    else
      lo = mid + 1;
  }
  return FixedLog(mpz_class(static_cast<long>(lo)), digits_);
}

std::vector<unsigned> RankOracle::preimage_at(std::size_t rank) const {
  auto pre = preimage_of(value_at(rank));
  if (!pre) fail(Errc::CorruptOracle, "unranked value has no preimage");
  return *pre;
}

std::optional<std::vector<unsigned>> RankOracle::preimage_of(const FixedLog& value) const {
  if (value.mantissa() < 0) return std::nullopt;
  FixedLog at_scale = value.rescaled(digits_);
  if (compare(at_scale, value) != 0) return std::nullopt;  // not representable at the oracle scale
  if (!at_scale.mantissa().fits_slong_p()) return std::nullopt;
  std::int64_t m = at_scale.mantissa().get_si();

  if (strategy_ == RankStrategy::Enumerate) {
    auto it = std::lower_bound(table_.begin(), table_.end(), m,
                               [](const auto& entry, std::int64_t v) { return entry.first < v; });
    if (it == table_.end() || it->first != m) return std::nullopt;
    return unpack(it->second);
  }
  for (const auto& [s, p] : half_hi_) {
    if (s > m) continue;
    std::int64_t want = m - s;
    auto it = std::lower_bound(half_lo_.begin(), half_lo_.end(), want,
                               [](const auto& entry, std::int64_t v) { return entry.first < v; });
    if (it != half_lo_.end() && it->first == want) {
      std::uint64_t radix = pow_sz(k_ + 1, split_);
      return unpack(it->second + p * radix);
    }
  }
  return std::nullopt;
}

SearchResult order_search(const FixedLog& target, const RankOracle& oracle) {
  const std::size_t n = oracle.size();
  if (n == 0) fail(Errc::ParameterError, "empty search domain");
  SearchResult result;
  std::size_t lo = 0, hi = n;
  // probes at ranks already resolved to the left/right of the window must
  // bracket every later probe; a violation means the rank order lies
  std::optional<FixedLog> left_value, right_value;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    FixedLog probe = oracle.value_at(mid);
    if ((left_value && probe < *left_value) || (right_value && probe > *right_value))
      fail(Errc::CorruptOracle, "rank order is not monotone");
    ++result.comparisons;
    if (probe < target) {
      left_value = std::move(probe);
      lo = mid + 1;
    } else {
      right_value = std::move(probe);
      hi = mid;
    }
  }
  if (lo < n) {
    FixedLog at = oracle.value_at(lo);
    ++result.comparisons;
    if (at == target) result.preimage = oracle.preimage_at(lo);
  }
  return result;
}

ScanResult linear_scan_search(const FixedLog& target, const RankOracle& oracle) {
  // scans the family in plain enumeration order (no rank structure), keeping
  // the running sum up to date odometer-style
  ScanResult result;
  const std::size_t n = oracle.length();
  const unsigned k = oracle.max_exponent();
  std::vector<std::int64_t> mantissas(n);
  for (std::size_t i = 0; i < n; ++i) {
    FixedLog lg = oracle.basis().digits() == oracle.digits() ? oracle.basis().log(i)
                                                             : log_floor(oracle.basis().prime(i), oracle.digits());
    mantissas[i] = lg.mantissa().get_si();
  }
  std::optional<std::int64_t> target_mantissa;
  FixedLog at_scale = target.rescaled(oracle.digits());
  if (compare(at_scale, target) == 0 && at_scale.mantissa().fits_slong_p())
    target_mantissa = at_scale.mantissa().get_si();
  std::vector<unsigned> exps(n, 0);
  std::int64_t sum = 0;
  while (true) {
    ++result.probes;
    if (target_mantissa && sum == *target_mantissa) {
      result.preimage = exps;
      return result;
    }
    // odometer increment
    std::size_t pos = 0;
    while (pos < n && exps[pos] == k) {
      sum -= static_cast<std::int64_t>(k) * mantissas[pos];
      exps[pos] = 0;
      ++pos;
    }
    if (pos == n) return result;  // wrapped: target absent
    ++exps[pos];
    sum += mantissas[pos];
  }
}

std::uint64_t count_coprime(std::uint64_t n, const std::vector<std::uint64_t>& primes) {
  if (n == 0) fail(Errc::ParameterError, "count_coprime needs n >= 1");
  if (primes.size() > 30) fail(Errc::BudgetExceeded, "inclusion-exclusion over > 30 primes");
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::size_t j = i + 1; j < primes.size(); ++j)
      if (primes[i] == primes[j]) fail(Errc::ParameterError, "primes must be distinct");
  std::int64_t total = 0;
  const std::uint64_t subsets = std::uint64_t{1} << primes.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    unsigned __int128 prod = 1;
    bool overflow = false;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        prod *= primes[i];
        if (prod > n) {
          overflow = true;
          break;
        }
      }
    }
    if (overflow) continue;
    std::uint64_t term = n / static_cast<std::uint64_t>(prod);
    total += __builtin_popcountll(mask) % 2 == 0 ? static_cast<std::int64_t>(term)
                                                 : -static_cast<std::int64_t>(term);
  }
  return static_cast<std::uint64_t>(total);
}

mpq_class totient_formula(std::uint64_t n, const std::vector<std::uint64_t>& primes) {
  mpq_class value(static_cast<unsigned long>(n));
  for (std::uint64_t p : primes) {
    value *= mpq_class(static_cast<unsigned long>(p - 1), static_cast<unsigned long>(p));
  }
  value.canonicalize();
  return value;
}

}  // namespace ordtope
