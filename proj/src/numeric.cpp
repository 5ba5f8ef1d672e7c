#include "ordtope/numeric.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ordtope {

namespace {

mpz_class pow10(int n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(n));
  return r;
}

}  // namespace

FixedLog::FixedLog(mpz_class mantissa, int digits) : mantissa_(std::move(mantissa)), digits_(digits) {
  if (digits_ < 1) fail(Errc::ParameterError, "FixedLog precision must be at least 1 digit");
}

FixedLog FixedLog::rescaled(int digits) const {
  if (digits == digits_) return *this;
  if (digits > digits_) return FixedLog(mantissa_ * pow10(digits - digits_), digits);
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), mantissa_.get_mpz_t(), pow10(digits_ - digits).get_mpz_t());
  return FixedLog(q, digits);
}

FixedLog FixedLog::scaled(unsigned long factor) const { return FixedLog(mantissa_ * factor, digits_); }

std::string FixedLog::to_string() const {
  mpz_class abs = mantissa_ >= 0 ? mantissa_ : mpz_class(-mantissa_);
  mpz_class scale = pow10(digits_);
  mpz_class ip = abs / scale;
  mpz_class fp = abs % scale;
  std::string frac = fp.get_str();
  frac.insert(frac.begin(), static_cast<std::size_t>(digits_) - frac.size(), '0');
  std::string out;
  if (mantissa_ < 0) out += '-';
  out += ip.get_str();
  out += '.';
  out += frac;
  return out;
}

double FixedLog::to_double() const { return mantissa_.get_d() * std::pow(10.0, -digits_); }

FixedLog FixedLog::from_string(const std::string& text, int digits) {
  if (digits < 1) fail(Errc::ParameterError, "FixedLog precision must be at least 1 digit");
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.erase(s.begin());
  }
  auto dot = s.find('.');
  std::string ip = dot == std::string::npos ? s : s.substr(0, dot);
  std::string fp = dot == std::string::npos ? "" : s.substr(dot + 1);
  if (ip.empty() && fp.empty()) fail(Errc::ParameterError, "malformed decimal: " + text);
  for (char c : ip + fp)
    if (c < '0' || c > '9') fail(Errc::ParameterError, "malformed decimal: " + text);
  if (fp.size() > static_cast<std::size_t>(digits)) fp.resize(static_cast<std::size_t>(digits));
  fp.append(static_cast<std::size_t>(digits) - fp.size(), '0');
  mpz_class m(ip.empty() ? fp : ip + fp, 10);
  if (negative) m = -m;
  return FixedLog(m, digits);
}

FixedLog operator+(const FixedLog& a, const FixedLog& b) {
  int d = std::max(a.digits_, b.digits_);
  return FixedLog(a.rescaled(d).mantissa_ + b.rescaled(d).mantissa_, d);
}

FixedLog operator-(const FixedLog& a, const FixedLog& b) {
  int d = std::max(a.digits_, b.digits_);
  return FixedLog(a.rescaled(d).mantissa_ - b.rescaled(d).mantissa_, d);
}

int compare(const FixedLog& a, const FixedLog& b) {
  if (a.digits() == b.digits()) return cmp(a.mantissa(), b.mantissa());
  int d = std::max(a.digits(), b.digits());
  mpz_class ma = a.mantissa() * pow10(d - a.digits());
  mpz_class mb = b.mantissa() * pow10(d - b.digits());
  return cmp(ma, mb);
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(u128(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // witness set exact for all n < 3.3 * 10^24, so for all 64-bit inputs
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

// Truncate-toward-zero mantissa of log10(num/den) at `digits`, certified by
// evaluating a [RNDD, RNDU] enclosure and widening until both ends truncate
// to the same integer.
mpz_class certified_log10_mantissa(const mpz_class& num, const mpz_class& den, int digits) {
  if (num == den) return 0;
  mpz_class scale = pow10(digits);
  for (mpfr_prec_t prec = 128 + 8 * static_cast<mpfr_prec_t>(digits); prec <= (mpfr_prec_t{1} << 22); prec *= 2) {
    mpfr_t lo, hi, t;
    mpfr_inits2(prec, lo, hi, t, static_cast<mpfr_ptr>(nullptr));

    mpfr_set_z(lo, num.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(t, den.get_mpz_t(), MPFR_RNDU);
    mpfr_div(lo, lo, t, MPFR_RNDD);
    mpfr_log10(lo, lo, MPFR_RNDD);
    mpfr_mul_z(lo, lo, scale.get_mpz_t(), MPFR_RNDD);
    mpfr_trunc(lo, lo);

    mpfr_set_z(hi, num.get_mpz_t(), MPFR_RNDU);
    mpfr_set_z(t, den.get_mpz_t(), MPFR_RNDD);
    mpfr_div(hi, hi, t, MPFR_RNDU);
    mpfr_log10(hi, hi, MPFR_RNDU);
    mpfr_mul_z(hi, hi, scale.get_mpz_t(), MPFR_RNDU);
    mpfr_trunc(hi, hi);

    mpz_class zlo, zhi;
    mpfr_get_z(zlo.get_mpz_t(), lo, MPFR_RNDN);
    mpfr_get_z(zhi.get_mpz_t(), hi, MPFR_RNDN);
    mpfr_clears(lo, hi, t, static_cast<mpfr_ptr>(nullptr));
    if (zlo == zhi) return zlo;
  }
  fail(Errc::PrecisionUndecidable, "log10 prefix did not stabilize");
}

}  // namespace

FixedLog log_floor(std::uint64_t x, int digits) {
  if (x == 0) fail(Errc::DomainError, "log of non-positive value");
  if (digits < 1) fail(Errc::ParameterError, "log_floor needs at least 1 digit");
  return FixedLog(certified_log10_mantissa(mpz_class(static_cast<unsigned long>(x)), 1, digits), digits);
}

FixedLog log_floor(const mpq_class& x, int digits) {
  if (x <= 0) fail(Errc::DomainError, "log of non-positive value");
  if (digits < 1) fail(Errc::ParameterError, "log_floor needs at least 1 digit");
  return FixedLog(certified_log10_mantissa(x.get_num(), x.get_den(), digits), digits);
}

PrimeBasis PrimeBasis::with_digits(int digits) const { return from_primes(primes_, digits); }

PrimeBasis PrimeBasis::from_primes(std::vector<std::uint64_t> primes, int digits) {
  if (primes.empty()) fail(Errc::EmptyBasis, "prime basis must be nonempty");
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!is_prime(primes[i])) fail(Errc::ParameterError, "not a prime: " + std::to_string(primes[i]));
    if (i > 0 && primes[i] <= primes[i - 1]) fail(Errc::ParameterError, "primes must be strictly increasing");
  }
  PrimeBasis b;
  b.digits_ = digits;
  b.logs_.reserve(primes.size());
  for (std::uint64_t p : primes) b.logs_.push_back(log_floor(p, digits));
  b.primes_ = std::move(primes);
  return b;
}

PrimeBasis gen_primes(std::size_t m, int digits) {
  if (m == 0) fail(Errc::EmptyBasis, "cannot generate an empty basis");
  std::vector<std::uint64_t> primes;
  primes.reserve(m);
  for (std::uint64_t c = 2; primes.size() < m; ++c) {
    if (is_prime(c)) primes.push_back(c);
  }
  return PrimeBasis::from_primes(std::move(primes), digits);
}

PrimeBasis gen_primes(std::size_t m, std::uint64_t a, std::uint64_t d, int digits) {
  if (m == 0) fail(Errc::EmptyBasis, "cannot generate an empty basis");
  if (d == 0 || std::gcd(a, d) != 1)
    fail(Errc::InvalidProgression, "progression requires d >= 1 and gcd(a, d) = 1");
  std::vector<std::uint64_t> primes;
  primes.reserve(m);
  for (std::uint64_t c = a; primes.size() < m; c += d) {
    if (is_prime(c)) primes.push_back(c);
    if (c > (std::uint64_t{1} << 62)) fail(Errc::BudgetExceeded, "progression search exceeded 64-bit range");
  }
  return PrimeBasis::from_primes(std::move(primes), digits);
}

namespace {

// All (k+1)^n weighted sums of the mantissas, as int64. The caller verified
// the magnitude bound.
std::vector<std::int64_t> enumerate_sums_i64(const std::vector<std::int64_t>& mantissas, unsigned k) {
  std::vector<std::int64_t> sums{0};
  for (std::int64_t m : mantissas) {
    std::vector<std::int64_t> next;
    next.reserve(sums.size() * (k + 1));
    for (unsigned e = 0; e <= k; ++e) {
      std::int64_t add = static_cast<std::int64_t>(e) * m;
      for (std::int64_t s : sums) next.push_back(s + add);
    }
    sums.swap(next);
  }
  return sums;
}

}  // namespace

int required_digits(const PrimeBasis& basis, std::size_t n, unsigned k, std::size_t budget,
                    std::optional<double> min_gap) {
  if (n == 0 || n > basis.size()) fail(Errc::ParameterError, "required_digits: n must be in [1, |basis|]");
  if (k == 0) fail(Errc::ParameterError, "required_digits: k must be >= 1");

  double log_count = static_cast<double>(n) * std::log2(static_cast<double>(k) + 1.0);
  bool enumerable = log_count <= 62 && std::pow(static_cast<double>(k) + 1.0, static_cast<double>(n)) <= static_cast<double>(budget);
  if (!enumerable) {
    if (!min_gap || *min_gap <= 0)
      fail(Errc::PrecisionUndecidable,
           "required_digits: enumeration over budget and no pairwise gap supplied");
    double bound = std::log10(static_cast<double>(n) * static_cast<double>(k) / *min_gap);
    return std::max(1, static_cast<int>(std::ceil(bound)));
  }

  const std::int64_t margin = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(k);
  for (int d = 1; d <= 64; ++d) {
    std::vector<std::int64_t> mantissas;
    mantissas.reserve(n);
    u128 bound = 0;
    for (std::size_t i = 0; i < n; ++i) {
      FixedLog lg = basis.digits() == d ? basis.log(i) : log_floor(basis.prime(i), d);
      if (!lg.mantissa().fits_slong_p()) fail(Errc::PrecisionUndecidable, "mantissa exceeds 64-bit fast path");
      std::int64_t m = lg.mantissa().get_si();
      mantissas.push_back(m);
      bound += u128(static_cast<std::uint64_t>(m)) * k;
    }
    if (bound > u128(std::numeric_limits<std::int64_t>::max()))
      fail(Errc::PrecisionUndecidable, "sum bound exceeds 64-bit fast path");

    std::vector<std::int64_t> sums = enumerate_sums_i64(mantissas, k);
    std::sort(sums.begin(), sums.end());
    bool ok = true;
    for (std::size_t i = 1; i < sums.size(); ++i) {
      if (sums[i] - sums[i - 1] <= margin) {
        ok = false;
        break;
      }
    }
    if (ok) return d;
  }
  fail(Errc::PrecisionUndecidable, "no precision up to 64 digits separates the code family");
}

}  // namespace ordtope
