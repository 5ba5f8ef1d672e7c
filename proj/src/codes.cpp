#include "ordtope/codes.hpp"

#include <algorithm>
#include <cmath>

namespace ordtope {

namespace {

mpz_class pow10z(int n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(n));
  return r;
}

void check_shape(const std::vector<unsigned>& exponents, const PrimeBasis& basis) {
  if (exponents.size() > basis.size())
    fail(Errc::BasisTooSmall, "exponent vector longer than prime basis");
  if (exponents.size() > kMaxCodeLength)
    fail(Errc::ParameterError, "code length exceeds library bound of 64");
  for (unsigned e : exponents)
    if (e > kMaxExponent) fail(Errc::ParameterError, "exponent exceeds library bound of 64");
}

}  // namespace

GCode g_encode(const std::vector<unsigned>& exponents, const PrimeBasis& basis) {
  check_shape(exponents, basis);
  mpz_class value = 1;
  mpz_class power;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] == 0) continue;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(basis.prime(i)), exponents[i]);
    value *= power;
  }
  return GCode{std::move(value), basis, exponents.size()};
}

std::vector<unsigned> g_decode(const mpz_class& value, const PrimeBasis& basis) {
  if (value < 1) fail(Errc::NotInFactorialDomain, "g-code values are positive integers");
  std::vector<unsigned> exponents(basis.size(), 0);
  mpz_class rest = value;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    unsigned long p = static_cast<unsigned long>(basis.prime(i));
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++exponents[i];
    }
  }
  if (rest != 1)
    fail(Errc::NotInFactorialDomain, "residual factor " + rest.get_str() + " outside the basis");
  return exponents;
}

std::vector<unsigned> g_decode(const GCode& code) {
  auto exps = g_decode(code.value, code.basis);
  while (exps.size() > code.length) {
    if (exps.back() != 0)
      fail(Errc::NotInFactorialDomain, "prime factor beyond the declared code length");
    exps.pop_back();
  }
  return exps;
}

LCode l_encode(const std::vector<unsigned>& exponents, const PrimeBasis& basis, int digits,
               unsigned declared_max_exponent) {
  check_shape(exponents, basis);
  int d = digits == 0 ? basis.digits() : digits;
  FixedLog sum(mpz_class(0), d);
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] == 0) continue;
    FixedLog lg = d == basis.digits() ? basis.log(i) : log_floor(basis.prime(i), d);
    sum = sum + lg.scaled(exponents[i]);
  }
  LCode code{std::move(sum), exponents, basis, false};
  if (declared_max_exponent > 0) {
    int needed = required_digits(basis, exponents.size(), declared_max_exponent);
    code.precision_warning = d < needed;
  }
  return code;
}

namespace {

template <typename T, typename Gap>
bool pairwise_separated(std::vector<T>& values, Gap gap_exceeds_tolerance) {
  if (values.size() < 2) return true;
  std::sort(values.begin(), values.end());
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!gap_exceeds_tolerance(values[i - 1], values[i])) return false;
  }
  return true;
}

}  // namespace

bool check_factorial_domain(std::vector<FixedLog> values, const FixedLog& tolerance) {
  return pairwise_separated(values, [&](const FixedLog& a, const FixedLog& b) { return b - a > tolerance; });
}

bool check_factorial_domain(std::vector<mpz_class> values, const mpz_class& tolerance) {
  return pairwise_separated(values, [&](const mpz_class& a, const mpz_class& b) { return b - a > tolerance; });
}

bool check_factorial_domain(std::vector<double> values, double tolerance) {
  return pairwise_separated(values, [&](double a, double b) { return b - a > tolerance; });
}

ConstantsResult derive_constants(const std::vector<FixedLog>& values, int digits) {
  if (values.empty()) fail(Errc::ParameterError, "derive_constants: empty value list");
  if (digits < 1) fail(Errc::ParameterError, "derive_constants: digits must be >= 1");
  int dv = 1;
  for (const FixedLog& v : values) {
    if (v.mantissa() <= 0) fail(Errc::ParameterError, "derive_constants: values must be positive");
    dv = std::max(dv, v.digits());
  }
  std::vector<mpz_class> mv;
  mv.reserve(values.size());
  for (const FixedLog& v : values) mv.push_back(v.rescaled(dv).mantissa());

  const auto m = static_cast<unsigned long>(values.size());
  const mpz_class unit = pow10z(digits + dv);  // 1 at the product scale

  // smallest eps = 10^-e first: scan e downward from just past the working
  // precision until the exact products pass both checks
  for (int e = digits + dv + 6; e >= -6; --e) {
    mpz_class eps_num = 1, eps_den = 1;  // eps = eps_num / eps_den
    if (e >= 0)
      eps_den = pow10z(e);
    else
      eps_num = pow10z(-e);

    std::vector<mpz_class> mantissas(values.size());
    std::vector<mpz_class> products(values.size());
    bool ok = true;
    for (std::size_t i = 0; i < values.size() && ok; ++i) {
      // c_i = trunc( 10^digits * (1 + (i+1) eps) / v_i ), exact integer form
      mpz_class num = pow10z(digits + dv) * (eps_den + eps_num * static_cast<unsigned long>(i + 1));
      mpz_class den = mv[i] * eps_den;
      mpz_class c;
      mpz_fdiv_q(c.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      if (c <= 0) {
        ok = false;
        break;
      }
      mantissas[i] = c;
      products[i] = c * mv[i];  // product scale 10^(digits+dv)
    }
    if (!ok) continue;
    for (std::size_t i = 0; i < values.size() && ok; ++i) {
      // product in [1, 1 + m*eps], compared exactly at scale 10^(digits+dv) * eps_den
      if (products[i] < unit) ok = false;
      if (ok && products[i] * eps_den > unit * (eps_den + eps_num * m)) ok = false;
      if (ok && i > 0 && products[i] <= products[i - 1]) ok = false;
    }
    if (!ok) continue;

    ConstantsResult result;
    result.epsilon_exponent = e;
    result.constants.reserve(values.size());
    int max_digits = 0;
    for (auto& c : mantissas) {
      max_digits = std::max(max_digits, static_cast<int>(mpz_sizeinbase(c.get_mpz_t(), 10)));
      result.constants.emplace_back(std::move(c), digits);
    }
    result.max_digit_count = max_digits;
    return result;
  }
  fail(Errc::ConstantsInfeasible, "no power-of-ten epsilon yields an increasing scaled sequence");
}

namespace {

std::vector<unsigned> digits_of(const mpz_class& value) {
  std::string s = value.get_str();
  std::vector<unsigned> d;
  d.reserve(s.size());
  for (char c : s) d.push_back(static_cast<unsigned>(c - '0'));
  return d;
}

mpz_class value_of_digits(const std::vector<unsigned>& digits) {
  mpz_class v = 0;
  for (unsigned d : digits) {
    v *= 10;
    v += d;
  }
  return v;
}

// Encode one integer's decimal digits through the outer leaf: left-pad to a
// multiple of n, then one g-code per n-digit chunk.
std::vector<mpz_class> encode_digit_blocks(const EncodingSpec& outer, const mpz_class& value) {
  std::vector<unsigned> digits = digits_of(value);
  std::size_t n = outer.length;
  std::size_t chunks = (digits.size() + n - 1) / n;
  std::vector<unsigned> padded(chunks * n, 0);
  std::copy(digits.begin(), digits.end(), padded.end() - static_cast<std::ptrdiff_t>(digits.size()));
  std::vector<mpz_class> out;
  out.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    std::vector<unsigned> chunk(padded.begin() + static_cast<std::ptrdiff_t>(c * n),
                                padded.begin() + static_cast<std::ptrdiff_t>((c + 1) * n));
    out.push_back(g_encode(chunk, outer.basis).value);
  }
  return out;
}

mpz_class decode_digit_blocks(const EncodingSpec& outer, const std::vector<mpz_class>& codes) {
  std::vector<unsigned> digits;
  for (const mpz_class& c : codes) {
    auto exps = g_decode(c, outer.basis);
    exps.resize(outer.length);
    digits.insert(digits.end(), exps.begin(), exps.end());
  }
  return value_of_digits(digits);
}

void validate_leaf(const EncodingSpec& spec) {
  if (spec.length == 0 || spec.length > spec.basis.size())
    fail(Errc::SpecError, "leaf length must be in [1, |basis|]");
}

std::size_t payload_arity(const EncodingSpec& spec) {
  switch (spec.kind) {
    case EncodingSpec::Kind::Leaf:
      return 1;
    case EncodingSpec::Kind::Compose:
      if (spec.children.size() != 2 || spec.children[0].kind != EncodingSpec::Kind::Leaf)
        fail(Errc::SpecError, "compose node needs {outer leaf, inner spec}");
      return payload_arity(spec.children[1]);
    case EncodingSpec::Kind::Union: {
      if (spec.children.empty()) fail(Errc::SpecError, "union node needs children");
      std::size_t total = 0;
      for (const auto& c : spec.children) total += payload_arity(c);
      return total;
    }
  }
  fail(Errc::SpecError, "unreachable spec kind");
}

IteratedCode encode_node(const EncodingSpec& spec, const std::vector<std::vector<unsigned>>& payload,
                         std::size_t& cursor) {
  IteratedCode out;
  switch (spec.kind) {
    case EncodingSpec::Kind::Leaf: {
      validate_leaf(spec);
      if (cursor >= payload.size()) fail(Errc::SpecError, "payload shorter than spec arity");
      const auto& a = payload[cursor++];
      if (a.size() != spec.length) fail(Errc::SpecError, "payload vector does not match leaf length");
      out.values.push_back(g_encode(a, spec.basis).value);
      return out;
    }
    case EncodingSpec::Kind::Compose: {
      if (spec.children.size() != 2 || spec.children[0].kind != EncodingSpec::Kind::Leaf)
        fail(Errc::SpecError, "compose node needs {outer leaf, inner spec}");
      const EncodingSpec& outer = spec.children[0];
      validate_leaf(outer);
      IteratedCode inner = encode_node(spec.children[1], payload, cursor);
      std::vector<mpz_class> layer = inner.values;
      out.parts.push_back(std::move(inner));
      for (unsigned it = 0; it < std::max(1u, spec.iterations); ++it) {
        std::vector<mpz_class> next;
        std::vector<std::size_t> counts;
        counts.reserve(layer.size());
        for (const mpz_class& v : layer) {
          auto blocks = encode_digit_blocks(outer, v);
          counts.push_back(blocks.size());
          for (auto& b : blocks) next.push_back(std::move(b));
        }
        out.layers.push_back(std::move(counts));
        layer.swap(next);
      }
      out.values = std::move(layer);
      return out;
    }
    case EncodingSpec::Kind::Union: {
      if (spec.children.empty()) fail(Errc::SpecError, "union node needs children");
      for (const auto& child : spec.children) {
        IteratedCode part = encode_node(child, payload, cursor);
        out.values.insert(out.values.end(), part.values.begin(), part.values.end());
        out.parts.push_back(std::move(part));
      }
      return out;
    }
  }
  fail(Errc::SpecError, "unreachable spec kind");
}

void decode_node(const EncodingSpec& spec, const IteratedCode& code,
                 std::vector<std::vector<unsigned>>& out) {
  switch (spec.kind) {
    case EncodingSpec::Kind::Leaf: {
      if (code.values.size() != 1) fail(Errc::SpecError, "leaf expects exactly one code value");
      auto exps = g_decode(code.values[0], spec.basis);
      exps.resize(spec.length);
      out.push_back(std::move(exps));
      return;
    }
    case EncodingSpec::Kind::Compose: {
      const EncodingSpec& outer = spec.children[0];
      std::vector<mpz_class> layer = code.values;
      for (auto it = code.layers.rbegin(); it != code.layers.rend(); ++it) {
        std::vector<mpz_class> prev;
        prev.reserve(it->size());
        std::size_t pos = 0;
        for (std::size_t count : *it) {
          if (pos + count > layer.size()) fail(Errc::SpecError, "corrupt compose bookkeeping");
          std::vector<mpz_class> group(layer.begin() + static_cast<std::ptrdiff_t>(pos),
                                       layer.begin() + static_cast<std::ptrdiff_t>(pos + count));
          prev.push_back(decode_digit_blocks(outer, group));
          pos += count;
        }
        if (pos != layer.size()) fail(Errc::SpecError, "corrupt compose bookkeeping");
        layer.swap(prev);
      }
      if (code.parts.size() != 1) fail(Errc::SpecError, "compose expects one inner part");
      IteratedCode inner = code.parts[0];
      inner.values = std::move(layer);
      decode_node(spec.children[1], inner, out);
      return;
    }
    case EncodingSpec::Kind::Union: {
      if (code.parts.size() != spec.children.size())
        fail(Errc::SpecError, "union arity does not match code parts");
      for (std::size_t i = 0; i < spec.children.size(); ++i) decode_node(spec.children[i], code.parts[i], out);
      return;
    }
  }
  fail(Errc::SpecError, "unreachable spec kind");
}

}  // namespace

IteratedCode iterate_encode(const EncodingSpec& spec, const std::vector<std::vector<unsigned>>& payload) {
  if (payload_arity(spec) != payload.size())
    fail(Errc::SpecError, "payload count does not match spec arity");
  std::size_t cursor = 0;
  return encode_node(spec, payload, cursor);
}

std::vector<std::vector<unsigned>> iterate_decode(const EncodingSpec& spec, const IteratedCode& code) {
  std::vector<std::vector<unsigned>> out;
  decode_node(spec, code, out);
  return out;
}

}  // namespace ordtope
