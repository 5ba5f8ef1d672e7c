#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ordtope/bench.hpp"
#include "ordtope/claims.hpp"
#include "ordtope/codes.hpp"
#include "ordtope/extras.hpp"
#include "ordtope/order.hpp"
#include "ordtope/transforms.hpp"

namespace {

using namespace ordtope;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNotInDomain = 3;
constexpr int kExitAbsent = 4;
constexpr int kExitBudget = 5;

struct GlobalOptions {
  std::uint64_t seed = 1;
  int digits = 0;
  std::size_t budget = kDefaultBudget;
  std::string format;  // empty: each subcommand picks its natural format
  bool timings = false;
};

// "first:m" or "prog:a:d"
PrimeBasis parse_basis(const std::string& text, std::size_t fallback_m, int digits) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  int d = digits == 0 ? kDefaultDigits : digits;
  if (parts.size() == 2 && parts[0] == "first") return gen_primes(std::stoul(parts[1]), d);
  if (parts.size() == 3 && parts[0] == "prog")
    return gen_primes(fallback_m, std::stoull(parts[1]), std::stoull(parts[2]), d);
  fail(Errc::ParameterError, "basis must be first:m or prog:a:d, got " + text);
}

std::vector<unsigned> parse_exponents(const std::string& text) {
  std::vector<unsigned> exps;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) exps.push_back(static_cast<unsigned>(std::stoul(item)));
  return exps;
}

std::string join_exponents(const std::vector<unsigned>& exps, char sep) {
  std::ostringstream out;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (i) out << sep;
    out << exps[i];
  }
  return out.str();
}

// decimal literal ("0.5", "3") or mantissa/digits pair ("500000,6")
FixedLog parse_target(const std::string& text) {
  if (text.find(',') != std::string::npos) {
    auto comma = text.find(',');
    mpz_class mantissa(text.substr(0, comma), 10);
    return FixedLog(mantissa, std::stoi(text.substr(comma + 1)));
  }
  auto dot = text.find('.');
  int digits = dot == std::string::npos ? 1 : std::max<int>(1, static_cast<int>(text.size() - dot - 1));
  return FixedLog::from_string(text, digits);
}

int run(int argc, char** argv) {
  CLI::App app{"prime-factorial codes, order-topology search, and claim audits"};
  app.require_subcommand(1);

  GlobalOptions global;
  if (const char* env = std::getenv("ORDTOPE_BUDGET")) global.budget = std::stoull(env);
  app.add_option("--seed", global.seed, "seed for every randomized step");
  app.add_option("--digits", global.digits, "fixed-point fraction digits (0 = automatic)");
  app.add_option("--budget", global.budget, "enumeration budget");
  app.add_option("--format", global.format, "output format override: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--timings", global.timings, "include wall-clock timings in reports");

  // encode
  auto* encode = app.add_subcommand("encode", "encode an exponent vector");
  bool enc_g = false, enc_l = false;
  std::string enc_basis = "first:3";
  std::string enc_exponents;
  encode->add_flag("--g", enc_g, "emit the g-code (decimal product)");
  encode->add_flag("--l", enc_l, "emit the l-code (mantissa,digits)");
  encode->add_option("--basis", enc_basis, "first:m or prog:a:d");
  encode->add_option("exponents", enc_exponents, "comma-separated exponents")->required();

  // decode
  auto* decode = app.add_subcommand("decode", "decode a g-code value");
  bool dec_g = false, dec_l = false;
  std::string dec_basis = "first:3";
  std::string dec_value;
  decode->add_flag("--g", dec_g, "decode a g-code");
  decode->add_flag("--l", dec_l, "(l-codes decode through `search`)");
  decode->add_option("--basis", dec_basis, "first:m or prog:a:d");
  decode->add_option("value", dec_value, "decimal code value")->required();

  // order-curve
  auto* curve_cmd = app.add_subcommand("order-curve", "emit the order curve of an indicator family");
  std::size_t curve_n = 3;
  unsigned curve_k = 1;
  std::string curve_basis;
  curve_cmd->add_option("--n", curve_n, "code length")->required();
  curve_cmd->add_option("--k", curve_k, "max exponent");
  curve_cmd->add_option("--basis", curve_basis, "first:m or prog:a:d (default first:n)");

  // search
  auto* search_cmd = app.add_subcommand("search", "binary search over the implicit order");
  std::size_t search_n = 3;
  unsigned search_k = 1;
  std::string search_basis, search_target, search_strategy = "auto";
  search_cmd->add_option("--n", search_n, "code length")->required();
  search_cmd->add_option("--k", search_k, "max exponent");
  search_cmd->add_option("--basis", search_basis, "first:m or prog:a:d (default first:n)");
  search_cmd->add_option("--target", search_target, "decimal value or mantissa,digits")->required();
  search_cmd->add_option("--strategy", search_strategy, "enumerate|mitm|auto")
      ->check(CLI::IsMember({"enumerate", "mitm", "auto"}));

  // audit
  auto* audit_cmd = app.add_subcommand("audit", "run claim audits");
  std::string audit_claims = "all";
  AuditConfig audit_cfg;
  std::string audit_primes = "2,3,5";
  audit_cmd->add_option("--claims", audit_claims, "all or comma-separated claim ids");
  audit_cmd->add_option("--k", audit_cfg.jst_k, "JST K blocks");
  audit_cmd->add_option("--m", audit_cfg.jst_m, "JST M blocks");
  audit_cmd->add_option("--exponent", audit_cfg.max_exponent, "bounded-exponent k for code families");
  audit_cmd->add_option("--n", audit_cfg.totient_n, "totient n");
  audit_cmd->add_option("--primes", audit_primes, "totient prime list");

  // jst
  auto* jst_cmd = app.add_subcommand("jst", "Jackson-Sheridan-Tseitin transform");
  int jst_k = 1, jst_m = 1;
  bool jst_audit = false, jst_curves = false;
  unsigned jst_exponent = 1;
  jst_cmd->add_option("--k", jst_k, "K blocks")->required();
  jst_cmd->add_option("--m", jst_m, "M blocks")->required();
  jst_cmd->add_flag("--audit", jst_audit, "emit the order audits as JSON");
  jst_cmd->add_flag("--curves", jst_curves, "emit code order curves as CSV");
  jst_cmd->add_option("--exponent", jst_exponent, "bounded-exponent k for code3");

  // sphere
  auto* sphere_cmd = app.add_subcommand("sphere", "Sibuya sphere samples as CSV");
  int sphere_n = 2, sphere_samples = 1;
  sphere_cmd->add_option("--n", sphere_n, "even dimension")->required();
  sphere_cmd->add_option("--samples", sphere_samples, "number of points")->required();

  // beadsort
  auto* bead_cmd = app.add_subcommand("beadsort", "bead sort naturals from stdin");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "comparison-count benchmark CSV");
  std::string bench_sizes = "8,12,16,20";
  std::size_t bench_targets = 50;
  bench_cmd->add_option("--sizes", bench_sizes, "comma-separated code lengths");
  bench_cmd->add_option("--targets", bench_targets, "targets per cell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }
  if (encode->parsed()) {
    if (enc_g == enc_l) fail(Errc::ParameterError, "choose exactly one of --g/--l");
    auto exps = parse_exponents(enc_exponents);
    PrimeBasis basis = parse_basis(enc_basis, exps.size(), global.digits);
    if (enc_g) {
      std::cout << g_encode(exps, basis).to_decimal() << "\n";
    } else {
      LCode code = l_encode(exps, basis, global.digits);
      std::cout << code.sum.mantissa().get_str() << "," << code.sum.digits() << "\n";
    }
    return kExitOk;
  }

  if (decode->parsed()) {
    if (dec_l) fail(Errc::ParameterError, "l-codes are searched, not decoded; use `search --target`");
    (void)dec_g;
    PrimeBasis basis = parse_basis(dec_basis, 3, global.digits);
    mpz_class value;
    if (value.set_str(dec_value, 10) != 0) fail(Errc::ParameterError, "malformed decimal value");
    std::cout << join_exponents(g_decode(value, basis), ',') << "\n";
    return kExitOk;
  }

  if (curve_cmd->parsed()) {
    PrimeBasis basis = curve_cmd->count("--basis") ? parse_basis(curve_basis, curve_n, global.digits)
                                                   : gen_primes(curve_n);
    double count = std::pow(static_cast<double>(curve_k) + 1.0, static_cast<double>(curve_n));
    if (count > static_cast<double>(global.budget))
      fail(Errc::BudgetExceeded, "curve family exceeds the enumeration budget");
    int d = global.digits == 0 ? required_digits(basis, curve_n, curve_k, global.budget) : global.digits;
    std::vector<std::pair<FixedLog, std::vector<unsigned>>> codes;
    std::vector<unsigned> exps(curve_n, 0);
    while (true) {
      codes.emplace_back(l_encode(exps, basis, d).sum, exps);
      std::size_t pos = 0;
      while (pos < curve_n && exps[pos] == curve_k) exps[pos++] = 0;
      if (pos == curve_n) break;
      ++exps[pos];
    }
    std::cout << order_curve_csv(order_curve(std::move(codes)));
    return kExitOk;
  }

  if (search_cmd->parsed()) {
    PrimeBasis basis = search_cmd->count("--basis") ? parse_basis(search_basis, search_n, global.digits)
                                                    : gen_primes(search_n);
    RankStrategy strategy = search_strategy == "enumerate" ? RankStrategy::Enumerate
                            : search_strategy == "mitm"    ? RankStrategy::MeetInTheMiddle
                            : (search_n >= 14 ? RankStrategy::MeetInTheMiddle : RankStrategy::Enumerate);
    RankOracle oracle(basis, search_n, search_k, strategy, global.digits, global.budget);
    SearchResult result = order_search(parse_target(search_target), oracle);
    if (!result.preimage) {
      std::cerr << "target not in the code family (" << result.comparisons << " comparisons)\n";
      return kExitAbsent;
    }
    std::cout << join_exponents(*result.preimage, '_') << "," << result.comparisons << "\n";
    return kExitOk;
  }

  if (audit_cmd->parsed()) {
    audit_cfg.seed = global.seed;
    audit_cfg.digits = global.digits;
    audit_cfg.budget = global.budget;
    audit_cfg.timings = global.timings;
    audit_cfg.totient_primes.clear();
    for (const std::string& p : CLI::detail::split(audit_primes, ','))
      audit_cfg.totient_primes.push_back(std::stoull(p));
    std::vector<std::string> ids;
    if (audit_claims == "all")
      ids = claim_ids();
    else
      ids = CLI::detail::split(audit_claims, ',');
    nlohmann::json out = nlohmann::json::array();
    for (const std::string& id : ids) {
      AuditReport report = run_claim(id, audit_cfg);  // unknown ids throw -> exit 2
      nlohmann::json j = report.to_json();
      if (auto why = validate_report_json(j))
        fail(Errc::ParameterError, "internal: report failed schema validation: " + *why);
      out.push_back(std::move(j));
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }

  if (jst_cmd->parsed()) {
    JstMatrix jst = build_jst(jst_k, jst_m, global.seed);
    if (jst_audit) {
      nlohmann::json out = nlohmann::json::array();
      for (const AuditReport& r :
           audit_jst_orders(jst_k, jst_m, jst_exponent, global.seed, global.digits, global.budget)) {
        nlohmann::json j = r.to_json();
        if (auto why = validate_report_json(j))
          fail(Errc::ParameterError, "internal: report failed schema validation: " + *why);
        out.push_back(std::move(j));
      }
      std::cout << out.dump(2) << "\n";
      if (!jst_curves) return kExitOk;
    }
    if (jst_curves) {
      std::size_t need = static_cast<std::size_t>(jst.cols());
      PrimeBasis basis = gen_primes(need, global.digits == 0 ? kDefaultDigits : global.digits);
      JstCodes codes = jst_lcodes(jst, basis, global.digits, jst_exponent);
      auto emit = [](const char* name, const std::vector<FixedLog>& values) {
        std::vector<std::pair<FixedLog, std::vector<unsigned>>> pairs;
        for (std::size_t i = 0; i < values.size(); ++i)
          pairs.emplace_back(values[i], std::vector<unsigned>{static_cast<unsigned>(i)});
        OrderCurve curve = order_curve(std::move(pairs));
        for (const OrderEntry& e : curve.entries)
          std::cout << name << ',' << e.rank << ',' << e.value.mantissa().get_str() << ','
                    << e.value.digits() << ',' << e.preimage[0] << "\n";
      };
      emit("code1", codes.code1);
      emit("code2", codes.code2);
      return kExitOk;
    }
    if (global.format == "json") {
      nlohmann::json rows = nlohmann::json::array();
      for (int i = 0; i < jst.s.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < jst.s.cols(); ++j) row.push_back(jst.s(i, j));
        rows.push_back(std::move(row));
      }
      std::cout << nlohmann::json{{"K", jst.k_blocks}, {"M", jst.m_blocks}, {"seed", jst.seed},
                                  {"S", std::move(rows)}}
                       .dump(2)
                << "\n";
    } else {
      for (int i = 0; i < jst.s.rows(); ++i) {
        for (int j = 0; j < jst.s.cols(); ++j) {
          if (j) std::cout << ',';
          std::cout << jst.s(i, j);
        }
        std::cout << "\n";
      }
    }
    return kExitOk;
  }

  if (sphere_cmd->parsed()) {
    std::ostringstream out;
    out.precision(17);
    for (int s = 0; s < sphere_samples; ++s) {
      Eigen::VectorXd x = sibuya_sphere(sphere_n, global.seed + static_cast<std::uint64_t>(s));
      for (int i = 0; i < x.size(); ++i) {
        if (i) out << ',';
        out << x(i);
      }
      out << '\n';
    }
    std::cout << out.str();
    return kExitOk;
  }

  if (bead_cmd->parsed()) {
    std::vector<std::uint64_t> values;
    std::uint64_t v;
    while (std::cin >> v) values.push_back(v);
    if (!std::cin.eof()) fail(Errc::ParameterError, "beadsort reads whitespace-separated naturals");
    std::uint64_t max_value = 0;
    for (std::uint64_t x : values) max_value = std::max(max_value, x);
    auto sorted = bead_sort(values, max_value);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (i) std::cout << ' ';
      std::cout << sorted[i];
    }
    std::cout << "\n";
    return kExitOk;
  }

  if (bench_cmd->parsed()) {
    std::vector<std::size_t> sizes;
    for (const std::string& s : CLI::detail::split(bench_sizes, ',')) sizes.push_back(std::stoul(s));
    std::cout << bench_csv(run_bench(sizes, bench_targets, global.seed, global.timings, global.budget));
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::NotInFactorialDomain:
        return kExitNotInDomain;
      case Errc::BudgetExceeded:
        return kExitBudget;
      default:
        return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
