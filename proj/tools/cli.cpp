#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ecarm/construct.hpp"
#include "ecarm/criteria.hpp"
#include "ecarm/ec.hpp"
#include "ecarm/serialize.hpp"

namespace ecarm {
namespace cli {

namespace {

struct GlobalOptions {
  std::string format = "human";
  std::string output_path;
  unsigned long seed = modmath::PrimalityPolicy{}.seed;
  unsigned effort = 1;
  std::string catalog_path;
};

criteria::CheckOptions check_options(const GlobalOptions& g) {
  criteria::CheckOptions opts;
  opts.budget.rho_iterations = 10'000'000ULL * g.effort;
  opts.budget.primality.seed = g.seed;
  return opts;
}

std::vector<ec::CurveSpec> resolve_catalog(const GlobalOptions& g) {
  if (!g.catalog_path.empty()) return ec::load_catalog_file(g.catalog_path);
  if (const char* env = std::getenv("ECARM_CATALOG"); env && *env)
    return ec::load_catalog_file(env);
  return ec::builtin_catalog();
}

int emit(const GlobalOptions& g, std::ostream& out, const std::string& human,
         const std::string& structured, int code) {
  const std::string& text = g.format == "structured" ? structured : human;
  if (!g.output_path.empty()) {
    std::ofstream file(g.output_path);
    if (!file) {
      out << "cannot open output file: " << g.output_path << "\n";
      return kUsage;
    }
    file << text;
  } else {
    out << text;
  }
  return code;
}

Int parse_number(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  size_t start = text[0] == '-' ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("malformed number");
  for (size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("malformed number: " + text);
  }
  return Int(text);
}

const char* outcome_label(const ec::GordonOutcome& o) {
  switch (o.kind) {
    case ec::GordonOutcome::Kind::ProbablePrime:
      return "probable-prime";
    case ec::GordonOutcome::Kind::Composite:
      return "composite";
    case ec::GordonOutcome::Kind::Inapplicable:
      break;
  }
  switch (o.reason) {
    case ec::InapplicableReason::NEvenOrSmall:
      return "inapplicable (n even or small)";
    case ec::InapplicableReason::SharesFactorWithSixDelta:
      return "inapplicable (shares factor with 6*delta)";
    case ec::InapplicableReason::JacobiNotMinusOne:
      return "inapplicable (jacobi not -1)";
  }
  return "inapplicable";
}

std::string human_gordon(const ec::GordonReport& report) {
  std::ostringstream os;
  os << "n = " << report.n << "\n";
  for (const auto& [name, outcome] : report.outcomes) {
    os << "  " << name << ": " << outcome_label(outcome);
    if (outcome.kind == ec::GordonOutcome::Kind::Composite) {
      if (outcome.witness == ec::CompositeWitness::NontrivialGcd)
        os << " (factor " << outcome.gcd_witness << ")";
      else
        os << " (final point not at infinity)";
    }
    os << "\n";
  }
  os << "applicable curves: " << report.applicable_count << "\n";
  if (report.any_composite_witness)
    os << "verdict: composite\n";
  else if (report.applicable_count == 0)
    os << "verdict: no applicable curve\n";
  else
    os << "verdict: probable prime on every applicable curve\n";
  return os.str();
}

std::string human_certificate(const criteria::Certificate& cert) {
  std::ostringstream os;
  os << "n = " << cert.n << "\n";
  const char* kind = cert.kind == criteria::CertKind::Carmichael
                         ? "carmichael"
                         : cert.kind == criteria::CertKind::LucasCarmichael
                               ? "lucas-carmichael"
                               : "elliptic-criterion";
  os << "kind: " << kind << "\n";
  if (cert.status == criteria::Certificate::Status::Inconclusive) {
    os << "status: inconclusive (unfactored cofactor "
       << cert.unfactored_cofactor << ")\n";
    os << "verdict: inconclusive\n";
    return os.str();
  }
  os << "factors:";
  for (const auto& [p, e] : cert.factorization.factors) {
    os << ' ' << p;
    if (e > 1) os << '^' << e;
  }
  os << "\n";
  os << "composite: " << (cert.composite_ok ? "yes" : "no")
     << ", squarefree: " << (cert.squarefree_ok ? "yes" : "no");
  if (cert.kind == criteria::CertKind::LucasCarmichael)
    os << ", odd: " << (cert.odd_ok ? "yes" : "no");
  if (cert.kind == criteria::CertKind::EllipticCriterion)
    os << ", omega odd: " << (cert.omega_parity_ok ? "yes" : "no");
  os << "\n";
  for (const auto& pc : cert.prime_checks) {
    const char* stmt =
        pc.statement == criteria::PrimeStatement::PMinusOneDividesNMinusOne
            ? "p-1 | n-1"
            : pc.statement == criteria::PrimeStatement::PPlusOneDividesNPlusOne
                  ? "p+1 | n+1"
                  : "alpha | p+1";
    os << "  p = " << pc.p << ": " << stmt << " "
       << (pc.ok ? "holds" : "fails") << "\n";
  }
  os << "verdict: " << (cert.verdict ? "true" : "false") << "\n";
  return os.str();
}

std::string human_qset(const construct::QSet& q) {
  std::ostringstream os;
  os << "window: [" << q.window_low << ", " << q.window_high << "]\n";
  os << "q (" << q.q_list.size() << "):";
  for (const Int& v : q.q_list) os << ' ' << v;
  os << "\n";
  os << "count bound shape (ineffective constant dropped): "
     << q.size_bound_shape << "\n";
  return os.str();
}

std::string human_stats(const construct::GroupStats& st) {
  std::ostringstream os;
  os << "L = " << st.L << " (omega = " << st.omega_L << ")\n";
  os << "lambda(G) = " << st.lambda_G << "\n";
  os << "|G| = " << st.order_G << "\n";
  os << "s(G) = " << st.s_G << "\n";
  os << "n(G) bound = " << st.n_G_bound << "\n";
  os << "j = " << st.j << (st.j_odd ? " (odd)" : " (even)") << "\n";
  os << "t reference = " << st.t_reference << "\n";
  os << "sum 1/(q-1) = " << st.reciprocal_sum
     << (st.reciprocal_small ? " (<= 1/64)" : " (> 1/64)") << "\n";
  os << "log10 of full-scale x: " << st.x_full_log10 << "\n";
  return os.str();
}

std::string human_construction(const construct::ConstructionReport& rep) {
  std::ostringstream os;
  os << "status: " << construct::to_string(rep.status);
  if (!rep.status_note.empty()) os << " (" << rep.status_note << ")";
  os << "\n";
  os << human_qset(rep.qset);
  if (rep.stats) os << human_stats(*rep.stats);
  if (rep.kscan && rep.kscan->found) {
    os << "k = " << rep.kscan->pset.k << " with "
       << rep.kscan->pset.entries.size() << " primes:";
    for (const auto& [d, p] : rep.kscan->pset.entries)
      os << " (d=" << d << ", p=" << p << ")";
    os << "\n";
    os << "k count bound: " << rep.kscan->count_bound << "\n";
  }
  for (const auto& res : rep.results) {
    os << "emitted m = " << res.m << " = ";
    for (size_t i = 0; i < res.subset.size(); ++i) {
      if (i) os << " * ";
      os << res.subset[i].second;
    }
    os << " (" << res.subset_size << " primes, certified "
       << (res.certificate.verdict ? "true" : "false") << ")\n";
  }
  if (rep.table_overflow) os << "warning: partial-product table overflowed\n";
  return os.str();
}

std::string human_enumeration(const criteria::EnumerationReport& rep) {
  std::ostringstream os;
  os << "lucas-carmichael numbers <= " << rep.limit << ": "
     << rep.certificates.size() << "\n";
  for (const auto& cert : rep.certificates) {
    os << "  " << cert.n << " =";
    for (const auto& [p, e] : cert.factorization.factors) os << ' ' << p;
    os << "\n";
  }
  return os.str();
}

int cmd_gordon(const GlobalOptions& g, const std::string& n_text,
               const std::string& curve_name, std::ostream& out,
               std::ostream& err) {
  Int n;
  try {
    n = parse_number(n_text);
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  std::vector<ec::CurveSpec> catalog = resolve_catalog(g);
  if (!curve_name.empty()) {
    std::vector<ec::CurveSpec> filtered;
    for (const auto& c : catalog) {
      if (c.name == curve_name) filtered.push_back(c);
    }
    if (filtered.empty()) {
      err << "unknown curve: " << curve_name << "\n";
      return kUsage;
    }
    catalog = std::move(filtered);
  }
  ec::GordonReport report = ec::gordon_test_all(n, catalog);
  int code = kOk;
  if (report.any_composite_witness)
    code = kFalse;
  else if (report.applicable_count == 0)
    code = kInapplicable;
  return emit(g, out, human_gordon(report), serialize::to_text(report), code);
}

int cmd_check(const GlobalOptions& g, const std::string& kind,
              const std::string& n_text, std::ostream& out, std::ostream& err) {
  Int n;
  try {
    n = parse_number(n_text);
    if (n < 2) throw std::invalid_argument("check requires n >= 2");
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  criteria::CheckOptions opts = check_options(g);
  criteria::Certificate cert;
  if (kind == "carmichael")
    cert = criteria::is_carmichael(n, opts);
  else if (kind == "lucas")
    cert = criteria::is_lucas_carmichael(n, opts);
  else
    cert = criteria::check_elliptic_criterion(n, opts);
  int code = kFalse;
  if (cert.status == criteria::Certificate::Status::Inconclusive)
    code = kInconclusive;
  else if (cert.verdict)
    code = kOk;
  return emit(g, out, human_certificate(cert), serialize::to_text(cert), code);
}

int cmd_enumerate(const GlobalOptions& g, uint64_t limit, std::ostream& out,
                  std::ostream& err) {
  if (limit < 2 || limit > 100'000'000ULL) {
    err << "enumerate: limit must lie in [2, 10^8]\n";
    return kUsage;
  }
  criteria::EnumerationReport report =
      criteria::enumerate_lucas_carmichael(limit);
  return emit(g, out, human_enumeration(report), serialize::to_text(report),
              kOk);
}

int cmd_sieve(const GlobalOptions& g, const construct::SieveParams& params,
              std::ostream& out, std::ostream& err) {
  try {
    params.validate();
  } catch (const std::domain_error& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  construct::QSet q = construct::sieve_q(params);
  return emit(g, out, human_qset(q), serialize::to_text(q),
              q.q_list.empty() ? kEmpty : kOk);
}

int cmd_construct(const GlobalOptions& g, const construct::SieveParams& params,
                  const construct::SearchLimits& limits, std::ostream& out,
                  std::ostream& err) {
  try {
    params.validate();
    if (limits.max_size < 3 || limits.max_size % 2 == 0)
      throw std::domain_error("construct: max-size must be odd and >= 3");
  } catch (const std::domain_error& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  construct::ConstructionReport report =
      construct::run_pipeline(params, limits);
  int code = report.status == construct::PipelineStatus::Emitted ? kOk : kEmpty;
  return emit(g, out, human_construction(report), serialize::to_text(report),
              code);
}

int cmd_stats(const GlobalOptions& g, const std::string& q_csv,
              const std::string& l_text, std::ostream& out, std::ostream& err) {
  std::vector<Int> qs;
  try {
    if (!q_csv.empty()) {
      std::stringstream ss(q_csv);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        qs.push_back(parse_number(item));
      }
    } else {
      Int L = parse_number(l_text);
      if (L < 2) throw std::invalid_argument("stats: L must be >= 2");
      modmath::Factorization f = modmath::factorize(L, check_options(g).budget);
      if (!f.squarefree())
        throw std::invalid_argument("stats: L must be squarefree");
      for (const auto& [p, e] : f.factors) qs.push_back(p);
    }
    if (qs.empty()) throw std::invalid_argument("stats: no primes given");
    for (const Int& q : qs) {
      if (!modmath::is_probable_prime(q))
        throw std::invalid_argument("stats: " + q.get_str() + " is not prime");
    }
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const modmath::PartialFactorizationError&) {
    err << "stats: factorization budget exhausted\n";
    return kInconclusive;
  }
  construct::SieveParams params;  // defaults carry x_bound and alpha'
  construct::GroupStats st;
  try {
    st = construct::group_stats_from_primes(qs, params);
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  return emit(g, out, human_stats(st), serialize::to_text(st), kOk);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"elliptic pseudoprime tests, Korselt-style certificates, and "
               "a Lucas-Carmichael construction pipeline"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"human", "structured"}))
      ->capture_default_str();
  app.add_option("--output", g.output_path, "write the report to a file");
  app.add_option("--seed", g.seed, "seed for probabilistic primality");
  app.add_option("--effort", g.effort,
                 "factorization effort multiplier (rho budget)");
  app.add_option("--catalog", g.catalog_path,
                 "curve catalog file (default: built-in; env ECARM_CATALOG)");

  // gordon
  auto* gordon = app.add_subcommand("gordon", "run the elliptic curve "
                                              "pseudoprimality test");
  std::string gordon_n, gordon_curve;
  gordon->add_option("n", gordon_n, "number to test (decimal)")->required();
  gordon->add_option("--curve", gordon_curve, "restrict to one catalog curve");

  // check
  auto* check = app.add_subcommand("check", "evaluate a Korselt-style "
                                            "criterion with a certificate");
  std::string check_kind, check_n;
  check->add_option("--kind", check_kind, "criterion")
      ->check(CLI::IsMember({"carmichael", "lucas", "elliptic"}))
      ->required();
  check->add_option("n", check_n, "number to check (decimal)")->required();

  // enumerate
  auto* enumerate =
      app.add_subcommand("enumerate", "list Lucas-Carmichael numbers");
  uint64_t enum_limit = 0;
  enumerate->add_option("limit", enum_limit, "upper bound (<= 10^8)")
      ->required();

  // shared sieve / construct parameters
  construct::SieveParams params;
  construct::SearchLimits limits;
  std::string alpha_mode = "lucas";
  std::string x_bound_text = params.x_bound.get_str();
  auto add_sieve_options = [&](CLI::App* cmd) {
    cmd->add_option("--y", params.y, "smoothness bound y")
        ->capture_default_str();
    cmd->add_option("--theta", params.theta, "window exponent in (1, 2)")
        ->capture_default_str();
    cmd->add_option("--alpha-mode", alpha_mode,
                    "lucas (alpha' = 1) or paper (full alpha)")
        ->check(CLI::IsMember({"lucas", "paper"}))
        ->capture_default_str();
    cmd->add_option("--b", params.b_exponent, "reporting exponent B")
        ->capture_default_str();
  };
  auto* sieve = app.add_subcommand("sieve", "sieve the smooth-shifted primes");
  add_sieve_options(sieve);

  auto* construct_cmd =
      app.add_subcommand("construct", "run the whole construction pipeline");
  add_sieve_options(construct_cmd);
  construct_cmd->add_option("--k-max", params.k_max, "k scan bound")
      ->capture_default_str();
  construct_cmd->add_option("--x-bound", x_bound_text, "prime size cap")
      ->capture_default_str();
  construct_cmd
      ->add_option("--max-size", limits.max_size, "odd subset size cap")
      ->capture_default_str();
  construct_cmd
      ->add_option("--max-results", limits.max_results, "emission cap")
      ->capture_default_str();

  // stats
  auto* stats = app.add_subcommand("stats", "group statistics for a modulus L");
  std::string stats_q, stats_l;
  stats->add_option("--q", stats_q, "comma-separated primes");
  stats->add_option("L", stats_l, "squarefree modulus (decimal)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (gordon->parsed()) return cmd_gordon(g, gordon_n, gordon_curve, out, err);
    if (check->parsed()) return cmd_check(g, check_kind, check_n, out, err);
    if (enumerate->parsed()) return cmd_enumerate(g, enum_limit, out, err);
    if (sieve->parsed() || construct_cmd->parsed()) {
      params.alpha_prime =
          alpha_mode == "paper" ? criteria::alpha_constant().value : Int(1);
      try {
        params.x_bound = parse_number(x_bound_text);
      } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kUsage;
      }
      if (sieve->parsed()) return cmd_sieve(g, params, out, err);
      return cmd_construct(g, params, limits, out, err);
    }
    if (stats->parsed()) {
      if (stats_q.empty() && stats_l.empty()) {
        err << "stats: give --q or a modulus L\n";
        return kUsage;
      }
      return cmd_stats(g, stats_q, stats_l, out, err);
    }
  } catch (const ec::CatalogError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  err << "no subcommand\n";
  return kUsage;
}

}  // namespace cli
}  // namespace ecarm
