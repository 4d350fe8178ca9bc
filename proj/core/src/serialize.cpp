#include "ecarm/serialize.hpp"

#include <json.hpp>

namespace ecarm {
namespace serialize {

using json = nlohmann::ordered_json;

namespace {

json int_to_json(const Int& v) { return v.get_str(); }

Int int_from_json(const json& j) { return Int(j.get<std::string>()); }

json int_list_to_json(const std::vector<Int>& vals) {
  json out = json::array();
  for (const Int& v : vals) out.push_back(int_to_json(v));
  return out;
}

std::vector<Int> int_list_from_json(const json& j) {
  std::vector<Int> out;
  for (const auto& v : j) out.push_back(int_from_json(v));
  return out;
}

json pair_list_to_json(const std::vector<std::pair<Int, Int>>& vals) {
  json out = json::array();
  for (const auto& [a, b] : vals)
    out.push_back(json::array({int_to_json(a), int_to_json(b)}));
  return out;
}

std::vector<std::pair<Int, Int>> pair_list_from_json(const json& j) {
  std::vector<std::pair<Int, Int>> out;
  for (const auto& v : j)
    out.emplace_back(int_from_json(v.at(0)), int_from_json(v.at(1)));
  return out;
}

// ---- certificates ----

const char* kind_name(criteria::CertKind k) {
  switch (k) {
    case criteria::CertKind::Carmichael:
      return "carmichael";
    case criteria::CertKind::LucasCarmichael:
      return "lucas-carmichael";
    case criteria::CertKind::EllipticCriterion:
      return "elliptic-criterion";
  }
  return "unknown";
}

criteria::CertKind kind_from_name(const std::string& s) {
  if (s == "carmichael") return criteria::CertKind::Carmichael;
  if (s == "lucas-carmichael") return criteria::CertKind::LucasCarmichael;
  if (s == "elliptic-criterion") return criteria::CertKind::EllipticCriterion;
  throw std::invalid_argument("unknown certificate kind: " + s);
}

const char* statement_name(criteria::PrimeStatement s) {
  switch (s) {
    case criteria::PrimeStatement::PMinusOneDividesNMinusOne:
      return "p-1 | n-1";
    case criteria::PrimeStatement::PPlusOneDividesNPlusOne:
      return "p+1 | n+1";
    case criteria::PrimeStatement::AlphaDividesPPlusOne:
      return "alpha | p+1";
  }
  return "unknown";
}

criteria::PrimeStatement statement_from_name(const std::string& s) {
  if (s == "p-1 | n-1")
    return criteria::PrimeStatement::PMinusOneDividesNMinusOne;
  if (s == "p+1 | n+1")
    return criteria::PrimeStatement::PPlusOneDividesNPlusOne;
  if (s == "alpha | p+1")
    return criteria::PrimeStatement::AlphaDividesPPlusOne;
  throw std::invalid_argument("unknown prime statement: " + s);
}

json certificate_to_json(const criteria::Certificate& cert) {
  json j;
  j["n"] = int_to_json(cert.n);
  j["kind"] = kind_name(cert.kind);
  j["status"] =
      cert.status == criteria::Certificate::Status::Ok ? "ok" : "inconclusive";
  j["unfactored_cofactor"] = int_to_json(cert.unfactored_cofactor);
  j["mr_rounds"] = cert.mr_rounds;
  json factors = json::array();
  for (const auto& [p, e] : cert.factorization.factors)
    factors.push_back(json::array({int_to_json(p), e}));
  j["factors"] = factors;
  j["composite"] = cert.composite_ok;
  j["squarefree"] = cert.squarefree_ok;
  j["odd"] = cert.odd_ok;
  j["omega"] = cert.omega;
  j["omega_odd_required"] = cert.omega_parity_required;
  j["omega_odd"] = cert.omega_parity_ok;
  json checks = json::array();
  for (const auto& pc : cert.prime_checks) {
    json c;
    c["p"] = int_to_json(pc.p);
    c["statement"] = statement_name(pc.statement);
    c["ok"] = pc.ok;
    checks.push_back(c);
  }
  j["prime_checks"] = checks;
  j["verdict"] = cert.verdict;
  return j;
}

criteria::Certificate certificate_from_json(const json& j) {
  criteria::Certificate cert;
  cert.n = int_from_json(j.at("n"));
  cert.kind = kind_from_name(j.at("kind").get<std::string>());
  cert.status = j.at("status").get<std::string>() == "ok"
                    ? criteria::Certificate::Status::Ok
                    : criteria::Certificate::Status::Inconclusive;
  cert.unfactored_cofactor = int_from_json(j.at("unfactored_cofactor"));
  cert.mr_rounds = j.at("mr_rounds").get<int>();
  cert.factorization.n = cert.n;
  for (const auto& f : j.at("factors"))
    cert.factorization.factors.emplace_back(int_from_json(f.at(0)),
                                            f.at(1).get<unsigned>());
  cert.composite_ok = j.at("composite").get<bool>();
  cert.squarefree_ok = j.at("squarefree").get<bool>();
  cert.odd_ok = j.at("odd").get<bool>();
  cert.omega = j.at("omega").get<unsigned>();
  cert.omega_parity_required = j.at("omega_odd_required").get<bool>();
  cert.omega_parity_ok = j.at("omega_odd").get<bool>();
  for (const auto& c : j.at("prime_checks")) {
    criteria::PrimeCheck pc;
    pc.p = int_from_json(c.at("p"));
    pc.statement = statement_from_name(c.at("statement").get<std::string>());
    pc.ok = c.at("ok").get<bool>();
    cert.prime_checks.push_back(std::move(pc));
  }
  cert.verdict = j.at("verdict").get<bool>();
  return cert;
}

// ---- gordon reports ----

const char* reason_name(ec::InapplicableReason r) {
  switch (r) {
    case ec::InapplicableReason::NEvenOrSmall:
      return "n-even-or-small";
    case ec::InapplicableReason::SharesFactorWithSixDelta:
      return "shares-factor-with-6delta";
    case ec::InapplicableReason::JacobiNotMinusOne:
      return "jacobi-not-minus-one";
  }
  return "unknown";
}

ec::InapplicableReason reason_from_name(const std::string& s) {
  if (s == "n-even-or-small") return ec::InapplicableReason::NEvenOrSmall;
  if (s == "shares-factor-with-6delta")
    return ec::InapplicableReason::SharesFactorWithSixDelta;
  if (s == "jacobi-not-minus-one")
    return ec::InapplicableReason::JacobiNotMinusOne;
  throw std::invalid_argument("unknown inapplicability reason: " + s);
}

json outcome_to_json(const ec::GordonOutcome& o) {
  json j;
  switch (o.kind) {
    case ec::GordonOutcome::Kind::Inapplicable:
      j["outcome"] = "inapplicable";
      j["reason"] = reason_name(o.reason);
      break;
    case ec::GordonOutcome::Kind::Composite:
      j["outcome"] = "composite";
      if (o.witness == ec::CompositeWitness::NontrivialGcd) {
        j["witness"] = "nontrivial-gcd";
        j["gcd"] = int_to_json(o.gcd_witness);
      } else {
        j["witness"] = "nonzero-final-point";
      }
      break;
    case ec::GordonOutcome::Kind::ProbablePrime:
      j["outcome"] = "probable-prime";
      break;
  }
  return j;
}

ec::GordonOutcome outcome_from_json(const json& j) {
  std::string outcome = j.at("outcome").get<std::string>();
  if (outcome == "inapplicable")
    return ec::GordonOutcome::inapplicable(
        reason_from_name(j.at("reason").get<std::string>()));
  if (outcome == "composite") {
    if (j.at("witness").get<std::string>() == "nontrivial-gcd")
      return ec::GordonOutcome::composite_gcd(int_from_json(j.at("gcd")));
    return ec::GordonOutcome::composite_point();
  }
  if (outcome == "probable-prime") return ec::GordonOutcome::probable_prime();
  throw std::invalid_argument("unknown gordon outcome: " + outcome);
}

json gordon_report_to_json(const ec::GordonReport& report) {
  json j;
  j["n"] = int_to_json(report.n);
  json curves = json::array();
  for (const auto& [name, outcome] : report.outcomes) {
    json c;
    c["curve"] = name;
    json o = outcome_to_json(outcome);
    c.update(o);
    curves.push_back(c);
  }
  j["curves"] = curves;
  j["applicable_count"] = report.applicable_count;
  j["any_composite_witness"] = report.any_composite_witness;
  j["all_applicable_probable_prime"] = report.all_applicable_probable_prime;
  return j;
}

ec::GordonReport gordon_report_from_json(const json& j) {
  ec::GordonReport report;
  report.n = int_from_json(j.at("n"));
  for (const auto& c : j.at("curves"))
    report.outcomes.emplace_back(c.at("curve").get<std::string>(),
                                 outcome_from_json(c));
  report.applicable_count = j.at("applicable_count").get<int>();
  report.any_composite_witness = j.at("any_composite_witness").get<bool>();
  report.all_applicable_probable_prime =
      j.at("all_applicable_probable_prime").get<bool>();
  return report;
}

// ---- sieve params and sets ----

json params_to_json(const construct::SieveParams& p) {
  json j;
  j["y"] = p.y;
  j["theta"] = p.theta;
  j["alpha_prime"] = int_to_json(p.alpha_prime);
  j["k_max"] = p.k_max;
  j["x_bound"] = int_to_json(p.x_bound);
  j["b_exponent"] = p.b_exponent;
  return j;
}

construct::SieveParams params_from_json(const json& j) {
  construct::SieveParams p;
  p.y = j.at("y").get<double>();
  p.theta = j.at("theta").get<double>();
  p.alpha_prime = int_from_json(j.at("alpha_prime"));
  p.k_max = j.at("k_max").get<uint64_t>();
  p.x_bound = int_from_json(j.at("x_bound"));
  p.b_exponent = j.at("b_exponent").get<double>();
  return p;
}

json qset_to_json(const construct::QSet& q) {
  json j;
  j["params"] = params_to_json(q.params);
  j["window_low"] = q.window_low;
  j["window_high"] = q.window_high;
  j["q"] = int_list_to_json(q.q_list);
  j["lemma1_count_shape"] = q.size_bound_shape;
  return j;
}

construct::QSet qset_from_json(const json& j) {
  construct::QSet q;
  q.params = params_from_json(j.at("params"));
  q.window_low = j.at("window_low").get<double>();
  q.window_high = j.at("window_high").get<double>();
  q.q_list = int_list_from_json(j.at("q"));
  q.size_bound_shape = j.at("lemma1_count_shape").get<double>();
  return q;
}

json stats_to_json(const construct::GroupStats& st) {
  json j;
  j["L"] = int_to_json(st.L);
  j["q"] = int_list_to_json(st.q_list);
  j["omega_L"] = st.omega_L;
  j["lambda_G"] = int_to_json(st.lambda_G);
  j["order_G"] = int_to_json(st.order_G);
  j["s_G"] = int_to_json(st.s_G);
  j["n_G_bound"] = int_to_json(st.n_G_bound);
  j["j"] = int_to_json(st.j);
  j["j_odd"] = st.j_odd;
  j["t_reference"] = st.t_reference;
  j["reciprocal_sum"] = st.reciprocal_sum;
  j["reciprocal_sum_small"] = st.reciprocal_small;
  j["x_full_log10"] = st.x_full_log10;
  j["lemma4_log_s_cap"] = st.log_s_cap;
  j["lemma4_log_n_cap"] = st.log_n_cap;
  return j;
}

construct::GroupStats stats_from_json(const json& j) {
  construct::GroupStats st;
  st.L = int_from_json(j.at("L"));
  st.q_list = int_list_from_json(j.at("q"));
  st.omega_L = j.at("omega_L").get<unsigned>();
  st.lambda_G = int_from_json(j.at("lambda_G"));
  st.order_G = int_from_json(j.at("order_G"));
  st.s_G = int_from_json(j.at("s_G"));
  st.n_G_bound = int_from_json(j.at("n_G_bound"));
  st.j = int_from_json(j.at("j"));
  st.j_odd = j.at("j_odd").get<bool>();
  st.t_reference = j.at("t_reference").get<double>();
  st.reciprocal_sum = j.at("reciprocal_sum").get<double>();
  st.reciprocal_small = j.at("reciprocal_sum_small").get<bool>();
  st.x_full_log10 = j.at("x_full_log10").get<double>();
  st.log_s_cap = j.at("lemma4_log_s_cap").get<double>();
  st.log_n_cap = j.at("lemma4_log_n_cap").get<double>();
  return st;
}

json kscan_to_json(const construct::KScan& scan) {
  json j;
  j["found"] = scan.found;
  j["L"] = int_to_json(scan.pset.L);
  j["k"] = scan.pset.k;
  j["alpha_prime"] = int_to_json(scan.pset.alpha_prime);
  j["entries"] = pair_list_to_json(scan.pset.entries);
  j["k_scanned"] = scan.k_scanned;
  j["best_count"] = scan.best_count;
  j["lemma3_count_bound"] = scan.count_bound;
  return j;
}

construct::KScan kscan_from_json(const json& j) {
  construct::KScan scan;
  scan.found = j.at("found").get<bool>();
  scan.pset.L = int_from_json(j.at("L"));
  scan.pset.k = j.at("k").get<uint64_t>();
  scan.pset.alpha_prime = int_from_json(j.at("alpha_prime"));
  scan.pset.entries = pair_list_from_json(j.at("entries"));
  scan.k_scanned = j.at("k_scanned").get<uint64_t>();
  scan.best_count = j.at("best_count").get<uint64_t>();
  scan.count_bound = j.at("lemma3_count_bound").get<double>();
  return scan;
}

json result_to_json(const construct::ConstructionResult& r) {
  json j;
  j["m"] = int_to_json(r.m);
  j["subset"] = pair_list_to_json(r.subset);
  j["subset_size"] = r.subset_size;
  j["residue_mod_L"] = int_to_json(r.trace_residue);
  j["sign"] = r.trace_sign;
  j["certificate"] = certificate_to_json(r.certificate);
  return j;
}

construct::ConstructionResult result_from_json(const json& j) {
  construct::ConstructionResult r;
  r.m = int_from_json(j.at("m"));
  r.subset = pair_list_from_json(j.at("subset"));
  r.subset_size = j.at("subset_size").get<unsigned>();
  r.trace_residue = int_from_json(j.at("residue_mod_L"));
  r.trace_sign = j.at("sign").get<int>();
  r.certificate = certificate_from_json(j.at("certificate"));
  return r;
}

json construction_report_to_json(const construct::ConstructionReport& rep) {
  json j;
  j["params"] = params_to_json(rep.params);
  json limits;
  limits["max_size"] = rep.limits.max_size;
  limits["max_results"] = rep.limits.max_results;
  limits["table_cap"] = rep.limits.table_cap;
  j["limits"] = limits;
  j["status"] = construct::to_string(rep.status);
  j["status_note"] = rep.status_note;
  j["qset"] = qset_to_json(rep.qset);
  j["stats"] = rep.stats ? stats_to_json(*rep.stats) : json(nullptr);
  j["kscan"] = rep.kscan ? kscan_to_json(*rep.kscan) : json(nullptr);
  json results = json::array();
  for (const auto& r : rep.results) results.push_back(result_to_json(r));
  j["results"] = results;
  j["table_overflow"] = rep.table_overflow;
  json diag;
  diag["lemma1_q_count_shape"] = rep.diagnostics.lemma1_q_count_shape;
  diag["lemma2_qnr_count_shape"] = rep.diagnostics.lemma2_qnr_count_shape;
  diag["lemma3_k_count_bound"] = rep.diagnostics.lemma3_k_count_bound;
  diag["lemma4_log_s_cap"] = rep.diagnostics.lemma4_log_s_cap;
  diag["lemma4_log_n_cap"] = rep.diagnostics.lemma4_log_n_cap;
  diag["t_reference"] = rep.diagnostics.t_reference;
  j["diagnostics"] = diag;
  return j;
}

construct::PipelineStatus status_from_name(const std::string& s) {
  if (s == "emitted") return construct::PipelineStatus::Emitted;
  if (s == "clean-but-empty") return construct::PipelineStatus::CleanButEmpty;
  if (s == "empty-q-set") return construct::PipelineStatus::EmptyQSet;
  if (s == "empty-prime-set") return construct::PipelineStatus::EmptyPrimeSet;
  throw std::invalid_argument("unknown pipeline status: " + s);
}

construct::ConstructionReport construction_report_from_json(const json& j) {
  construct::ConstructionReport rep;
  rep.params = params_from_json(j.at("params"));
  rep.limits.max_size = j.at("limits").at("max_size").get<unsigned>();
  rep.limits.max_results = j.at("limits").at("max_results").get<unsigned>();
  rep.limits.table_cap = j.at("limits").at("table_cap").get<uint64_t>();
  rep.status = status_from_name(j.at("status").get<std::string>());
  rep.status_note = j.at("status_note").get<std::string>();
  rep.qset = qset_from_json(j.at("qset"));
  if (!j.at("stats").is_null()) rep.stats = stats_from_json(j.at("stats"));
  if (!j.at("kscan").is_null()) rep.kscan = kscan_from_json(j.at("kscan"));
  for (const auto& r : j.at("results"))
    rep.results.push_back(result_from_json(r));
  rep.table_overflow = j.at("table_overflow").get<bool>();
  const json& diag = j.at("diagnostics");
  rep.diagnostics.lemma1_q_count_shape =
      diag.at("lemma1_q_count_shape").get<double>();
  rep.diagnostics.lemma2_qnr_count_shape =
      diag.at("lemma2_qnr_count_shape").get<double>();
  rep.diagnostics.lemma3_k_count_bound =
      diag.at("lemma3_k_count_bound").get<double>();
  rep.diagnostics.lemma4_log_s_cap = diag.at("lemma4_log_s_cap").get<double>();
  rep.diagnostics.lemma4_log_n_cap = diag.at("lemma4_log_n_cap").get<double>();
  rep.diagnostics.t_reference = diag.at("t_reference").get<double>();
  return rep;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string to_text(const criteria::Certificate& cert) {
  return dump(certificate_to_json(cert));
}

criteria::Certificate certificate_from_text(const std::string& text) {
  return certificate_from_json(json::parse(text));
}

std::string to_text(const criteria::EnumerationReport& report) {
  json j;
  j["limit"] = report.limit;
  json numbers = json::array();
  for (const auto& cert : report.certificates)
    numbers.push_back(cert.n.get_str());
  j["numbers"] = numbers;
  json certs = json::array();
  for (const auto& cert : report.certificates)
    certs.push_back(certificate_to_json(cert));
  j["certificates"] = certs;
  return dump(j);
}

criteria::EnumerationReport enumeration_from_text(const std::string& text) {
  json j = json::parse(text);
  criteria::EnumerationReport report;
  report.limit = j.at("limit").get<uint64_t>();
  for (const auto& c : j.at("certificates"))
    report.certificates.push_back(certificate_from_json(c));
  return report;
}

std::string to_text(const ec::GordonReport& report) {
  return dump(gordon_report_to_json(report));
}

ec::GordonReport gordon_report_from_text(const std::string& text) {
  return gordon_report_from_json(json::parse(text));
}

std::string to_text(const construct::QSet& qset) {
  return dump(qset_to_json(qset));
}

construct::QSet qset_from_text(const std::string& text) {
  return qset_from_json(json::parse(text));
}

std::string to_text(const construct::GroupStats& stats) {
  return dump(stats_to_json(stats));
}

construct::GroupStats group_stats_from_text(const std::string& text) {
  return stats_from_json(json::parse(text));
}

std::string to_text(const construct::ConstructionReport& report) {
  return dump(construction_report_to_json(report));
}

construct::ConstructionReport construction_report_from_text(
    const std::string& text) {
  return construction_report_from_json(json::parse(text));
}

}  // namespace serialize
}  // namespace ecarm
