#include "ecarm/criteria.hpp"

#include <algorithm>

namespace ecarm {
namespace criteria {

using modmath::FactorBudget;
using modmath::Factorization;
using modmath::PartialFactorizationError;

const AlphaConstant& alpha_constant() {
  static const AlphaConstant alpha = [] {
    AlphaConstant a;
    a.factors = {8, 3, 7, 11, 19, 43, 67, 163};
    a.value = 1;
    for (const Int& f : a.factors) a.value *= f;
    return a;
  }();
  return alpha;
}

namespace {

Certificate start_certificate(const Int& n, CertKind kind,
                              const CheckOptions& opts) {
  if (n < 2) throw std::domain_error("certificate checks require n >= 2");
  Certificate cert;
  cert.n = n;
  cert.kind = kind;
  cert.mr_rounds = opts.budget.primality.rounds;
  try {
    cert.factorization = modmath::factorize(n, opts.budget);
  } catch (const PartialFactorizationError& err) {
    cert.status = Certificate::Status::Inconclusive;
    cert.factorization = err.partial();
    cert.unfactored_cofactor = err.cofactor();
    cert.verdict = false;
    return cert;
  }
  cert.status = Certificate::Status::Ok;
  const Factorization& f = cert.factorization;
  cert.omega = f.omega();
  cert.composite_ok = f.big_omega() >= 2;
  cert.squarefree_ok = f.squarefree();
  return cert;
}

void finish_verdict(Certificate& cert) {
  if (cert.status != Certificate::Status::Ok) {
    cert.verdict = false;
    return;
  }
  bool ok = cert.composite_ok && cert.squarefree_ok && cert.odd_ok &&
            cert.omega_parity_ok;
  for (const PrimeCheck& pc : cert.prime_checks) ok = ok && pc.ok;
  cert.verdict = ok;
}

}  // namespace

Certificate is_carmichael(const Int& n, const CheckOptions& opts) {
  Certificate cert = start_certificate(n, CertKind::Carmichael, opts);
  if (cert.status != Certificate::Status::Ok) return cert;
  for (const auto& [p, e] : cert.factorization.factors) {
    PrimeCheck pc;
    pc.p = p;
    pc.statement = PrimeStatement::PMinusOneDividesNMinusOne;
    pc.ok = mpz_divisible_p(Int(n - 1).get_mpz_t(), Int(p - 1).get_mpz_t());
    cert.prime_checks.push_back(std::move(pc));
  }
  finish_verdict(cert);
  return cert;
}

Certificate is_lucas_carmichael(const Int& n, const CheckOptions& opts) {
  Certificate cert = start_certificate(n, CertKind::LucasCarmichael, opts);
  if (cert.status != Certificate::Status::Ok) return cert;
  cert.odd_ok = mpz_odd_p(n.get_mpz_t());
  for (const auto& [p, e] : cert.factorization.factors) {
    PrimeCheck pc;
    pc.p = p;
    pc.statement = PrimeStatement::PPlusOneDividesNPlusOne;
    pc.ok = mpz_divisible_p(Int(n + 1).get_mpz_t(), Int(p + 1).get_mpz_t());
    cert.prime_checks.push_back(std::move(pc));
  }
  finish_verdict(cert);
  return cert;
}

Certificate check_elliptic_criterion(const Int& n, const CheckOptions& opts) {
  Certificate cert = start_certificate(n, CertKind::EllipticCriterion, opts);
  if (cert.status != Certificate::Status::Ok) return cert;
  cert.omega_parity_required = true;
  cert.omega_parity_ok = (cert.omega % 2) == 1;
  const Int& alpha = alpha_constant().value;
  for (const auto& [p, e] : cert.factorization.factors) {
    PrimeCheck alpha_pc;
    alpha_pc.p = p;
    alpha_pc.statement = PrimeStatement::AlphaDividesPPlusOne;
    alpha_pc.ok = mpz_divisible_p(Int(p + 1).get_mpz_t(), alpha.get_mpz_t());
    cert.prime_checks.push_back(std::move(alpha_pc));
    PrimeCheck div_pc;
    div_pc.p = p;
    div_pc.statement = PrimeStatement::PPlusOneDividesNPlusOne;
    div_pc.ok = mpz_divisible_p(Int(n + 1).get_mpz_t(), Int(p + 1).get_mpz_t());
    cert.prime_checks.push_back(std::move(div_pc));
  }
  finish_verdict(cert);
  return cert;
}

bool reverify(const Certificate& cert) {
  if (cert.status != Certificate::Status::Ok) return cert.verdict == false;
  const Factorization& f = cert.factorization;
  bool recomputed = f.product() == cert.n;
  for (const auto& [p, e] : f.factors)
    recomputed = recomputed && modmath::is_probable_prime(p);
  recomputed = recomputed && f.big_omega() >= 2 && f.squarefree();
  if (cert.kind == CertKind::LucasCarmichael)
    recomputed = recomputed && mpz_odd_p(cert.n.get_mpz_t());
  if (cert.kind == CertKind::EllipticCriterion)
    recomputed = recomputed && (f.omega() % 2) == 1;
  for (const PrimeCheck& pc : cert.prime_checks) {
    bool ok = false;
    switch (pc.statement) {
      case PrimeStatement::PMinusOneDividesNMinusOne:
        ok = mpz_divisible_p(Int(cert.n - 1).get_mpz_t(),
                             Int(pc.p - 1).get_mpz_t());
        break;
      case PrimeStatement::PPlusOneDividesNPlusOne:
        ok = mpz_divisible_p(Int(cert.n + 1).get_mpz_t(),
                             Int(pc.p + 1).get_mpz_t());
        break;
      case PrimeStatement::AlphaDividesPPlusOne:
        ok = mpz_divisible_p(Int(pc.p + 1).get_mpz_t(),
                             alpha_constant().value.get_mpz_t());
        break;
    }
    recomputed = recomputed && ok;
  }
  return recomputed == cert.verdict;
}

EnumerationReport enumerate_lucas_carmichael(uint64_t limit) {
  if (limit < 2) throw std::domain_error("enumerate: limit must be >= 2");
  if (limit > 100'000'000ULL)
    throw std::domain_error("enumerate: limit capped at 10^8");
  EnumerationReport report;
  report.limit = limit;
  const auto& primes = modmath::small_primes();
  for (uint64_t n = 3; n <= limit; n += 2) {
    uint64_t m = n;
    unsigned count = 0;
    bool ok = true;
    for (uint32_t p : primes) {
      uint64_t pp = static_cast<uint64_t>(p) * p;
      if (pp > m) break;
      if (m % p != 0) continue;
      m /= p;
      if (m % p == 0 || (n + 1) % (p + 1) != 0) {
        ok = false;
        break;
      }
      ++count;
    }
    if (!ok) continue;
    if (m > 1) {
      if (m == n) continue;  // n itself prime
      if ((n + 1) % (m + 1) != 0) continue;
      ++count;
    }
    if (count < 2) continue;
    report.certificates.push_back(is_lucas_carmichael(Int(n)));
  }
  return report;
}

CrossCheckReport cross_check_criterion_vs_gordon(
    const Int& n, const std::vector<ec::CurveSpec>& catalog,
    const CheckOptions& opts) {
  CrossCheckReport report;
  report.n = n;
  report.certificate = check_elliptic_criterion(n, opts);
  report.precondition_ok = report.certificate.verdict;
  if (!report.precondition_ok) return report;
  report.gordon = ec::gordon_test_all(n, catalog);
  for (const auto& [name, outcome] : report.gordon.outcomes) {
    if (outcome.kind == ec::GordonOutcome::Kind::Composite)
      report.alarms.push_back(name);
  }
  return report;
}

}  // namespace criteria
}  // namespace ecarm
