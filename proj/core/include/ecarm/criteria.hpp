#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecarm/ec.hpp"
#include "ecarm/modmath.hpp"

namespace ecarm {
namespace criteria {

/// The fixed constant 8*3*7*11*19*43*67*163 = 16488700536 from the elliptic
/// criterion: a prime p with alpha | p+1 is inert in every class-number-one
/// imaginary quadratic field, so all its CM reductions are supersingular.
struct AlphaConstant {
  Int value;
  std::vector<Int> factors;
};
const AlphaConstant& alpha_constant();

enum class CertKind { Carmichael, LucasCarmichael, EllipticCriterion };

enum class PrimeStatement {
  PMinusOneDividesNMinusOne,  // p-1 | n-1
  PPlusOneDividesNPlusOne,    // p+1 | n+1
  AlphaDividesPPlusOne,       // alpha | p+1
};

struct PrimeCheck {
  Int p;
  PrimeStatement statement;
  bool ok = false;
};

struct CheckOptions {
  modmath::FactorBudget budget;
};

/// A machine-checkable record that a number satisfies (or fails) one of the
/// Korselt-style criteria. verdict is the conjunction of all recorded checks.
struct Certificate {
  Int n;
  CertKind kind = CertKind::Carmichael;
  enum class Status { Ok, Inconclusive } status = Status::Ok;
  Int unfactored_cofactor = 1;  // > 1 when status is Inconclusive
  int mr_rounds = 0;            // primality confidence basis for the factors
  modmath::Factorization factorization;
  bool composite_ok = false;
  bool squarefree_ok = false;
  bool odd_ok = true;       // enforced for the Lucas-Carmichael kind
  unsigned omega = 0;
  bool omega_parity_required = false;  // elliptic kind requires odd omega
  bool omega_parity_ok = true;
  std::vector<PrimeCheck> prime_checks;
  bool verdict = false;
};

/// Korselt: n composite, squarefree, and p-1 | n-1 for every prime p | n.
Certificate is_carmichael(const Int& n, const CheckOptions& opts = {});

/// n composite, squarefree, odd, and p+1 | n+1 for every prime p | n.
Certificate is_lucas_carmichael(const Int& n, const CheckOptions& opts = {});

/// n composite, squarefree, omega(n) odd, and for every prime p | n both
/// alpha | p+1 and p+1 | n+1.
Certificate check_elliptic_criterion(const Int& n, const CheckOptions& opts = {});

/// Re-runs every check recorded in a certificate from scratch and returns
/// whether the reproduced verdict matches.
bool reverify(const Certificate& cert);

struct EnumerationReport {
  uint64_t limit = 0;
  std::vector<Certificate> certificates;
};

/// All Lucas-Carmichael numbers <= limit in increasing order, certified.
/// Trial division only; limit capped at 10^8.
EnumerationReport enumerate_lucas_carmichael(uint64_t limit);

struct CrossCheckReport {
  Int n;
  bool precondition_ok = false;  // check_elliptic_criterion verdict
  Certificate certificate;
  ec::GordonReport gordon;
  /// Applicable curves whose Gordon test reports Composite. Nonempty is a
  /// soundness alarm: the criterion guarantees probable-prime outcomes.
  std::vector<std::string> alarms;
};

CrossCheckReport cross_check_criterion_vs_gordon(
    const Int& n, const std::vector<ec::CurveSpec>& catalog,
    const CheckOptions& opts = {});

}  // namespace criteria
}  // namespace ecarm
