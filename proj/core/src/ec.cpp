#include "ecarm/ec.hpp"

#include <algorithm>

namespace ecarm {
namespace ec {

using modmath::jacobi;
using modmath::mod_inv;

CurveSpec CurveSpec::make(std::string name, Int a, Int b, Int d, Int x0,
                          Int y0, std::string note) {
  CurveSpec c;
  c.name = std::move(name);
  c.a = std::move(a);
  c.b = std::move(b);
  c.d = std::move(d);
  c.delta = 4 * c.a * c.a * c.a + 27 * c.b * c.b;
  c.x0 = std::move(x0);
  c.y0 = std::move(y0);
  c.note = std::move(note);
  return c;
}

PointModN PointModN::at_infinity(Int n) {
  PointModN p;
  p.modulus = std::move(n);
  p.infinity = true;
  return p;
}

PointModN PointModN::affine(Int n, Int x, Int y) {
  PointModN p;
  p.modulus = n;
  p.infinity = false;
  mpz_mod(p.x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
  mpz_mod(p.y.get_mpz_t(), y.get_mpz_t(), n.get_mpz_t());
  return p;
}

bool PointModN::operator==(const PointModN& other) const {
  if (modulus != other.modulus) return false;
  if (infinity || other.infinity) return infinity == other.infinity;
  return x == other.x && y == other.y;
}

namespace {

void check_point(const PointModN& p, const Int& n, const char* what) {
  if (p.modulus != n)
    throw std::domain_error(std::string(what) + ": point modulus mismatch");
}

}  // namespace

AddResult ec_add(const PointModN& p1, const PointModN& p2,
                 const CurveSpec& curve, const Int& n) {
  if (n < 5 || mpz_even_p(n.get_mpz_t()))
    throw std::domain_error("ec_add: modulus must be odd and >= 5");
  check_point(p1, n, "ec_add");
  check_point(p2, n, "ec_add");
  if (p1.infinity) return p2;
  if (p2.infinity) return p1;

  Int num, den;
  bool same_x = (p1.x == p2.x);
  if (same_x && (p1.y + p2.y) % n == 0) return PointModN::at_infinity(n);
  if (same_x && p1.y == p2.y) {
    num = (3 * p1.x * p1.x + curve.a) % n;
    den = (2 * p1.y) % n;
  } else {
    num = (p2.y - p1.y) % n;
    den = (p2.x - p1.x) % n;
  }
  auto inv = mod_inv(den, n);
  if (!inv.invertible) {
    if (inv.value == n) return PointModN::at_infinity(n);
    return FactorFound{inv.value};
  }
  Int s = (num * inv.value) % n;
  Int x3 = (s * s - p1.x - p2.x) % n;
  if (x3 < 0) x3 += n;
  Int y3 = (s * (p1.x - x3) - p1.y) % n;
  if (y3 < 0) y3 += n;
  return PointModN::affine(n, x3, y3);
}

AddResult ec_scalar_mul(const Int& m, const PointModN& p,
                        const CurveSpec& curve, const Int& n) {
  if (m < 0) throw std::domain_error("ec_scalar_mul: negative multiplier");
  check_point(p, n, "ec_scalar_mul");
  PointModN acc = PointModN::at_infinity(n);
  PointModN base = p;
  Int k = m;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) {
      AddResult r = ec_add(acc, base, curve, n);
      if (found_factor(r)) return r;
      acc = std::get<PointModN>(r);
    }
    k >>= 1;
    if (k > 0) {
      AddResult r = ec_add(base, base, curve, n);
      if (found_factor(r)) return r;
      base = std::get<PointModN>(r);
    }
  }
  return acc;
}

bool GordonOutcome::operator==(const GordonOutcome& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Kind::Inapplicable:
      return reason == other.reason;
    case Kind::Composite:
      return witness == other.witness &&
             (witness != CompositeWitness::NontrivialGcd ||
              gcd_witness == other.gcd_witness);
    case Kind::ProbablePrime:
      return true;
  }
  return false;
}

GordonOutcome GordonOutcome::inapplicable(InapplicableReason r) {
  GordonOutcome o;
  o.kind = Kind::Inapplicable;
  o.reason = r;
  return o;
}

GordonOutcome GordonOutcome::composite_gcd(Int g) {
  GordonOutcome o;
  o.kind = Kind::Composite;
  o.witness = CompositeWitness::NontrivialGcd;
  o.gcd_witness = std::move(g);
  return o;
}

GordonOutcome GordonOutcome::composite_point() {
  GordonOutcome o;
  o.kind = Kind::Composite;
  o.witness = CompositeWitness::NonzeroFinalPoint;
  return o;
}

GordonOutcome GordonOutcome::probable_prime() {
  GordonOutcome o;
  o.kind = Kind::ProbablePrime;
  return o;
}

GordonOutcome gordon_test(const Int& n, const CurveSpec& curve) {
  if (n < 5 || mpz_even_p(n.get_mpz_t()))
    return GordonOutcome::inapplicable(InapplicableReason::NEvenOrSmall);
  Int g;
  Int six_delta = 6 * curve.delta;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), six_delta.get_mpz_t());
  if (g != 1)
    return GordonOutcome::inapplicable(
        InapplicableReason::SharesFactorWithSixDelta);
  if (jacobi(-curve.d, n) != -1)
    return GordonOutcome::inapplicable(InapplicableReason::JacobiNotMinusOne);

  PointModN base = PointModN::affine(n, curve.x0, curve.y0);
  AddResult r = ec_scalar_mul(n + 1, base, curve, n);
  if (found_factor(r))
    return GordonOutcome::composite_gcd(std::get<FactorFound>(r).g);
  const PointModN& final_point = std::get<PointModN>(r);
  if (final_point.infinity) return GordonOutcome::probable_prime();
  return GordonOutcome::composite_point();
}

GordonReport gordon_test_all(const Int& n,
                             const std::vector<CurveSpec>& catalog) {
  if (catalog.empty())
    throw std::domain_error("gordon_test_all: empty catalog");
  GordonReport report;
  report.n = n;
  int applicable = 0;
  bool any_composite = false;
  bool all_pp = true;
  for (const CurveSpec& curve : catalog) {
    GordonOutcome o = gordon_test(n, curve);
    if (o.kind != GordonOutcome::Kind::Inapplicable) {
      ++applicable;
      if (o.kind == GordonOutcome::Kind::Composite) any_composite = true;
      if (o.kind != GordonOutcome::Kind::ProbablePrime) all_pp = false;
    }
    report.outcomes.emplace_back(curve.name, std::move(o));
  }
  report.applicable_count = applicable;
  report.any_composite_witness = any_composite;
  report.all_applicable_probable_prime = applicable > 0 && all_pp;
  return report;
}

namespace {

// Exact order of a point mod a small prime p by repeated addition.
uint64_t point_order_mod_p(const CurveSpec& curve, uint32_t p, const Int& x0,
                           const Int& y0) {
  Int np(p);
  PointModN base = PointModN::affine(np, x0, y0);
  PointModN acc = base;
  uint64_t order = 1;
  while (!acc.infinity) {
    AddResult r = ec_add(acc, base, curve, np);
    // Addition mod a prime never surfaces a factor.
    acc = std::get<PointModN>(r);
    ++order;
  }
  return order;
}

}  // namespace

CatalogCheck verify_catalog_entry(const CurveSpec& curve) {
  CatalogCheck check;
  check.delta_nonzero =
      (curve.delta == 4 * curve.a * curve.a * curve.a + 27 * curve.b * curve.b) &&
      curve.delta != 0;
  if (!check.delta_nonzero) {
    check.failure = "delta is zero or inconsistent";
    return check;
  }
  check.point_on_curve =
      curve.y0 * curve.y0 ==
      curve.x0 * curve.x0 * curve.x0 + curve.a * curve.x0 + curve.b;
  if (!check.point_on_curve) {
    check.failure = "base point not on curve over Z";
    return check;
  }

  Int six_delta = 6 * curve.delta;
  std::vector<uint32_t> goods;
  for (uint32_t p : modmath::small_primes()) {
    if (p < 5) continue;
    if (mpz_divisible_ui_p(six_delta.get_mpz_t(), p)) continue;
    goods.push_back(p);
    if (goods.size() == 2) break;
  }
  check.prime1 = goods[0];
  check.prime2 = goods[1];
  check.order1 = point_order_mod_p(curve, goods[0], curve.x0, curve.y0);
  check.order2 = point_order_mod_p(curve, goods[1], curve.x0, curve.y0);
  // Torsion points keep their exact order at every good odd prime, and
  // rational torsion order is at most 12.
  check.non_torsion_evidence =
      check.order1 != check.order2 || check.order1 > 12 || check.order2 > 12;
  if (!check.non_torsion_evidence) {
    check.failure = "no non-torsion evidence: equal reduction orders <= 12";
    return check;
  }
  check.accepted = true;
  return check;
}

}  // namespace ec
}  // namespace ecarm
