#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ecarm/modmath.hpp"

namespace ecarm {
namespace ec {

/// A CM Weierstrass curve Y^2 = X^3 + aX + b over Q with a designated
/// integral non-torsion base point. d is the (positive, squarefree)
/// discriminant field: the curve has complex multiplication by Q(sqrt(-d)).
struct CurveSpec {
  std::string name;
  Int a;
  Int b;
  Int d;
  Int delta;  // 4a^3 + 27b^2
  Int x0;
  Int y0;
  std::string note;

  static CurveSpec make(std::string name, Int a, Int b, Int d, Int x0, Int y0,
                        std::string note = {});
};

/// A point of a curve reduced modulo an odd integer n >= 5: either the point
/// at infinity or an affine pair of residues.
struct PointModN {
  Int modulus;
  bool infinity = true;
  Int x;
  Int y;

  static PointModN at_infinity(Int n);
  static PointModN affine(Int n, Int x, Int y);

  bool operator==(const PointModN& other) const;
};

/// Emitted when a slope denominator shares a nontrivial factor with n.
struct FactorFound {
  Int g;
};

using AddResult = std::variant<PointModN, FactorFound>;

inline bool found_factor(const AddResult& r) {
  return std::holds_alternative<FactorFound>(r);
}

/// Chord-tangent addition mod n with gcd detection. When a slope denominator
/// d has 1 < gcd(d, n) < n the gcd is surfaced as FactorFound; gcd == n is
/// the inverse-points case and yields infinity.
AddResult ec_add(const PointModN& p1, const PointModN& p2,
                 const CurveSpec& curve, const Int& n);

/// [m]p by double-and-add, propagating FactorFound. [0]p is infinity.
AddResult ec_scalar_mul(const Int& m, const PointModN& p,
                        const CurveSpec& curve, const Int& n);

enum class InapplicableReason {
  NEvenOrSmall,
  SharesFactorWithSixDelta,
  JacobiNotMinusOne,
};

enum class CompositeWitness {
  NontrivialGcd,
  NonzeroFinalPoint,
};

struct GordonOutcome {
  enum class Kind { Inapplicable, Composite, ProbablePrime };
  Kind kind = Kind::Inapplicable;
  InapplicableReason reason = InapplicableReason::NEvenOrSmall;
  CompositeWitness witness = CompositeWitness::NonzeroFinalPoint;
  Int gcd_witness;  // set when witness == NontrivialGcd

  bool operator==(const GordonOutcome& other) const;

  static GordonOutcome inapplicable(InapplicableReason r);
  static GordonOutcome composite_gcd(Int g);
  static GordonOutcome composite_point();
  static GordonOutcome probable_prime();
};

/// Gordon's pseudoprimality test: gate on gcd(n, 6*delta) = 1 and
/// (-d/n) = -1, then decide by whether [n+1]P reduces to infinity mod n.
GordonOutcome gordon_test(const Int& n, const CurveSpec& curve);

struct GordonReport {
  Int n;
  std::vector<std::pair<std::string, GordonOutcome>> outcomes;
  bool any_composite_witness = false;
  bool all_applicable_probable_prime = false;
  int applicable_count = 0;
};

/// Runs gordon_test against every catalog curve. Requires nonempty catalog.
GordonReport gordon_test_all(const Int& n, const std::vector<CurveSpec>& catalog);

struct CatalogCheck {
  bool delta_nonzero = false;
  bool point_on_curve = false;
  bool non_torsion_evidence = false;
  uint32_t prime1 = 0, prime2 = 0;     // the two good primes used
  uint64_t order1 = 0, order2 = 0;     // exact orders of the reductions
  bool accepted = false;
  std::string failure;  // failing predicate when not accepted
};

/// Checks delta != 0, the on-curve identity over Z, and non-torsion evidence
/// from exact reduction orders at the two smallest good primes: accept when
/// the orders differ or either exceeds 12 (rational torsion order is at most
/// 12 and good reduction preserves torsion orders).
CatalogCheck verify_catalog_entry(const CurveSpec& curve);

/// The built-in catalog: one verified curve per CM field Q(sqrt(-d)),
/// d in {1, 2, 3, 7, 11, 19, 43, 67, 163}.
const std::vector<CurveSpec>& builtin_catalog();

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the line-oriented catalog format ("name a b d x0 y0 note...",
/// '#' comments) and re-verifies every entry; refuses unverified entries.
std::vector<CurveSpec> load_catalog(std::istream& in);
std::vector<CurveSpec> load_catalog_file(const std::string& path);

/// Serializes entries in the catalog file format.
std::string catalog_to_text(const std::vector<CurveSpec>& entries);

}  // namespace ec
}  // namespace ecarm
