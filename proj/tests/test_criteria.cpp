#include <doctest.h>

#include "ecarm/criteria.hpp"
#include "ecarm/ec.hpp"
#include "oracles.hpp"

using namespace ecarm;
using namespace ecarm::criteria;

namespace {

// The reference 36-digit elliptic Carmichael number.
const char* kReference36 = "617730918224831720922772642603971311";
// A 38-digit number built from p = a*alpha*m - 1, a in {1,2,3}, m = 150;
// it satisfies the strict criterion (alpha | p+1 and p+1 | n+1, omega odd).
const char* kStrict38 = "90778775248094371954661554595508722399";

}  // namespace

TEST_CASE("alpha constant") {
  const AlphaConstant& alpha = alpha_constant();
  CHECK(alpha.value == Int("16488700536"));
  Int prod = 1;
  for (const Int& f : alpha.factors) prod *= f;
  CHECK(prod == alpha.value);
  REQUIRE(alpha.factors.size() == 8);
  CHECK(alpha.factors[0] == 8);
  CHECK(alpha.factors[7] == 163);
}

TEST_CASE("is_carmichael on the worked examples") {
  Certificate c561 = is_carmichael(561);
  CHECK(c561.verdict);
  REQUIRE(c561.factorization.factors.size() == 3);
  CHECK(c561.factorization.factors[0].first == 3);
  CHECK(c561.factorization.factors[1].first == 11);
  CHECK(c561.factorization.factors[2].first == 17);

  CHECK_FALSE(is_carmichael(6).verdict);
  CHECK_FALSE(is_carmichael(41).verdict);   // prime
  CHECK_FALSE(is_carmichael(2).verdict);    // prime
  CHECK(is_carmichael(1105).verdict);
  CHECK(is_carmichael(1729).verdict);
  CHECK_FALSE(is_carmichael(4).verdict);    // not squarefree
  CHECK_THROWS_AS(is_carmichael(1), std::domain_error);
}

TEST_CASE("is_lucas_carmichael on the worked examples") {
  CHECK(is_lucas_carmichael(399).verdict);
  CHECK(is_lucas_carmichael(935).verdict);
  CHECK_FALSE(is_lucas_carmichael(561).verdict);
  Certificate even = is_lucas_carmichael(2 * 399);
  CHECK_FALSE(even.verdict);
  CHECK_FALSE(even.odd_ok);
}

TEST_CASE("check_elliptic_criterion on the worked examples") {
  Certificate c399 = check_elliptic_criterion(399);
  CHECK_FALSE(c399.verdict);  // alpha does not divide 3+1
  bool alpha_failed = false;
  for (const auto& pc : c399.prime_checks) {
    if (pc.statement == PrimeStatement::AlphaDividesPPlusOne && !pc.ok)
      alpha_failed = true;
  }
  CHECK(alpha_failed);

  Certificate c4 = check_elliptic_criterion(4);
  CHECK_FALSE(c4.verdict);
  CHECK_FALSE(c4.squarefree_ok);

  // Four factors can never satisfy the odd-omega requirement.
  Certificate c8855 = check_elliptic_criterion(8855);
  CHECK_FALSE(c8855.verdict);
  CHECK_FALSE(c8855.omega_parity_ok);
  CHECK(c8855.omega == 4);
}

TEST_CASE("the reference 36-digit number: factorization and checks") {
  Int n(kReference36);
  Certificate cert = check_elliptic_criterion(n);
  REQUIRE(cert.status == Certificate::Status::Ok);
  REQUIRE(cert.factorization.factors.size() == 3);
  CHECK(cert.factorization.factors[0].first == Int("468686771783"));
  CHECK(cert.factorization.factors[1].first == Int("937373543567"));
  CHECK(cert.factorization.factors[2].first == Int("1406060315351"));
  CHECK(cert.squarefree_ok);
  CHECK(cert.composite_ok);
  CHECK(cert.omega_parity_ok);
  // Every p+1 divides n+1, but 19 and 43 divide alpha and none of the p+1:
  // the strict criterion is sufficient, not necessary, and this classical
  // number comes from a construction without those two factors.
  for (const auto& pc : cert.prime_checks) {
    bool expected =
        pc.statement == PrimeStatement::PPlusOneDividesNPlusOne ? true : false;
    CHECK(pc.ok == expected);
  }
  CHECK_FALSE(cert.verdict);

  // It is Lucas-Carmichael all the same.
  CHECK(is_lucas_carmichael(n).verdict);
}

TEST_CASE("a 38-digit number satisfying the strict criterion") {
  Int n(kStrict38);
  Certificate cert = check_elliptic_criterion(n);
  CHECK(cert.verdict);
  REQUIRE(cert.factorization.factors.size() == 3);
  CHECK(cert.factorization.factors[0].first == Int("2473305080399"));
  CHECK(cert.factorization.factors[1].first == Int("4946610160799"));
  CHECK(cert.factorization.factors[2].first == Int("7419915241199"));
  // The criterion strictly strengthens the Lucas-Carmichael condition.
  CHECK(is_lucas_carmichael(n).verdict);
}

TEST_CASE("inconclusive certificates carry the unfactored cofactor") {
  Int p = (Int(1) << 89) - 1;
  Int q = (Int(1) << 107) - 1;
  CheckOptions opts;
  opts.budget.rho_iterations = 4;
  Certificate cert = is_carmichael(p * q, opts);
  CHECK(cert.status == Certificate::Status::Inconclusive);
  CHECK_FALSE(cert.verdict);
  CHECK(cert.unfactored_cofactor == p * q);
}

TEST_CASE("enumerate_lucas_carmichael golden prefixes") {
  EnumerationReport to100 = enumerate_lucas_carmichael(100);
  CHECK(to100.certificates.empty());

  EnumerationReport to1000 = enumerate_lucas_carmichael(1000);
  REQUIRE(to1000.certificates.size() == 2);
  CHECK(to1000.certificates[0].n == 399);
  CHECK(to1000.certificates[1].n == 935);

  EnumerationReport to9000 = enumerate_lucas_carmichael(9000);
  std::vector<unsigned long> expected{399, 935, 2015, 2915, 4991, 5719, 7055, 8855};
  REQUIRE(to9000.certificates.size() == expected.size());
  for (size_t i = 0; i < expected.size(); ++i) {
    CHECK(to9000.certificates[i].n == Int(expected[i]));
    CHECK(to9000.certificates[i].verdict);
  }

  CHECK_THROWS_AS(enumerate_lucas_carmichael(1), std::domain_error);
  CHECK_THROWS_AS(enumerate_lucas_carmichael(200'000'000), std::domain_error);
}

TEST_CASE("enumeration agrees with the brute-force oracle up to 20000") {
  std::vector<uint64_t> expected = oracle::lucas_carmichael_up_to(20000);
  EnumerationReport got = enumerate_lucas_carmichael(20000);
  REQUIRE(got.certificates.size() == expected.size());
  for (size_t i = 0; i < expected.size(); ++i) {
    CHECK(got.certificates[i].n == Int(static_cast<unsigned long>(expected[i])));
    // odd, composite, squarefree
    CHECK(got.certificates[i].odd_ok);
    CHECK(got.certificates[i].composite_ok);
    CHECK(got.certificates[i].squarefree_ok);
  }
}

TEST_CASE("is_carmichael agrees with the definition oracle up to 10^6") {
  // Witness search settles the negatives quickly; every positive also gets
  // the full a^n = a scan over all residues.
  unsigned positives = 0;
  for (uint64_t n = 2; n <= 1'000'000; ++n) {
    bool expected = oracle::carmichael_by_witness_search(n);
    bool got = is_carmichael(Int(static_cast<unsigned long>(n))).verdict;
    if (expected != got) FAIL("carmichael mismatch at " << n);
    if (got) {
      ++positives;
      if (!oracle::carmichael_by_definition(n))
        FAIL("definition oracle rejects " << n);
    }
  }
  CHECK(positives == 43);  // count of Carmichael numbers below 10^6
}

TEST_CASE("certificates reverify from their recorded checks") {
  for (unsigned long n : {561UL, 399UL, 935UL, 6UL, 41UL, 8855UL}) {
    CHECK(reverify(is_carmichael(Int(n))));
    CHECK(reverify(is_lucas_carmichael(Int(n))));
    CHECK(reverify(check_elliptic_criterion(Int(n))));
  }
  // Tampering with a verdict breaks reverification.
  Certificate cert = is_lucas_carmichael(399);
  cert.verdict = false;
  CHECK_FALSE(reverify(cert));
}

TEST_CASE("elliptic criterion implies Lucas-Carmichael") {
  for (unsigned long n = 2; n <= 20'000; ++n) {
    Certificate e = check_elliptic_criterion(Int(n));
    if (e.verdict && !is_lucas_carmichael(Int(n)).verdict)
      FAIL("implication fails at " << n);
  }
  Int strict(kStrict38);
  CHECK(check_elliptic_criterion(strict).verdict);
  CHECK(is_lucas_carmichael(strict).verdict);
}

TEST_CASE("cross_check_criterion_vs_gordon") {
  const auto& catalog = ec::builtin_catalog();

  // Precondition violations: a prime, and a composite failing the criterion.
  CrossCheckReport prime_report =
      cross_check_criterion_vs_gordon(41, catalog);
  CHECK_FALSE(prime_report.precondition_ok);
  CHECK(prime_report.gordon.outcomes.empty());

  CrossCheckReport c35 = cross_check_criterion_vs_gordon(35, catalog);
  CHECK_FALSE(c35.precondition_ok);

  CrossCheckReport ref36 =
      cross_check_criterion_vs_gordon(Int(kReference36), catalog);
  CHECK_FALSE(ref36.precondition_ok);  // alpha check fails; see above

  // Main path on the 38-digit strict-criterion number: no alarms.
  CrossCheckReport strict =
      cross_check_criterion_vs_gordon(Int(kStrict38), catalog);
  CHECK(strict.precondition_ok);
  CHECK(strict.alarms.empty());
  CHECK(strict.gordon.all_applicable_probable_prime);
}
