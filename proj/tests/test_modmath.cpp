#include <doctest.h>

#include <numeric>
#include <random>

#include "ecarm/modmath.hpp"
#include "oracles.hpp"

using namespace ecarm;
using namespace ecarm::modmath;

TEST_CASE("jacobi on the worked examples") {
  CHECK(jacobi(-1, 7) == -1);
  CHECK(jacobi(2, 7) == 1);
  CHECK(jacobi(-3, 35) == -1);
  CHECK(jacobi(0, 1) == 1);
  CHECK(jacobi(5, 1) == 1);
  CHECK(jacobi(-7, 1) == 1);
  CHECK(jacobi(0, 9) == 0);
  CHECK(jacobi(3, 9) == 0);
}

TEST_CASE("jacobi rejects even or nonpositive moduli") {
  CHECK_THROWS_AS(jacobi(3, 8), std::domain_error);
  CHECK_THROWS_AS(jacobi(3, 0), std::domain_error);
  CHECK_THROWS_AS(jacobi(3, -7), std::domain_error);
}

TEST_CASE("jacobi is multiplicative in both arguments") {
  const long samples[] = {-5, -3, -1, 2, 3, 7, 10, 15};
  for (long n = 1; n <= 10'000; n += 2) {
    Int nn(n);
    for (long a : samples) {
      for (long b : samples) {
        if (jacobi(a, nn) * jacobi(b, nn) != jacobi(Int(a) * b, nn))
          FAIL("multiplicativity fails at n=" << n << " a=" << a << " b=" << b);
      }
    }
    if (n % 3 == 0 || n % 5 == 0) continue;
    // multiplicativity in the modulus on a spot-check pair
    if (jacobi(2, nn) * jacobi(2, Int(15)) != jacobi(2, nn * 15))
      FAIL("modulus multiplicativity fails at n=" << n);
  }
}

TEST_CASE("jacobi matches the square sets of odd primes") {
  for (uint32_t p : small_primes()) {
    if (p > 1000) break;
    if (p == 2) continue;
    for (uint64_t a = 1; a < p; ++a) {
      int expected = oracle::legendre_via_squares(static_cast<int64_t>(a), p);
      if (jacobi(Int(a), Int(p)) != expected)
        FAIL("legendre mismatch at p=" << p << " a=" << a);
    }
  }
}

TEST_CASE("is_probable_prime on the worked examples") {
  CHECK(is_probable_prime(41));
  CHECK_FALSE(is_probable_prime(561));
  CHECK_FALSE(is_probable_prime(1));
  CHECK_FALSE(is_probable_prime(0));
  CHECK(is_probable_prime(2));
}

TEST_CASE("is_probable_prime agrees with trial division below 10^6") {
  // Sieve of Eratosthenes as the independent oracle.
  const uint32_t limit = 1'000'000;
  std::vector<bool> composite(limit + 1, false);
  composite[0] = composite[1] = true;
  for (uint32_t i = 2; static_cast<uint64_t>(i) * i <= limit; ++i) {
    if (composite[i]) continue;
    for (uint64_t j = static_cast<uint64_t>(i) * i; j <= limit; j += i)
      composite[j] = true;
  }
  for (uint32_t n = 0; n <= limit; ++n) {
    if (is_probable_prime(Int(n)) != !composite[n])
      FAIL("primality mismatch at " << n);
  }
}

TEST_CASE("is_probable_prime handles operands above the 64-bit range") {
  Int m89 = (Int(1) << 89) - 1;  // Mersenne prime
  CHECK(is_probable_prime(m89));
  CHECK_FALSE(is_probable_prime(m89 * ((Int(1) << 107) - 1)));
  CHECK(deterministic_primality_bound() == Int("318665857834031151167461"));
}

TEST_CASE("factorize on the worked examples") {
  Factorization f = factorize(399);
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0] == std::pair<Int, unsigned>{3, 1});
  CHECK(f.factors[1] == std::pair<Int, unsigned>{7, 1});
  CHECK(f.factors[2] == std::pair<Int, unsigned>{19, 1});
  CHECK(f.squarefree());
  CHECK(f.omega() == 3);

  Factorization prime = factorize(13);
  REQUIRE(prime.factors.size() == 1);
  CHECK(prime.factors[0] == std::pair<Int, unsigned>{13, 1});

  Factorization million = factorize(1'000'000);
  REQUIRE(million.factors.size() == 2);
  CHECK(million.factors[0] == std::pair<Int, unsigned>{2, 6});
  CHECK(million.factors[1] == std::pair<Int, unsigned>{5, 6});
  CHECK_FALSE(million.squarefree());
  CHECK(million.big_omega() == 12);

  Factorization one = factorize(1);
  CHECK(one.factors.empty());
  CHECK(one.product() == 1);

  CHECK_THROWS_AS(factorize(0), std::domain_error);
}

TEST_CASE("factorize then re-multiply is the identity below 10^6") {
  for (unsigned long n = 1; n <= 1'000'000; ++n) {
    Factorization f = factorize(Int(n));
    if (f.product() != Int(n)) FAIL("factorize/product mismatch at " << n);
  }
}

TEST_CASE("factorize reports the unfactored cofactor when the budget is out") {
  Int p = (Int(1) << 89) - 1;
  Int q = (Int(1) << 107) - 1;
  Int n = p * q;
  FactorBudget tiny;
  tiny.rho_iterations = 4;
  CHECK_THROWS_AS(factorize(n, tiny), PartialFactorizationError);
  try {
    factorize(n, tiny);
  } catch (const PartialFactorizationError& err) {
    CHECK(err.cofactor() == n);
    CHECK(err.partial().factors.empty());
  }
  // Partial progress: the small part factors, the big semiprime remains.
  try {
    factorize(40 * n, tiny);
  } catch (const PartialFactorizationError& err) {
    CHECK(err.cofactor() == n);
    Int found = 1;
    for (const auto& [fp, fe] : err.partial().factors)
      for (unsigned i = 0; i < fe; ++i) found *= fp;
    CHECK(found == 40);
  }
  // The default budget cracks products of ~10^12-scale primes.
  Factorization full = factorize(Int("937373543567") * Int("468686771783"));
  CHECK(full.factors.size() == 2);
  CHECK(full.squarefree());
}

TEST_CASE("largest_prime_factor with the P(1) = 1 convention") {
  CHECK(largest_prime_factor(42) == 7);
  CHECK(largest_prime_factor(46) == 23);
  CHECK(largest_prime_factor(1) == 1);
  CHECK(largest_prime_factor(1024) == 2);
  for (uint64_t n = 2; n <= 2000; ++n) {
    CHECK(largest_prime_factor(Int(static_cast<unsigned long>(n))) ==
          Int(static_cast<unsigned long>(oracle::largest_prime_factor(n))));
  }
}

TEST_CASE("carmichael_lambda and euler_phi on the worked examples") {
  Factorization f1463 = factorization_from_primes({7, 11, 19});
  CHECK(f1463.n == 1463);
  CHECK(carmichael_lambda(f1463) == 90);
  CHECK(euler_phi(f1463) == 1080);

  CHECK(carmichael_lambda(factorize(2)) == 1);
  CHECK(carmichael_lambda(factorize(8)) == 2);
  CHECK(carmichael_lambda(factorize(16)) == 4);
  CHECK(euler_phi(factorize(1)) == 1);
  CHECK(euler_phi(factorize(163)) == 162);

  Factorization bogus;
  bogus.n = 10;
  bogus.factors = {{2, 1}};
  CHECK_THROWS_AS(carmichael_lambda(bogus), std::invalid_argument);
  CHECK_THROWS_AS(factorization_from_primes({7, 7}), std::invalid_argument);
  CHECK_THROWS_AS(factorization_from_primes({6}), std::invalid_argument);
}

TEST_CASE("lambda divides phi and annihilates units for squarefree n") {
  std::mt19937_64 rng(0xc0ffee);
  for (uint64_t n = 2; n <= 10'000; ++n) {
    Factorization f = factorize(Int(static_cast<unsigned long>(n)));
    if (!f.squarefree()) continue;
    Int lambda = carmichael_lambda(f);
    Int phi = euler_phi(f);
    if (phi % lambda != 0) FAIL("lambda does not divide phi at n=" << n);
    uint64_t lam = lambda.get_ui();
    for (int i = 0; i < 100; ++i) {
      uint64_t a = rng() % n;
      if (std::gcd(a, n) != 1) continue;
      if (oracle::powmod(a, lam, n) != 1 % n)
        FAIL("a^lambda != 1 for n=" << n << " a=" << a);
    }
  }
}

TEST_CASE("mod_inv returns inverses or gcd witnesses") {
  auto r = mod_inv(3, 7);
  CHECK(r.invertible);
  CHECK(r.value == 5);

  auto w = mod_inv(10, 35);
  CHECK_FALSE(w.invertible);
  CHECK(w.value == 5);

  auto one = mod_inv(1, 97);
  CHECK(one.invertible);
  CHECK(one.value == 1);

  auto zero = mod_inv(0, 12);
  CHECK_FALSE(zero.invertible);
  CHECK(zero.value == 12);

  auto neg = mod_inv(-2, 7);
  CHECK(neg.invertible);
  CHECK(((Int(-2) * neg.value) % 7 + 7) % 7 == 1);

  CHECK_THROWS_AS(mod_inv(3, 1), std::domain_error);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    unsigned long n = 2 + rng() % 100000;
    unsigned long a = rng() % (2 * n);
    auto res = mod_inv(Int(a), Int(n));
    if (res.invertible) {
      CHECK((Int(a) * res.value) % Int(n) == 1);
    } else {
      CHECK(res.value == Int(std::gcd(a, n)));
      CHECK(res.value > 1);
    }
  }
}
