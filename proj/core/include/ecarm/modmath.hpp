#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ecarm {

/// Arbitrary-precision integer used throughout the library.
using Int = mpz_class;

namespace modmath {

/// Jacobi symbol (a/n). Requires n odd and positive; equals the Legendre
/// symbol when n is prime, and is fully multiplicative in both arguments.
/// (a/1) = +1 for every a.
int jacobi(const Int& a, const Int& n);

struct PrimalityPolicy {
  /// Extra random strong-pseudoprime rounds applied above the deterministic
  /// witness threshold. Results below the threshold are exact.
  int rounds = 40;
  /// Seed for the deterministic derivation of random bases.
  unsigned long seed = 20250809UL;
};

/// Largest bound below which the fixed witness set makes the strong
/// pseudoprime test a proven primality test (first twelve primes as
/// witnesses; covers everything 64-bit with a wide margin).
const Int& deterministic_primality_bound();

/// Strong pseudoprime test. Deterministic and correct below
/// deterministic_primality_bound(); probabilistic above it, with
/// policy.rounds extra random bases.
bool is_probable_prime(const Int& n, const PrimalityPolicy& policy = {});

/// Deterministic Miller-Rabin for 64-bit operands.
bool is_prime_u64(uint64_t n);

struct FactorBudget {
  uint64_t trial_limit = 1'000'000;
  uint64_t rho_iterations = 10'000'000;
  PrimalityPolicy primality;
};

struct Factorization {
  Int n = 1;
  /// (prime, exponent) with primes strictly increasing, exponents >= 1.
  std::vector<std::pair<Int, unsigned>> factors;

  unsigned omega() const { return static_cast<unsigned>(factors.size()); }
  uint64_t big_omega() const;
  bool squarefree() const;
  Int product() const;
};

/// Builds a Factorization directly from a list of known primes.
/// Throws std::invalid_argument if the list has repeats or non-primes.
Factorization factorization_from_primes(const std::vector<Int>& primes);

class PartialFactorizationError : public std::runtime_error {
 public:
  PartialFactorizationError(Factorization partial, Int cofactor)
      : std::runtime_error("factorization budget exhausted"),
        partial_(std::move(partial)),
        cofactor_(std::move(cofactor)) {}
  const Factorization& partial() const { return partial_; }
  const Int& cofactor() const { return cofactor_; }

 private:
  Factorization partial_;
  Int cofactor_;
};

/// Complete factorization by trial division up to budget.trial_limit
/// followed by Pollard-Brent rho within budget.rho_iterations.
/// Throws PartialFactorizationError when the budget runs out.
Factorization factorize(const Int& n, const FactorBudget& budget = {});

/// Largest prime dividing n, with the convention P(1) = 1.
Int largest_prime_factor(const Int& n, const FactorBudget& budget = {});

/// Universal exponent of (Z/nZ)^x from a complete factorization.
Int carmichael_lambda(const Factorization& f);

/// Euler totient from a complete factorization.
Int euler_phi(const Factorization& f);

struct GcdOrInverse {
  bool invertible = false;
  /// The inverse of a mod n when invertible, otherwise gcd(a, n) > 1.
  Int value;
};

/// Modular inverse with a gcd witness on failure. The witness is a normal
/// return value: curve arithmetic treats a nontrivial gcd as a factor of n.
/// Requires n >= 2.
GcdOrInverse mod_inv(const Int& a, const Int& n);

/// Primes below one million, computed once and cached.
const std::vector<uint32_t>& small_primes();

/// Primes up to and including limit.
std::vector<uint32_t> sieve_primes(uint32_t limit);

}  // namespace modmath
}  // namespace ecarm
