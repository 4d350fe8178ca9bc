#include "ecarm/modmath.hpp"

#include <algorithm>
#include <map>

namespace ecarm {
namespace modmath {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
  uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

// One strong-pseudoprime round for odd n = d * 2^s + 1. Returns true if a
// proves n composite.
bool mr_composite_u64(uint64_t n, uint64_t a, uint64_t d, int s) {
  uint64_t x = powmod_u64(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

constexpr uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool mr_composite_mpz(const Int& n, const Int& a, const Int& d, unsigned long s) {
  Int x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  Int n1 = n - 1;
  if (x == 1 || x == n1) return false;
  for (unsigned long i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n1) return false;
  }
  return true;
}

}  // namespace

int jacobi(const Int& a, const Int& n) {
  if (n <= 0 || mpz_even_p(n.get_mpz_t()))
    throw std::domain_error("jacobi: modulus must be odd and positive");
  return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

const Int& deterministic_primality_bound() {
  // Sorenson-Webster: the first twelve primes are a complete witness set
  // below this bound.
  static const Int bound("318665857834031151167461");
  return bound;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                     23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : kWitnesses) {
    if (mr_composite_u64(n, a, d, s)) return false;
  }
  return true;
}

bool is_probable_prime(const Int& n, const PrimalityPolicy& policy) {
  if (n < 2) return false;
  if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());

  for (uint64_t p : kWitnesses) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return n == p;
  }
  Int d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  for (uint64_t a : kWitnesses) {
    if (mr_composite_mpz(n, Int(static_cast<unsigned long>(a)), d, s))
      return false;
  }
  if (n < deterministic_primality_bound()) return true;

  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(policy.seed);
  Int span = n - 3;  // bases drawn from [2, n-2]
  for (int i = 0; i < policy.rounds; ++i) {
    Int a = rng.get_z_range(span) + 2;
    if (mr_composite_mpz(n, a, d, s)) return false;
  }
  return true;
}

uint64_t Factorization::big_omega() const {
  uint64_t total = 0;
  for (const auto& [p, e] : factors) total += e;
  return total;
}

bool Factorization::squarefree() const {
  return std::all_of(factors.begin(), factors.end(),
                     [](const auto& fe) { return fe.second == 1; });
}

Int Factorization::product() const {
  Int acc = 1;
  for (const auto& [p, e] : factors) {
    for (unsigned i = 0; i < e; ++i) acc *= p;
  }
  return acc;
}

Factorization factorization_from_primes(const std::vector<Int>& primes) {
  std::vector<Int> sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  Factorization f;
  for (const Int& p : sorted) {
    if (!is_probable_prime(p))
      throw std::invalid_argument("factorization_from_primes: not a prime: " +
                                  p.get_str());
    if (!f.factors.empty() && f.factors.back().first == p)
      throw std::invalid_argument("factorization_from_primes: repeated prime");
    f.factors.emplace_back(p, 1);
    f.n *= p;
  }
  return f;
}

namespace {

// Pollard-Brent rho. Returns a nontrivial factor of odd composite n, or 0 if
// the iteration allowance ran out. iters is decremented as work is done.
Int rho_brent(const Int& n, uint64_t& iters) {
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
  }
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(0xb5e57ULL);
  for (int attempt = 0; attempt < 64 && iters > 0; ++attempt) {
    Int c = rng.get_z_range(n - 3) + 1;
    Int y = rng.get_z_range(n - 2) + 1;
    Int g = 1, q = 1, x, ys;
    uint64_t r = 1;
    const uint64_t batch = 128;
    while (g == 1 && iters > 0) {
      x = y;
      for (uint64_t i = 0; i < r && iters > 0; ++i) {
        y = (y * y + c) % n;
        --iters;
      }
      uint64_t k = 0;
      while (k < r && g == 1 && iters > 0) {
        ys = y;
        uint64_t lim = std::min(batch, r - k);
        for (uint64_t i = 0; i < lim && iters > 0; ++i) {
          y = (y * y + c) % n;
          Int diff = x - y;
          q = (q * abs(diff)) % n;
          --iters;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += lim;
      }
      r *= 2;
    }
    if (g == n) {
      // Backtrack one step at a time to recover the factor.
      do {
        ys = (ys * ys + c) % n;
        Int diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n && g > 1) return g;
  }
  return 0;
}

// Splits perfect powers: if n = r^e for some prime exponent e, returns (r, e).
bool perfect_power(const Int& n, Int& root, unsigned& exp) {
  if (!mpz_perfect_power_p(n.get_mpz_t())) return false;
  unsigned maxe = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
  for (unsigned e = 2; e <= maxe; ++e) {
    Int r, rem;
    mpz_rootrem(r.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), e);
    if (rem == 0) {
      root = r;
      exp = e;
      return true;
    }
  }
  return false;
}

}  // namespace

Factorization factorize(const Int& n, const FactorBudget& budget) {
  if (n < 1) throw std::domain_error("factorize: n must be positive");
  Factorization out;
  out.n = n;
  if (n == 1) return out;

  std::map<Int, unsigned> acc;
  Int m = n;
  if (n.fits_ulong_p()) {
    uint64_t v = n.get_ui();
    for (uint32_t p : small_primes()) {
      if (p > budget.trial_limit) break;
      if (static_cast<uint64_t>(p) * p > v) break;
      while (v % p == 0) {
        v /= p;
        ++acc[Int(p)];
      }
    }
    m = Int(static_cast<unsigned long>(v));
  } else {
    for (uint32_t p : small_primes()) {
      if (p > budget.trial_limit) break;
      if (Int(p) * p > m) break;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++acc[Int(p)];
      }
    }
  }
  // Cofactor below the square of the trial bound must be prime.
  if (m > 1 && m <= Int(budget.trial_limit) * budget.trial_limit) {
    ++acc[m];
    m = 1;
  }

  uint64_t iters = budget.rho_iterations;
  std::vector<std::pair<Int, unsigned>> pending;
  if (m > 1) pending.emplace_back(m, 1);
  while (!pending.empty()) {
    auto [c, mult] = pending.back();
    pending.pop_back();
    if (is_probable_prime(c, budget.primality)) {
      acc[c] += mult;
      continue;
    }
    Int root;
    unsigned e = 0;
    if (perfect_power(c, root, e)) {
      pending.emplace_back(root, mult * e);
      continue;
    }
    Int g = rho_brent(c, iters);
    if (g == 0) {
      Factorization partial;
      partial.n = n;
      for (const auto& [p, cnt] : acc) partial.factors.emplace_back(p, cnt);
      Int cof = c;
      for (const auto& [v, mu] : pending) {
        for (unsigned i = 0; i < mu; ++i) cof *= v;
      }
      for (unsigned i = 1; i < mult; ++i) cof *= c;
      throw PartialFactorizationError(std::move(partial), cof);
    }
    pending.emplace_back(g, mult);
    pending.emplace_back(c / g, mult);
  }

  for (const auto& [p, e] : acc) out.factors.emplace_back(p, e);
  return out;
}

Int largest_prime_factor(const Int& n, const FactorBudget& budget) {
  if (n < 1) throw std::domain_error("largest_prime_factor: n must be positive");
  if (n == 1) return 1;
  Factorization f = factorize(n, budget);
  return f.factors.back().first;
}

namespace {

void require_complete(const Factorization& f, const char* what) {
  if (f.product() != f.n)
    throw std::invalid_argument(std::string(what) +
                                ": factorization is not complete");
}

}  // namespace

Int carmichael_lambda(const Factorization& f) {
  require_complete(f, "carmichael_lambda");
  Int lambda = 1;
  for (const auto& [p, e] : f.factors) {
    Int contrib;
    if (p == 2) {
      if (e == 1)
        contrib = 1;
      else if (e == 2)
        contrib = 2;
      else {
        contrib = 1;
        mpz_mul_2exp(contrib.get_mpz_t(), contrib.get_mpz_t(), e - 2);
      }
    } else {
      contrib = p - 1;
      for (unsigned i = 1; i < e; ++i) contrib *= p;
    }
    mpz_lcm(lambda.get_mpz_t(), lambda.get_mpz_t(), contrib.get_mpz_t());
  }
  return lambda;
}

Int euler_phi(const Factorization& f) {
  require_complete(f, "euler_phi");
  Int phi = 1;
  for (const auto& [p, e] : f.factors) {
    phi *= p - 1;
    for (unsigned i = 1; i < e; ++i) phi *= p;
  }
  return phi;
}

GcdOrInverse mod_inv(const Int& a, const Int& n) {
  if (n < 2) throw std::domain_error("mod_inv: modulus must be >= 2");
  GcdOrInverse out;
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t())) {
    out.invertible = true;
    out.value = inv;
  } else {
    out.invertible = false;
    mpz_gcd(out.value.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  }
  return out;
}

std::vector<uint32_t> sieve_primes(uint32_t limit) {
  std::vector<uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<size_t>(limit) + 1, false);
  for (uint32_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (uint64_t j = static_cast<uint64_t>(i) * i; j <= limit; j += i)
      composite[static_cast<size_t>(j)] = true;
  }
  return out;
}

const std::vector<uint32_t>& small_primes() {
  static const std::vector<uint32_t> primes = sieve_primes(1'000'000);
  return primes;
}

}  // namespace modmath
}  // namespace ecarm
