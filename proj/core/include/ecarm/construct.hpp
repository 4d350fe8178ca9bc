#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecarm/criteria.hpp"
#include "ecarm/modmath.hpp"

namespace ecarm {
namespace construct {

struct SieveParams {
  double y = 20.0;
  double theta = 1.5;      // window exponent, 1 < theta < 2
  Int alpha_prime = 1;     // 1 for the Lucas-Carmichael construction,
                           // criteria::alpha_constant().value for full mode
  uint64_t k_max = 100'000;
  Int x_bound = 1'000'000'000;  // prime-size cap
  double b_exponent = 0.4;      // reporting-only exponent, 0 < B < 5/12

  /// Throws std::domain_error when a parameter is out of range.
  void validate() const;
};

struct QSet {
  SieveParams params;
  double window_low = 0.0;   // y^theta / log y
  double window_high = 0.0;  // y^theta
  std::vector<Int> q_list;   // increasing
  /// Shape of the lower bound for |Q| with the ineffective constant dropped:
  /// y^theta / log(y^theta). Reported, never asserted.
  double size_bound_shape = 0.0;
};

/// Primes q in [y^theta/log y, y^theta] with q = -1 (mod 4*alpha') and
/// q-1 being y-smooth. An empty window yields an empty QSet.
QSet sieve_q(const SieveParams& params);

struct GroupStats {
  Int L;
  std::vector<Int> q_list;
  unsigned omega_L = 0;
  Int lambda_G;   // exponent of (Z/LZ)^x x {-1,1}
  Int order_G;    // 2 * phi(L)
  Int s_G;        // ceil(5 lambda^2 Omega(lambda) log(3 lambda Omega(|G|)))
  Int n_G_bound;  // ceil(lambda (1 + log|G| / lambda))
  Int j;          // prod (q-1)/2
  bool j_odd = false;
  double t_reference = 0.0;    // (6/5)^omega / (60 phi(alpha') log x_bound)
  double reciprocal_sum = 0.0; // sum over q | L of 1/(q-1)
  bool reciprocal_small = false;  // reciprocal_sum <= 1/64
  double x_full_log10 = 0.0;   // log10 of (alpha' * L)^(2/B), reported only
  double log_s_cap = 0.0;      // 7 * theta * y, diagnostic cap for log s(G)
  double log_n_cap = 0.0;      // 3 * theta * y, diagnostic cap for log n(G)
};

/// Group statistics for L = product of the selected q (all of q_list when
/// selection is empty). selection must be a sublist of q.q_list.
GroupStats assemble_L(const QSet& q, const std::vector<Int>& selection = {});

/// Same statistics for an explicit prime list (distinct primes required).
GroupStats group_stats_from_primes(const std::vector<Int>& qs,
                                   const SieveParams& params);

struct PrimeSet {
  Int L;
  uint64_t k = 0;
  Int alpha_prime = 1;
  /// d -> p = d*k*alpha' - 1 for divisors d | L with p prime, p <= x_bound,
  /// and p a quadratic non-residue mod every prime q | L. d increasing.
  std::vector<std::pair<Int, Int>> entries;
};

struct KScan {
  bool found = false;
  PrimeSet pset;          // the best (k, entries); empty when !found
  uint64_t k_scanned = 0; // count of k coprime to L that were examined
  uint64_t best_count = 0;
  /// (3/2)^omega(L) / (4 phi(alpha') log x_bound). Reported, not asserted.
  double count_bound = 0.0;
};

/// Exhaustive scan of k in [2, k_max] with gcd(k, L) = 1, keeping the k with
/// the most entries (ties broken by smallest k).
KScan find_k(const GroupStats& stats, const SieveParams& params);

struct QnrCount {
  uint64_t count = 0;
  /// z / (2^(omega(L)+1) log z). Reported alongside, never asserted.
  double lower_bound_shape = 0.0;
};

/// Exact count of primes p <= z that are quadratic non-residues mod every
/// prime q | L, by direct scan. z capped at 10^8.
QnrCount qnr_prime_count(uint64_t z, const GroupStats& stats);

struct ConstructionResult {
  Int m;  // product of the subset primes
  std::vector<std::pair<Int, Int>> subset;  // (d, p) entries, d increasing
  unsigned subset_size = 0;                 // odd, >= 3
  criteria::Certificate certificate;        // Lucas-Carmichael kind
  Int trace_residue;                        // m mod L
  int trace_sign = -1;                      // (-1)^subset_size
};

struct SearchLimits {
  unsigned max_size = 7;        // odd, >= 3
  unsigned max_results = 16;
  uint64_t table_cap = 1ULL << 24;  // stored partial products per half
};

struct SubsetSearchOutcome {
  std::vector<ConstructionResult> results;  // sorted by (m, subset)
  bool table_overflow = false;
  uint64_t matches_checked = 0;
};

/// Meet-in-the-middle search for odd-size subsets (3 <= size <= max_size)
/// whose product is -1 mod L. Every result is certified Lucas-Carmichael
/// before emission; an empty result list is a valid outcome.
SubsetSearchOutcome subset_search(const PrimeSet& pset, const GroupStats& stats,
                                  const SearchLimits& limits = {});

struct CountingBound {
  bool preconditions_ok = false;  // n_G < t < n - n_G
  mpq_class value;                // C(n-n_G, t-n_G) / C(n, n_G); 0 when !ok
  bool sandwich_ok = false;       // (u/v)^v <= C(u,v) <= (ue/v)^v held
};

/// Exact rational counting lower bound with the binomial sandwich evaluated
/// on both binomials involved.
CountingBound counting_bound(uint64_t n, uint64_t t, uint64_t n_G);

enum class PipelineStatus {
  Emitted,        // at least one certified number
  CleanButEmpty,  // all stages ran, subset search found nothing
  EmptyQSet,      // sieve produced no primes (infeasible at this scale)
  EmptyPrimeSet,  // no k yielded a nonempty prime set
};

const char* to_string(PipelineStatus status);

/// Bound values from the source construction, evaluated for reference only:
/// the inequalities are asymptotic with ineffective constants and are never
/// asserted at this scale.
struct PipelineDiagnostics {
  double lemma1_q_count_shape = 0.0;    // y^theta / log(y^theta)
  double lemma2_qnr_count_shape = 0.0;  // x_bound / (2^(omega+1) log x_bound)
  double lemma3_k_count_bound = 0.0;    // (3/2)^omega / (4 phi(a') log x_bound)
  double lemma4_log_s_cap = 0.0;        // 7 theta y, vs log s(G)
  double lemma4_log_n_cap = 0.0;        // 3 theta y, vs log n(G) bound
  double t_reference = 0.0;             // (6/5)^omega / (60 phi(a') log x_bound)
};

struct ConstructionReport {
  SieveParams params;
  SearchLimits limits;
  PipelineStatus status = PipelineStatus::EmptyQSet;
  std::string status_note;
  QSet qset;
  std::optional<GroupStats> stats;
  std::optional<KScan> kscan;
  std::vector<ConstructionResult> results;
  bool table_overflow = false;
  PipelineDiagnostics diagnostics;
};

/// sieve_q -> assemble_L -> find_k -> subset_search with all diagnostics
/// collected; stage failures become report statuses, not exceptions.
ConstructionReport run_pipeline(const SieveParams& params,
                                const SearchLimits& limits = {});

}  // namespace construct
}  // namespace ecarm
