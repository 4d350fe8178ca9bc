#include "ecarm/construct.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ecarm {
namespace construct {

using modmath::Factorization;
using modmath::factorization_from_primes;
using modmath::factorize;
using modmath::is_prime_u64;
using modmath::jacobi;

namespace {

double log_mpz(const Int& v) {
  signed long exp2;
  double d = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(d) + static_cast<double>(exp2) * std::log(2.0);
}

double log10_mpz(const Int& v) { return log_mpz(v) / std::log(10.0); }

Int euler_phi_of(const Int& n) { return modmath::euler_phi(factorize(n)); }

}  // namespace

void SieveParams::validate() const {
  if (!(y > 1.0)) throw std::domain_error("sieve: y must exceed 1");
  if (!(theta > 1.0 && theta < 2.0))
    throw std::domain_error("sieve: theta must lie in (1, 2)");
  if (alpha_prime < 1) throw std::domain_error("sieve: alpha' must be >= 1");
  if (k_max < 1) throw std::domain_error("sieve: k_max must be positive");
  if (x_bound < 2) throw std::domain_error("sieve: x_bound must be >= 2");
  if (!(b_exponent > 0.0 && b_exponent < 5.0 / 12.0))
    throw std::domain_error("sieve: B must lie in (0, 5/12)");
  if (std::pow(y, theta) > 1e9)
    throw std::domain_error("sieve: window top y^theta is capped at 10^9");
}

QSet sieve_q(const SieveParams& params) {
  params.validate();
  QSet out;
  out.params = params;
  double hi = std::pow(params.y, params.theta);
  double lo = hi / std::log(params.y);
  out.window_low = lo;
  out.window_high = hi;
  out.size_bound_shape = hi / std::log(hi);

  const Int four_alpha = 4 * params.alpha_prime;
  if (!four_alpha.fits_ulong_p())
    throw std::domain_error("sieve: 4*alpha' exceeds the supported range");
  const uint64_t step = four_alpha.get_ui();
  const uint64_t hi_int = static_cast<uint64_t>(hi);

  std::vector<uint32_t> smooth_primes;
  for (uint32_t p : modmath::small_primes()) {
    if (static_cast<double>(p) > params.y) break;
    smooth_primes.push_back(p);
  }

  // Candidates are exactly q = step*t - 1.
  uint64_t t = static_cast<uint64_t>(std::ceil((lo + 1.0) / static_cast<double>(step)));
  if (t < 1) t = 1;
  for (; step * t - 1 <= hi_int; ++t) {
    uint64_t q = step * t - 1;
    if (static_cast<double>(q) < lo || static_cast<double>(q) > hi) continue;
    if (!is_prime_u64(q)) continue;
    uint64_t m = q - 1;
    for (uint32_t p : smooth_primes) {
      while (m % p == 0) m /= p;
      if (m == 1) break;
    }
    if (m != 1) continue;  // q-1 has a prime factor above y
    out.q_list.emplace_back(static_cast<unsigned long>(q));
  }
  return out;
}

GroupStats group_stats_from_primes(const std::vector<Int>& qs,
                                   const SieveParams& params) {
  if (qs.empty())
    throw std::domain_error("group stats: prime selection is empty");
  Factorization lf = factorization_from_primes(qs);  // validates the list

  GroupStats st;
  st.L = lf.n;
  for (const auto& [p, e] : lf.factors) st.q_list.push_back(p);
  st.omega_L = lf.omega();

  Int lambda_l = modmath::carmichael_lambda(lf);
  mpz_lcm_ui(st.lambda_G.get_mpz_t(), lambda_l.get_mpz_t(), 2);
  Int phi_l = modmath::euler_phi(lf);
  st.order_G = 2 * phi_l;

  uint64_t omega_lambda = factorize(st.lambda_G).big_omega();
  uint64_t omega_order = 1;  // the direct {-1,1} factor contributes one 2
  for (const Int& q : st.q_list) omega_order += factorize(q - 1).big_omega();

  // s(G) = ceil(5 lambda^2 Omega(lambda) log(3 lambda Omega(|G|)))
  Int a_part = 5 * st.lambda_G * st.lambda_G * omega_lambda;
  double log_arg = log_mpz(3 * st.lambda_G * Int(static_cast<unsigned long>(omega_order)));
  mpf_class prod(0, 256);
  prod = mpf_class(a_part, 256) * mpf_class(log_arg, 256);
  mpf_class ceiled(0, 256);
  mpf_ceil(ceiled.get_mpf_t(), prod.get_mpf_t());
  st.s_G = Int(ceiled);

  // n(G) <= lambda (1 + log|G| / lambda) = lambda + log|G|
  st.n_G_bound =
      st.lambda_G + Int(static_cast<long>(std::ceil(log_mpz(st.order_G))));

  st.j = 1;
  for (const Int& q : st.q_list) st.j *= (q - 1) / 2;
  st.j_odd = mpz_odd_p(st.j.get_mpz_t());

  Int phi_alpha = euler_phi_of(params.alpha_prime);
  st.t_reference = std::pow(1.2, static_cast<double>(st.omega_L)) /
                   (60.0 * phi_alpha.get_d() * log_mpz(params.x_bound));

  st.reciprocal_sum = 0.0;
  for (const Int& q : st.q_list) st.reciprocal_sum += 1.0 / Int(q - 1).get_d();
  st.reciprocal_small = st.reciprocal_sum <= 1.0 / 64.0;

  st.x_full_log10 =
      (2.0 / params.b_exponent) * log10_mpz(params.alpha_prime * st.L);
  st.log_s_cap = 7.0 * params.theta * params.y;
  st.log_n_cap = 3.0 * params.theta * params.y;
  return st;
}

GroupStats assemble_L(const QSet& q, const std::vector<Int>& selection) {
  const std::vector<Int>& chosen = selection.empty() ? q.q_list : selection;
  if (chosen.empty())
    throw std::domain_error("assemble_L: selection is empty");
  if (!selection.empty()) {
    for (const Int& s : selection) {
      if (std::find(q.q_list.begin(), q.q_list.end(), s) == q.q_list.end())
        throw std::domain_error("assemble_L: selection not a sublist of Q");
    }
  }
  return group_stats_from_primes(chosen, q.params);
}

namespace {

std::vector<Int> divisors_of(const std::vector<Int>& primes) {
  std::vector<Int> divs{1};
  for (const Int& q : primes) {
    size_t count = divs.size();
    for (size_t i = 0; i < count; ++i) divs.push_back(divs[i] * q);
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

bool qnr_mod_all(const Int& p, const std::vector<Int>& qs) {
  for (const Int& q : qs) {
    if (jacobi(p, q) != -1) return false;
  }
  return true;
}

}  // namespace

KScan find_k(const GroupStats& stats, const SieveParams& params) {
  // k_max < 2 makes the scan range empty and the result an empty prime set.
  KScan scan;
  std::vector<Int> divs = divisors_of(stats.q_list);

  Int phi_alpha = euler_phi_of(params.alpha_prime);
  scan.count_bound = std::pow(1.5, static_cast<double>(stats.omega_L)) /
                     (4.0 * phi_alpha.get_d() * log_mpz(params.x_bound));

  uint64_t best_k = 0;
  std::vector<std::pair<Int, Int>> best_entries;
  Int g;
  for (uint64_t k = 2; k <= params.k_max; ++k) {
    mpz_gcd_ui(g.get_mpz_t(), stats.L.get_mpz_t(), k);
    if (g != 1) continue;
    ++scan.k_scanned;
    std::vector<std::pair<Int, Int>> entries;
    for (const Int& d : divs) {
      Int p = d * static_cast<unsigned long>(k) * params.alpha_prime - 1;
      if (p > params.x_bound) break;  // divisors ascend, so p only grows
      if (p < 2) continue;
      if (!modmath::is_probable_prime(p)) continue;
      if (!qnr_mod_all(p, stats.q_list)) continue;
      entries.emplace_back(d, p);
    }
    if (entries.size() > best_entries.size()) {
      best_entries = std::move(entries);
      best_k = k;
    }
  }
  scan.best_count = best_entries.size();
  if (best_k != 0 && !best_entries.empty()) {
    scan.found = true;
    scan.pset.L = stats.L;
    scan.pset.k = best_k;
    scan.pset.alpha_prime = params.alpha_prime;
    scan.pset.entries = std::move(best_entries);
  }
  return scan;
}

QnrCount qnr_prime_count(uint64_t z, const GroupStats& stats) {
  if (z < 3) throw std::domain_error("qnr_prime_count: z must be >= 3");
  if (z > 100'000'000ULL)
    throw std::domain_error("qnr_prime_count: z capped at 10^8");
  QnrCount out;
  std::vector<uint32_t> primes = modmath::sieve_primes(static_cast<uint32_t>(z));
  for (uint32_t p : primes) {
    if (qnr_mod_all(Int(p), stats.q_list)) ++out.count;
  }
  out.lower_bound_shape =
      static_cast<double>(z) /
      (std::pow(2.0, static_cast<double>(stats.omega_L) + 1.0) *
       std::log(static_cast<double>(z)));
  return out;
}

namespace {

struct HalfSubset {
  Int residue;
  unsigned size = 0;
  std::vector<uint16_t> indices;
};

// Enumerates subsets of entries[lo, hi) with at most max_size elements,
// in deterministic index order, bounded by cap.
bool enumerate_half(const std::vector<std::pair<Int, Int>>& entries,
                    size_t lo, size_t hi, unsigned max_size, const Int& L,
                    uint64_t cap, std::vector<HalfSubset>& out) {
  out.clear();
  out.push_back(HalfSubset{Int(1), 0, {}});
  for (size_t i = lo; i < hi; ++i) {
    size_t count = out.size();
    for (size_t s = 0; s < count; ++s) {
      if (out[s].size >= max_size) continue;
      if (out.size() >= cap) return false;
      HalfSubset next;
      next.residue = (out[s].residue * entries[i].second) % L;
      next.size = out[s].size + 1;
      next.indices = out[s].indices;
      next.indices.push_back(static_cast<uint16_t>(i));
      out.push_back(std::move(next));
    }
  }
  return true;
}

}  // namespace

SubsetSearchOutcome subset_search(const PrimeSet& pset, const GroupStats& stats,
                                  const SearchLimits& limits) {
  if (pset.entries.empty())
    throw std::domain_error("subset_search: prime set is empty");
  if (pset.L != stats.L)
    throw std::domain_error("subset_search: prime set and stats disagree on L");
  if (limits.max_size < 3 || limits.max_size % 2 == 0)
    throw std::domain_error("subset_search: max_size must be odd and >= 3");

  SubsetSearchOutcome outcome;
  const Int& L = pset.L;
  const Int target = L - 1;  // -1 mod L
  const size_t n = pset.entries.size();
  const size_t half = n / 2;

  std::vector<HalfSubset> left, right;
  bool ok_left = enumerate_half(pset.entries, 0, half, limits.max_size, L,
                                limits.table_cap, left);
  bool ok_right = enumerate_half(pset.entries, half, n, limits.max_size, L,
                                 limits.table_cap, right);
  outcome.table_overflow = !ok_left || !ok_right;

  // residue -> (size -> table rows)
  std::map<Int, std::map<unsigned, std::vector<size_t>>> lookup;
  for (size_t i = 0; i < left.size(); ++i)
    lookup[left[i].residue][left[i].size].push_back(i);

  std::vector<ConstructionResult> results;
  for (const HalfSubset& rb : right) {
    // All entry primes are QNR mod every q | L, hence units mod L.
    auto inv = modmath::mod_inv(rb.residue, L);
    Int needed = (target * inv.value) % L;
    auto it = lookup.find(needed);
    if (it == lookup.end()) continue;
    for (const auto& [sa, rows] : it->second) {
      unsigned total = sa + rb.size;
      if (total % 2 == 0 || total < 3 || total > limits.max_size) continue;
      for (size_t row : rows) {
        ++outcome.matches_checked;
        ConstructionResult res;
        for (uint16_t idx : left[row].indices)
          res.subset.push_back(pset.entries[idx]);
        for (uint16_t idx : rb.indices) res.subset.push_back(pset.entries[idx]);
        res.subset_size = total;
        res.m = 1;
        for (const auto& [d, p] : res.subset) res.m *= p;
        res.trace_residue = res.m % L;
        res.trace_sign = -1;
        if (res.trace_residue != target) continue;  // re-verified directly
        res.certificate = criteria::is_lucas_carmichael(res.m);
        if (!res.certificate.verdict) continue;
        results.push_back(std::move(res));
      }
    }
  }

  std::sort(results.begin(), results.end(),
            [](const ConstructionResult& a, const ConstructionResult& b) {
              if (a.m != b.m) return a.m < b.m;
              return a.subset < b.subset;
            });
  if (results.size() > limits.max_results) results.resize(limits.max_results);
  outcome.results = std::move(results);
  return outcome;
}

namespace {

// (u/v)^v <= C(u, v) <= (ue/v)^v; the lower bound is checked exactly,
// the upper one in floating point (its margin is at least sqrt-sized).
bool binomial_sandwich_holds(uint64_t u, uint64_t v) {
  if (v == 0) return true;
  Int binom;
  mpz_bin_uiui(binom.get_mpz_t(), u, v);
  Int lhs, vv;
  mpz_ui_pow_ui(lhs.get_mpz_t(), u, v);
  mpz_ui_pow_ui(vv.get_mpz_t(), v, v);
  if (lhs > binom * vv) return false;
  double log_upper = static_cast<double>(v) *
                     (1.0 + std::log(static_cast<double>(u)) -
                      std::log(static_cast<double>(v)));
  return log_mpz(binom) <= log_upper;
}

}  // namespace

CountingBound counting_bound(uint64_t n, uint64_t t, uint64_t n_G) {
  CountingBound out;
  out.preconditions_ok = n_G < t && n > n_G && t < n - n_G;
  if (!out.preconditions_ok) {
    out.value = 0;
    return out;
  }
  Int top, bottom;
  mpz_bin_uiui(top.get_mpz_t(), n - n_G, t - n_G);
  mpz_bin_uiui(bottom.get_mpz_t(), n, n_G);
  out.value = mpq_class(top) / mpq_class(bottom);
  out.value.canonicalize();
  out.sandwich_ok = binomial_sandwich_holds(n - n_G, t - n_G) &&
                    binomial_sandwich_holds(n, n_G);
  return out;
}

const char* to_string(PipelineStatus status) {
  switch (status) {
    case PipelineStatus::Emitted:
      return "emitted";
    case PipelineStatus::CleanButEmpty:
      return "clean-but-empty";
    case PipelineStatus::EmptyQSet:
      return "empty-q-set";
    case PipelineStatus::EmptyPrimeSet:
      return "empty-prime-set";
  }
  return "unknown";
}

ConstructionReport run_pipeline(const SieveParams& params,
                                const SearchLimits& limits) {
  ConstructionReport report;
  report.params = params;
  report.limits = limits;
  report.qset = sieve_q(params);
  report.diagnostics.lemma1_q_count_shape = report.qset.size_bound_shape;
  if (report.qset.q_list.empty()) {
    report.status = PipelineStatus::EmptyQSet;
    report.status_note = "infeasible at this scale: sieve produced no primes";
    return report;
  }
  report.stats = assemble_L(report.qset);
  report.diagnostics.lemma2_qnr_count_shape =
      params.x_bound.get_d() /
      (std::pow(2.0, static_cast<double>(report.stats->omega_L) + 1.0) *
       log_mpz(params.x_bound));
  report.diagnostics.lemma4_log_s_cap = report.stats->log_s_cap;
  report.diagnostics.lemma4_log_n_cap = report.stats->log_n_cap;
  report.diagnostics.t_reference = report.stats->t_reference;
  report.kscan = find_k(*report.stats, params);
  report.diagnostics.lemma3_k_count_bound = report.kscan->count_bound;
  if (!report.kscan->found) {
    report.status = PipelineStatus::EmptyPrimeSet;
    report.status_note = "no k in [2, k_max] yielded a nonempty prime set";
    return report;
  }
  SubsetSearchOutcome search =
      subset_search(report.kscan->pset, *report.stats, limits);
  report.results = std::move(search.results);
  report.table_overflow = search.table_overflow;
  if (report.results.empty()) {
    report.status = PipelineStatus::CleanButEmpty;
    report.status_note = "pipeline ran clean but emitted no certified number";
  } else {
    report.status = PipelineStatus::Emitted;
  }
  return report;
}

}  // namespace construct
}  // namespace ecarm
