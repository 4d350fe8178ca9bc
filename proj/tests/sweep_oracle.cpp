// Parameter sweep driver: L over products of 2-5 primes from
// {3, 7, 11, 19, 23, 31, 43}, k <= 10^5, x_bound 10^9, subset size <= 7.
// Prints every emitting configuration in sweep order; the first one becomes
// the frozen golden in the acceptance suite.
#include <chrono>
#include <iostream>
#include <vector>

#include "ecarm/construct.hpp"

using namespace ecarm;
using namespace ecarm::construct;

int main(int argc, char** argv) {
  const std::vector<int> pool{3, 7, 11, 19, 23, 31, 43};
  uint64_t k_max = argc > 1 ? std::stoull(argv[1]) : 100000;
  bool stop_at_first = argc <= 2;

  SieveParams params;
  params.k_max = k_max;
  params.x_bound = 1'000'000'000;
  SearchLimits limits;
  limits.max_size = 7;
  limits.max_results = 4;

  int emitting = 0;
  // Subsets ordered by size, then lexicographically over the sorted pool.
  for (unsigned size = 2; size <= 5; ++size) {
    std::vector<unsigned> idx(size);
    for (unsigned i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      std::vector<Int> qs;
      for (unsigned i : idx) qs.push_back(pool[i]);

      auto t0 = std::chrono::steady_clock::now();
      GroupStats stats = group_stats_from_primes(qs, params);
      KScan scan = find_k(stats, params);
      std::cout << "L = " << stats.L << " (q =";
      for (const Int& q : qs) std::cout << ' ' << q;
      std::cout << ")";
      if (!scan.found) {
        std::cout << " : no prime set\n";
      } else {
        SubsetSearchOutcome outcome = subset_search(scan.pset, stats, limits);
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        std::cout << " : k = " << scan.pset.k << ", "
                  << scan.pset.entries.size() << " primes, "
                  << outcome.results.size() << " emissions (" << ms << " ms)";
        if (!outcome.results.empty()) {
          ++emitting;
          std::cout << "\n  EMITTING";
          for (const auto& res : outcome.results) {
            std::cout << "\n  m = " << res.m << " =";
            for (const auto& [d, p] : res.subset) std::cout << ' ' << p;
            std::cout << "  (size " << res.subset_size << ", certified "
                      << (res.certificate.verdict ? "true" : "false") << ")";
          }
          std::cout << "\n";
          if (stop_at_first) return 0;
        } else {
          std::cout << "\n";
        }
      }

      // next combination
      int i = static_cast<int>(size) - 1;
      while (i >= 0 && idx[i] == pool.size() - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (unsigned j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  std::cout << "emitting configurations: " << emitting << "\n";
  return emitting > 0 ? 0 : 1;
}
