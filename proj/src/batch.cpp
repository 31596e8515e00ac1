#include "catrank/batch.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace catrank {

std::vector<CaseOutcome> run_cases_serial(std::size_t n, const CaseFn& fn) {
  std::vector<CaseOutcome> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
  return out;
}

std::vector<CaseOutcome> run_cases_parallel(std::size_t n, const CaseFn& fn, int threads) {
  std::vector<CaseOutcome> out(n);
#ifdef _OPENMP
  if (threads > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  } else {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  }
#else
  (void)threads;
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
#endif
  return out;
}

std::vector<CaseOutcome> run_cases(std::size_t n, const CaseFn& fn, int threads) {
  if (threads < 0) threads = 0;
  if (threads == 1) return run_cases_serial(n, fn);
  return run_cases_parallel(n, fn, threads);
}

}  // namespace catrank
