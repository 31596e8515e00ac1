#ifndef CATRANK_BATCH_HPP
#define CATRANK_BATCH_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace catrank {

struct CaseOutcome {
  bool ok = true;
  std::string detail;
};

// A case function must be pure up to its index: it derives all randomness
// from the index, shares no mutable state, and may therefore run on any
// thread. Both runners produce identical outcome vectors.
using CaseFn = std::function<CaseOutcome(std::size_t index)>;

// Serial reference runner, kept for testing and benchmarking.
std::vector<CaseOutcome> run_cases_serial(std::size_t n, const CaseFn& fn);

// OpenMP runner; threads == 0 uses the OpenMP default.
std::vector<CaseOutcome> run_cases_parallel(std::size_t n, const CaseFn& fn, int threads = 0);

// threads == 1 dispatches to the serial reference.
std::vector<CaseOutcome> run_cases(std::size_t n, const CaseFn& fn, int threads);

}  // namespace catrank

#endif  // CATRANK_BATCH_HPP
