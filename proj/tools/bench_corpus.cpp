// Benchmark comparing the serial reference runner against the OpenMP runner
// on the corpus-evaluation kernel (rank + certification of generated
// environments). Outcomes must agree bit for bit; only wall time differs.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "catrank/batch.hpp"
#include "catrank/generator.hpp"
#include "catrank/noetherian.hpp"
#include "catrank/rank.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace catrank;

namespace {

CaseOutcome evaluate_case(std::uint64_t seed, std::size_t i) {
  GenParams params;
  params.max_depth = 5;
  params.p_cycle = (i % 3) * 0.2;
  SkeletonEnv env = generate_env(mix_seed(seed, i), params);
  const ExprPtr& e = env.entry();
  Rank r = rank_of(env, e);
  bool certified = certify(env, e).certified();
  if (certified != r.has_small_rank()) return CaseOutcome{false, "disagreement"};
  return CaseOutcome{true, print_rank(r)};
}

double time_run(const char* label, std::size_t n, const CaseFn& fn, int threads,
                std::vector<CaseOutcome>& out) {
  auto start = std::chrono::steady_clock::now();
  out = threads == 1 ? run_cases_serial(n, fn) : run_cases_parallel(n, fn, threads);
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << label << ": " << s << " s (" << n / s << " cases/s)\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 4000;
  std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 0xCA7;

  CaseFn fn = [seed](std::size_t i) { return evaluate_case(seed, i); };

#ifdef _OPENMP
  std::cout << "OpenMP threads available: " << omp_get_max_threads() << "\n";
#else
  std::cout << "built without OpenMP; both runs are serial\n";
#endif

  std::vector<CaseOutcome> serial_out, parallel_out;
  double ts = time_run("serial   ", n, fn, 1, serial_out);
  double tp = time_run("parallel ", n, fn, 0, parallel_out);

  for (std::size_t i = 0; i < n; ++i) {
    if (serial_out[i].ok != parallel_out[i].ok ||
        serial_out[i].detail != parallel_out[i].detail) {
      std::cerr << "MISMATCH at case " << i << "\n";
      return 1;
    }
  }
  std::size_t failures = 0;
  for (const auto& o : serial_out)
    if (!o.ok) ++failures;
  std::cout << "outcomes identical across runners; " << failures << " case failures\n";
  std::cout << "speedup: " << ts / tp << "x\n";
  return failures ? 1 : 0;
}
