#ifndef CATRANK_SUITES_HPP
#define CATRANK_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "catrank/batch.hpp"

namespace catrank {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> details;  // first few failure descriptions
  double seconds = 0.0;
  bool pass() const { return failures == 0; }
};

struct SuiteOptions {
  std::uint64_t seed = 0xCA7;
  std::size_t cases = 0;  // 0 selects the suite default
  int threads = 0;        // 0 lets OpenMP decide; 1 forces the serial runner
};

// Named law suites behind `check`. Every suite is deterministic for a fixed
// seed, independent of the thread count.
//
//   ordinals    comparison/addition laws, succ adjacency, codec round trip
//   roundtrip   ordinal and skeleton codecs preserve evaluation
//   lemma2.4    construct/rank round trip and the suspension law
//   lemma2.3    membership agrees with the hom-level successor route
//   lemma3.1    hereditarily finite + finite hom ranks give finite rank
//   lemma3.4    certification agrees with rank; counter-towers replay
//   prop2.5     the rank chain never stabilizes within its budget
//   prop3.2     the bounded chain stabilizes at exactly w
//   thm3.7      local certification matches global; closure at LAMBDA
//   classical   cardinality chains and the truncation tower
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts);

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

}  // namespace catrank

#endif  // CATRANK_SUITES_HPP
