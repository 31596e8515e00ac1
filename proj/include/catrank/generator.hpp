#ifndef CATRANK_GENERATOR_HPP
#define CATRANK_GENERATOR_HPP

#include <cstdint>
#include <random>

#include "catrank/skeleton.hpp"

namespace catrank {

// Parameters for the random environment generator. References are injected
// only at hom positions (cat hom entries and susp inners), so every
// generated environment is legal by construction: reference cycles can pass
// only through hom positions.
struct GenParams {
  int max_depth = 4;
  int num_defs = 3;
  double p_cycle = 0.0;  // probability that a hom position becomes a reference
  bool allow_omegasusp = true;
};

// Splitmix64 step, used to derive independent per-case seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index);

// Deterministic for a fixed seed. The last definition is marked main.
SkeletonEnv generate_env(std::uint64_t seed, const GenParams& params);

// Closed random expression (no references).
ExprPtr generate_expr(std::uint64_t seed, const GenParams& params);

// Random CNF ordinal with nesting depth at most `depth`.
Ordinal generate_ordinal(std::uint64_t seed, int depth = 2);

}  // namespace catrank

#endif  // CATRANK_GENERATOR_HPP
