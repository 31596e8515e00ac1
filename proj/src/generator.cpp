#include "catrank/generator.hpp"

#include <algorithm>
#include <functional>

namespace catrank {

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

class Gen {
 public:
  Gen(std::uint64_t seed, const GenParams& params, std::vector<std::string> def_names)
      : rng_(seed), params_(params), def_names_(std::move(def_names)) {}

  // References are emitted only at hom positions that are not below any
  // component position, so every reference cycle is legal at load time.
  ExprPtr expr(int depth, bool in_hom, bool in_component) {
    if (in_hom && !in_component && !def_names_.empty() && chance(params_.p_cycle)) {
      return mk_ref(def_names_[pick(def_names_.size())]);
    }
    if (depth <= 0) return leaf();
    switch (pick_constructor()) {
      case 0: return mk_point();
      case 1: return mk_empty();
      case 2: return node(depth, in_component);
      case 3: return mk_susp(expr(depth - 1, true, in_component));
      case 4: return coprod(depth, in_hom);
      default: return mk_omegasusp(expr(depth - 1, in_hom, true));
    }
  }

 private:
  ExprPtr leaf() {
    switch (pick(3)) {
      case 0: return mk_point();
      case 1: return mk_empty();
      default: return mk_node({"o0"}, {{{"o0", "o0"}, pick(2) ? mk_point() : mk_empty()}});
    }
  }

  int pick_constructor() {
    // point, empty, cat, susp, coprod, omegasusp
    static const int weights[6] = {12, 12, 28, 22, 16, 10};
    int total = 0;
    for (int i = 0; i < 6; ++i) total += (i == 5 && !params_.allow_omegasusp) ? 0 : weights[i];
    int roll = static_cast<int>(pick(static_cast<std::size_t>(total)));
    for (int i = 0; i < 6; ++i) {
      int w = (i == 5 && !params_.allow_omegasusp) ? 0 : weights[i];
      if (roll < w) return i;
      roll -= w;
    }
    return 0;
  }

  ExprPtr node(int depth, bool in_component) {
    std::size_t n = 1 + pick(3);
    std::vector<std::string> objects;
    for (std::size_t i = 0; i < n; ++i) objects.push_back("o" + std::to_string(i));
    std::vector<std::pair<std::pair<std::string, std::string>, ExprPtr>> homs;
    for (const auto& x : objects) {
      for (const auto& y : objects) {
        double p = x == y ? 0.7 : 0.4;
        if (chance(p)) homs.emplace_back(std::make_pair(x, y), expr(depth - 1, true, in_component));
      }
    }
    return mk_node(std::move(objects), std::move(homs));
  }

  ExprPtr coprod(int depth, bool in_hom) {
    std::size_t n = 2 + pick(2);
    std::vector<ExprPtr> comps;
    for (std::size_t i = 0; i < n; ++i) comps.push_back(expr(depth - 1, in_hom, true));
    return mk_coprod(std::move(comps));
  }

  bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }
  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  std::mt19937_64 rng_;
  GenParams params_;
  std::vector<std::string> def_names_;
};

}  // namespace

SkeletonEnv generate_env(std::uint64_t seed, const GenParams& params) {
  std::vector<std::string> names;
  int defs = std::max(1, params.num_defs);
  for (int i = 0; i < defs; ++i) names.push_back("d" + std::to_string(i));
  Gen gen(seed, params, names);
  SkeletonEnv env;
  for (const auto& name : names) env.define(name, gen.expr(params.max_depth, false, false));
  env.set_main(names.back());
  env.validate();
  return env;
}

ExprPtr generate_expr(std::uint64_t seed, const GenParams& params) {
  GenParams closed = params;
  closed.p_cycle = 0.0;
  Gen gen(seed, closed, {});
  return gen.expr(params.max_depth, false, false);
}

Ordinal generate_ordinal(std::uint64_t seed, int depth) {
  std::mt19937_64 rng(seed);
  std::function<Ordinal(int)> go = [&](int d) -> Ordinal {
    std::uniform_int_distribution<int> nterms(0, 3);
    std::uniform_int_distribution<std::uint64_t> coeff(1, 9);
    std::uniform_int_distribution<std::uint64_t> fin(0, 9);
    int k = nterms(rng);
    std::vector<Ordinal> expos;
    for (int i = 0; i < k; ++i) expos.push_back(d > 0 ? go(d - 1) : Ordinal::finite(fin(rng)));
    std::sort(expos.begin(), expos.end(), [](const Ordinal& x, const Ordinal& y) { return y < x; });
    expos.erase(std::unique(expos.begin(), expos.end()), expos.end());
    std::vector<Ordinal::Term> terms;
    for (auto& e : expos) terms.push_back(Ordinal::Term{std::move(e), coeff(rng)});
    return Ordinal::from_terms(std::move(terms));
  };
  return go(depth);
}

}  // namespace catrank
