#ifndef CATRANK_RANK_HPP
#define CATRANK_RANK_HPP

#include <string>
#include <variant>
#include <vector>

#include "catrank/skeleton.hpp"

namespace catrank {

// One step of a parallel morphism tower: the hom of `pair` at the expression
// labelled `locus` leads to the next step's expression.
struct TowerStep {
  std::string locus;
  std::string a, b;
  bool operator==(const TowerStep& o) const { return locus == o.locus && a == o.a && b == o.b; }
};

// Eventually periodic witness for the absence of a small rank: following the
// stem and then looping the cycle yields an infinite tower whose homs are
// never point-like.
struct CycleWitness {
  std::vector<TowerStep> stem;
  std::vector<TowerStep> cycle;  // nonempty
};

// Result of rank evaluation:
//   Bottom        the expression is point-like ("rank < 0")
//   Of(theta)     rank < theta+1 but not rank < theta
//   NoSmallRank   no ordinal bounds the rank; carries a hom-position cycle
struct RankBottom {};
struct RankOf {
  Ordinal value;
};
struct RankNone {
  CycleWitness cycle;
};

class Rank {
 public:
  Rank() : v_(RankBottom{}) {}
  static Rank bottom() { return Rank(RankBottom{}); }
  static Rank of(Ordinal theta) { return Rank(RankOf{std::move(theta)}); }
  static Rank no_small_rank(CycleWitness w) { return Rank(RankNone{std::move(w)}); }

  bool is_bottom() const { return std::holds_alternative<RankBottom>(v_); }
  bool is_of() const { return std::holds_alternative<RankOf>(v_); }
  bool is_no_small_rank() const { return std::holds_alternative<RankNone>(v_); }
  bool has_small_rank() const { return !is_no_small_rank(); }

  // Precondition: is_of().
  const Ordinal& value() const { return std::get<RankOf>(v_).value; }
  // Precondition: is_no_small_rank().
  const CycleWitness& witness() const { return std::get<RankNone>(v_).cycle; }

  bool operator==(const Rank& o) const;
  bool operator!=(const Rank& o) const { return !(*this == o); }

 private:
  explicit Rank(std::variant<RankBottom, RankOf, RankNone> v) : v_(std::move(v)) {}
  std::variant<RankBottom, RankOf, RankNone> v_;
};

std::string print_rank(const Rank& r);

// The contribution of one hom to the bounding sup: Bottom -> 0,
// Of(theta) -> theta + 1. Callers must not pass NoSmallRank.
Ordinal rank_plus_one(const Rank& r);

// Rank evaluator with per-session memoisation; wraps an Eval session.
class RankEval {
 public:
  explicit RankEval(const SkeletonEnv& env) : eval_(env) {}

  Eval& eval() { return eval_; }

  Rank rank_of(const ExprPtr& e);

  // "e in Cat_{<theta}": Bottom is a member everywhere, Of(rho) iff
  // rho < theta, NoSmallRank nowhere (not even at Lambda).
  bool member(const ExprPtr& e, const OrdinalExt& theta);

  // Independent successor-stage route: e is in Cat_{<theta0+1} iff every hom
  // of e is in Cat_{<theta0}, with linear families checked through their sup.
  // Throws eval_error unless theta is a successor.
  bool member_via_homs(const ExprPtr& e, const Ordinal& theta);

  // "e in Cat^{<w}_{<theta}": member and hereditarily finite.
  bool bounded_member(const ExprPtr& e, const OrdinalExt& theta);

 private:
  Rank rank_impl(const ExprPtr& e);

  Eval eval_;
  std::unordered_map<ExprPtr, Rank> memo_;
  std::unordered_map<std::string, std::size_t> in_progress_;  // def -> path depth at entry
  // Guards structural re-entry when a node is shared between definitions.
  std::unordered_map<const Expr*, std::size_t> nodes_in_progress_;
  std::vector<TowerStep> path_;
};

// Single-shot wrappers.
Rank rank_of(const SkeletonEnv& env, const ExprPtr& e);
bool member(const SkeletonEnv& env, const ExprPtr& e, const OrdinalExt& theta);
bool member_via_homs(const SkeletonEnv& env, const ExprPtr& e, const Ordinal& theta);
bool bounded_member(const SkeletonEnv& env, const ExprPtr& e, const OrdinalExt& theta);

}  // namespace catrank

#endif  // CATRANK_RANK_HPP
