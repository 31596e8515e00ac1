#ifndef CATRANK_SKELETON_HPP
#define CATRANK_SKELETON_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "catrank/ordinal.hpp"

namespace catrank {

// Finitely presented, possibly cyclic skeletons of higher categories.
// A skeleton is a set of objects together with, for every ordered pair of
// objects, a smaller skeleton serving as the hom. The constructors:
//
//   point         the terminal skeleton *
//   empty         the initial skeleton with no objects
//   cat {...}     explicit objects and hom table (omitted entries = empty)
//   susp(d)       two objects bot, top with hom(bot,top) = d,
//                 hom(bot,bot) = hom(top,top) = point, hom(top,bot) = empty
//   coprod(...)   disjoint union; cross homs are empty
//   omegasusp(d)  the countable coproduct of susp^n(d) over all n >= 0
//   name          reference into the enclosing environment

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct PointT {};
struct EmptyT {};
struct NodeT {
  std::vector<std::string> objects;
  // Ordered for stable printing; omitted pairs denote the empty skeleton.
  std::vector<std::pair<std::pair<std::string, std::string>, ExprPtr>> homs;
  const ExprPtr* find_hom(const std::string& a, const std::string& b) const;
};
struct SuspT {
  ExprPtr inner;
};
struct CoprodT {
  std::vector<ExprPtr> components;
};
struct OmegaSuspT {
  ExprPtr inner;
};
struct RefT {
  std::string name;
  int line = -1;  // source position, when parsed from text
  int col = -1;
};

struct Expr {
  std::variant<PointT, EmptyT, NodeT, SuspT, CoprodT, OmegaSuspT, RefT> node;
};

ExprPtr mk_point();
ExprPtr mk_empty();
ExprPtr mk_node(std::vector<std::string> objects,
                std::vector<std::pair<std::pair<std::string, std::string>, ExprPtr>> homs);
ExprPtr mk_susp(ExprPtr inner);
ExprPtr mk_coprod(std::vector<ExprPtr> components);
ExprPtr mk_omegasusp(ExprPtr inner);
ExprPtr mk_ref(std::string name, int line = -1, int col = -1);

template <class T>
const T* as(const ExprPtr& e) {
  return e ? std::get_if<T>(&e->node) : nullptr;
}

class eval_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Environment of named definitions. Immutable after validation; reference
// cycles are legal only through hom positions (cat hom entries and susp
// inners). Cycles through coprod or omegasusp component positions, and pure
// alias cycles, are ill-founded and rejected by validate().
class SkeletonEnv {
 public:
  SkeletonEnv() = default;

  void define(std::string name, ExprPtr body);
  void set_main(std::string name) { main_ = std::move(name); }

  const std::optional<std::string>& main() const { return main_; }
  const std::vector<std::pair<std::string, ExprPtr>>& defs() const { return defs_; }

  const ExprPtr* lookup(const std::string& name) const;
  // Throws eval_error when the name is unknown.
  const ExprPtr& require(const std::string& name) const;

  // The definition name of a body node, when the node is one.
  const std::string* name_of(const Expr* node) const;

  // Checks that every reference resolves and that every reference cycle is
  // legal. Throws eval_error naming an offending definition otherwise.
  void validate() const;

  // Body of main, the unique definition, or an error.
  const ExprPtr& entry(const std::optional<std::string>& requested = std::nullopt) const;

 private:
  std::vector<std::pair<std::string, ExprPtr>> defs_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<const Expr*, std::string> names_;
  std::optional<std::string> main_;
};

// Follows reference chains to a non-reference expression.
ExprPtr resolve(const SkeletonEnv& env, ExprPtr e);

// One hom family: the finitely many hom skeletons of an expression plus the
// N-indexed families {susp^n(inner)} contributed by omegasusp components.
// Pair labels and loci are carried for witness construction.
struct HomFamily {
  struct Fin {
    std::string a, b;
    ExprPtr hom;
  };
  struct Lin {
    std::string a, b;
    ExprPtr inner;
  };
  std::vector<Fin> finite;
  std::vector<Lin> linear;
};

// Memoizing evaluation session over one environment. Queries are pure;
// distinct sessions never share state, so they may run concurrently.
class Eval {
 public:
  explicit Eval(const SkeletonEnv& env) : env_(env) {}

  const SkeletonEnv& env() const { return env_; }

  // True iff the denoted skeleton has at least one object. Reference cycles
  // met during evaluation resolve to false (least fixed point).
  bool has_objects(const ExprPtr& e);

  // Least-fixed-point point-likeness: point is point-like; a cat is
  // point-like iff it has one object whose endo-hom is point-like; a coprod
  // iff exactly one component has objects, that component is point-like and
  // the rest have none. susp, omegasusp and empty never are.
  bool is_point_like(const ExprPtr& e);

  // True iff no omegasusp occurs anywhere reachable from e (through refs,
  // components and homs).
  bool hereditarily_finite(const ExprPtr& e);

  // Object enumeration with component-qualified names; omegasusp
  // contributes "0."-qualified inner objects plus the symbolic pair
  // fam.bot / fam.top standing for the suspension components.
  std::vector<std::string> objects(const ExprPtr& e);

  // The hom of a named object pair, with the omegasusp family pair read at
  // depth one (hom(fam.bot, fam.top) = inner). Returns nullptr for unknown
  // names.
  ExprPtr hom_of_pair(const ExprPtr& e, const std::string& a, const std::string& b);

  // Enumerates exactly the hom skeletons of e. Precondition: e is not a
  // reference (resolve first).
  HomFamily hom_pairs(const ExprPtr& e);

 private:
  bool has_objects_impl(const ExprPtr& e, std::unordered_set<std::string>& in_progress);
  bool is_point_like_impl(const ExprPtr& e, std::unordered_set<std::string>& in_progress);
  bool hf_impl(const ExprPtr& e, std::unordered_set<const Expr*>& seen);
  void objects_into(const ExprPtr& e, const std::string& prefix, std::vector<std::string>& out);

  const SkeletonEnv& env_;
  // Keys own their nodes so addresses can never be reused across entries.
  std::unordered_map<ExprPtr, bool> memo_objects_;
  std::unordered_map<ExprPtr, bool> memo_point_like_;
  std::unordered_map<ExprPtr, bool> memo_hf_;
};

// Convenience single-shot wrappers.
bool has_objects(const SkeletonEnv& env, const ExprPtr& e);
bool is_point_like(const SkeletonEnv& env, const ExprPtr& e);
HomFamily hom_pairs(const SkeletonEnv& env, const ExprPtr& e);

class unsupported_ordinal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A skeleton of rank exactly theta, for theta = w*a + b below w^2:
// susp^b(omegasusp^a(empty)). Throws unsupported_ordinal at or above w^2.
ExprPtr construct(const Ordinal& theta);

// Canonical text form in the skeleton grammar.
std::string print_expr(const ExprPtr& e);
std::string print_env(const SkeletonEnv& env);

// Short display label for an expression: its definition name when it is a
// definition body, otherwise its printed form.
std::string locus_label(const SkeletonEnv& env, const ExprPtr& e);

}  // namespace catrank

#endif  // CATRANK_SKELETON_HPP
