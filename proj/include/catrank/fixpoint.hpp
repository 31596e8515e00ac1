#ifndef CATRANK_FIXPOINT_HPP
#define CATRANK_FIXPOINT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "catrank/rank.hpp"
#include "catrank/skeleton.hpp"

namespace catrank {

using BigInt = boost::multiprecision::cpp_int;

// Cardinality shadow of the classical endofunctor examples: exact finite
// values plus aleph_0, into which addition and multiplication absorb.
class Card {
 public:
  Card() : fin_(0) {}
  explicit Card(BigInt n) : fin_(std::move(n)) {}
  static Card fin(BigInt n) { return Card(std::move(n)); }
  static Card aleph0() {
    Card c;
    c.fin_.reset();
    return c;
  }

  bool is_fin() const { return fin_.has_value(); }
  bool is_aleph0() const { return !fin_.has_value(); }
  const BigInt& fin_value() const { return *fin_; }

  bool operator==(const Card& o) const;
  bool operator!=(const Card& o) const { return !(*this == o); }
  bool operator<(const Card& o) const;

 private:
  std::optional<BigInt> fin_;
};

Card card_add(const Card& a, const Card& b);
Card card_mul(const Card& a, const Card& b);
std::string print_card(const Card& c);

// F(X) = c0 + c1*X + ... + cd*X^d with non-negative integer coefficients.
struct PolyFunctor {
  std::vector<BigInt> coefficients;
};

// Mini-grammar: poly := term ("+" term)*;
//               term := INT | INT "*" "X" ("^" INT)? | "X" ("^" INT)?
PolyFunctor parse_functor(std::string_view text);
std::string print_functor(const PolyFunctor& f);

// Polynomial evaluation with aleph_0 absorption; the constant functor is
// unaffected by its argument.
Card card_eval(const PolyFunctor& f, const Card& x);

// Index label for the truncation tower: Cat_{(n, n+2)} for n >= -2, plus the
// symbolic limit label.
struct TruncLabel {
  int n = -2;
  bool omega = false;
  bool operator==(const TruncLabel& o) const { return omega == o.omega && (omega || n == o.n); }
};

// Bounded-subfunctor stage: the predicate "member of stage `index`" over the
// universe's shared evaluator.
struct BoundedStage {
  OrdinalExt index;
};

using StageValue = std::variant<OrdinalExt, BoundedStage, Card, TruncLabel>;

enum class Direction { initial, terminal };

std::string direction_name(Direction d);

struct StageEq {
  enum class Kind { equal, distinct, undecided };
  Kind kind = Kind::equal;
  std::string witness_text;  // set when distinct
  ExprPtr witness_expr;      // set when the witness is a skeleton
  static StageEq equal() { return StageEq{}; }
  static StageEq distinct(std::string text, ExprPtr expr = nullptr) {
    return StageEq{Kind::distinct, std::move(text), std::move(expr)};
  }
  static StageEq undecided() { return StageEq{Kind::undecided, "", nullptr}; }
};

// An abstract transfinite chain instance. step and limit are deterministic;
// stage_equal is symmetric and must carry a checkable witness when distinct.
struct StageUniverse {
  std::string name;
  std::function<StageValue(Direction)> start;
  std::function<StageValue(const StageValue&)> step;
  // Stage for the scheduled limit index, given every previously visited
  // stage value (colimit in the initial direction, limit in the terminal).
  std::function<StageValue(const OrdinalExt&, const std::vector<StageValue>&, Direction)> limit;
  std::function<StageEq(const StageValue&, const StageValue&)> stage_equal;
  std::function<std::string(const StageValue&)> describe;
};

struct VisitedStage {
  OrdinalExt index;
  StageValue value;
  std::string description;
  StageEq comparison;  // against step(value)
};

struct FixpointReport {
  std::string universe;
  Direction direction = Direction::initial;
  std::vector<VisitedStage> visited;
  bool stabilized = false;
  OrdinalExt stabilized_at;  // meaningful iff stabilized
  bool lambek = false;
};

// Visits the scheduled stages in order (the schedule must be strictly
// ascending and start at 0). Successor stages are computed by step from the
// previously scheduled stage, which must be their predecessor; limit stages
// by limit over the visited prefix. Stops at the first stage whose step
// leaves it unchanged. Throws eval_error on undecided comparisons, schedule
// gaps, and universe-specific refusals.
FixpointReport run_chain(const StageUniverse& u, const std::vector<OrdinalExt>& schedule,
                         Direction direction);

// Re-verifies the fixed-point equation at the reported stabilization stage.
bool lambek_check(const StageUniverse& u, const FixpointReport& report);

// Stages are Cat_{<theta}. Distinct small stages are separated by a
// constructed witness of rank min(theta, theta'); above the constructible
// range the comparison falls back to the supplied corpus, or is undecided
// when the corpus is empty. Lambda is a fixed point of step. The
// environment resolves references occurring in corpus expressions.
StageUniverse rank_universe(std::vector<ExprPtr> corpus = {}, SkeletonEnv corpus_env = {});

// Stages are the predicates "member of Cat^{<w}_{<theta}" built by the
// hom-level step rule; stage_equal compares extensionally over the corpus
// and reports the least separating element.
StageUniverse bounded_universe(std::vector<ExprPtr> corpus, SkeletonEnv corpus_env = {});

// Witness corpus for the bounded universe: susp^n(empty) for n <= horizon,
// plus the point.
std::vector<ExprPtr> bounded_witness_corpus(std::size_t horizon);

StageUniverse card_universe(PolyFunctor f);

// Terminal tower of truncation labels Cat_{(n, n+2)} converging to the
// symbolic limit label.
StageUniverse trunc_universe();

// Expands "a..b" into a from a by successors up to `horizon` steps past each
// limit, inserting every limit ordinal <= b, always including b. Plain
// ordinals pass through. Comma-separated ranges concatenate; LAMBDA is
// allowed as a final singleton.
std::vector<OrdinalExt> parse_schedule(std::string_view text, std::size_t horizon);

}  // namespace catrank

#endif  // CATRANK_FIXPOINT_HPP
