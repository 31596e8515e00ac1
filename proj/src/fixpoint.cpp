#include "catrank/fixpoint.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace catrank {

bool Card::operator==(const Card& o) const {
  if (is_aleph0() || o.is_aleph0()) return is_aleph0() && o.is_aleph0();
  return fin_value() == o.fin_value();
}

bool Card::operator<(const Card& o) const {
  if (is_aleph0()) return false;
  if (o.is_aleph0()) return true;
  return fin_value() < o.fin_value();
}

Card card_add(const Card& a, const Card& b) {
  if (a.is_aleph0() || b.is_aleph0()) return Card::aleph0();
  return Card::fin(a.fin_value() + b.fin_value());
}

Card card_mul(const Card& a, const Card& b) {
  if (a.is_fin() && a.fin_value() == 0) return Card::fin(0);
  if (b.is_fin() && b.fin_value() == 0) return Card::fin(0);
  if (a.is_aleph0() || b.is_aleph0()) return Card::aleph0();
  return Card::fin(a.fin_value() * b.fin_value());
}

std::string print_card(const Card& c) {
  if (c.is_aleph0()) return "aleph0";
  return "Fin(" + c.fin_value().str() + ")";
}

PolyFunctor parse_functor(std::string_view text) {
  PolyFunctor f;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& m) -> void {
    throw eval_error("functor: " + m + " at offset " + std::to_string(pos));
  };
  auto parse_int = [&]() -> BigInt {
    skip();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail("expected integer");
    BigInt v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      ++pos;
    }
    return v;
  };
  auto set_coeff = [&](std::size_t degree, const BigInt& c) {
    if (f.coefficients.size() <= degree) f.coefficients.resize(degree + 1, BigInt(0));
    f.coefficients[degree] += c;
  };

  while (true) {
    skip();
    BigInt coeff = 1;
    std::size_t degree = 0;
    bool saw_int = false, saw_x = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coeff = parse_int();
      saw_int = true;
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip();
        if (pos >= text.size() || text[pos] != 'X') fail("expected 'X' after '*'");
      }
    }
    skip();
    if (pos < text.size() && text[pos] == 'X') {
      ++pos;
      saw_x = true;
      degree = 1;
      skip();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        BigInt d = parse_int();
        if (d > 64) fail("degree too large");
        degree = static_cast<std::size_t>(d);
      }
    }
    if (!saw_int && !saw_x) fail("expected a term");
    set_coeff(degree, coeff);
    skip();
    if (pos >= text.size()) break;
    if (text[pos] != '+') fail("expected '+'");
    ++pos;
  }
  if (f.coefficients.empty()) f.coefficients.push_back(BigInt(0));
  return f;
}

std::string print_functor(const PolyFunctor& f) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t d = 0; d < f.coefficients.size(); ++d) {
    const BigInt& c = f.coefficients[d];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (d == 0) {
      os << c.str();
    } else {
      if (c != 1) os << c.str() << "*";
      os << "X";
      if (d > 1) os << "^" << d;
    }
  }
  if (first) os << "0";
  return os.str();
}

Card card_eval(const PolyFunctor& f, const Card& x) {
  Card acc = Card::fin(0);
  Card power = Card::fin(1);  // x^0
  for (std::size_t d = 0; d < f.coefficients.size(); ++d) {
    if (d > 0) power = card_mul(power, x);
    if (f.coefficients[d] == 0) continue;
    acc = card_add(acc, card_mul(Card::fin(f.coefficients[d]), power));
  }
  return acc;
}

std::string direction_name(Direction d) {
  return d == Direction::initial ? "initial" : "terminal";
}

namespace {

std::string index_key(const OrdinalExt& idx) { return print_ordinal(idx); }

}  // namespace

FixpointReport run_chain(const StageUniverse& u, const std::vector<OrdinalExt>& schedule,
                         Direction direction) {
  if (schedule.empty()) throw eval_error("empty schedule");
  for (std::size_t i = 0; i + 1 < schedule.size(); ++i) {
    if (!(schedule[i] < schedule[i + 1]))
      throw eval_error("schedule is not strictly ascending at position " + std::to_string(i));
  }
  if (!(schedule[0] == OrdinalExt(Ordinal{})))
    throw eval_error("schedule must start at stage 0");

  FixpointReport report;
  report.universe = u.name;
  report.direction = direction;

  std::vector<StageValue> prefix;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const OrdinalExt& idx = schedule[i];
    StageValue value;
    if (i == 0) {
      value = u.start(direction);
    } else if (idx.is_lambda() || idx.small().is_limit()) {
      value = u.limit(idx, prefix, direction);
    } else {
      const OrdinalExt& previous = schedule[i - 1];
      if (previous.is_lambda())
        throw eval_error("successor stage scheduled after LAMBDA");
      if (!(OrdinalExt(pred(idx.small())) == previous))
        throw eval_error("schedule gap before successor stage " + print_ordinal(idx));
      value = u.step(prefix.back());
    }

    StageValue next = u.step(value);
    StageEq eq = u.stage_equal(value, next);
    if (eq.kind == StageEq::Kind::undecided)
      throw eval_error("stage comparison undecided at stage " + print_ordinal(idx) +
                       " of universe " + u.name);

    report.visited.push_back(VisitedStage{idx, value, u.describe(value), eq});
    prefix.push_back(value);

    if (eq.kind == StageEq::Kind::equal) {
      report.stabilized = true;
      report.stabilized_at = idx;
      report.lambek = true;
      break;
    }
  }
  return report;
}

bool lambek_check(const StageUniverse& u, const FixpointReport& report) {
  if (!report.stabilized) throw eval_error("lambek_check requires a stabilized report");
  const VisitedStage& last = report.visited.back();
  StageEq eq = u.stage_equal(last.value, u.step(last.value));
  return eq.kind == StageEq::Kind::equal;
}

// ---------------------------------------------------------------------------
// rank universe

namespace {

Ordinal omega_squared() { return Ordinal::power(Ordinal::finite(2)); }

}  // namespace

StageUniverse rank_universe(std::vector<ExprPtr> corpus, SkeletonEnv corpus_env) {
  auto env = std::make_shared<SkeletonEnv>(std::move(corpus_env));
  auto shared_corpus = std::make_shared<std::vector<ExprPtr>>(std::move(corpus));

  StageUniverse u;
  u.name = "rank";
  u.start = [](Direction) -> StageValue { return OrdinalExt(Ordinal{}); };
  u.step = [](const StageValue& s) -> StageValue {
    const auto& idx = std::get<OrdinalExt>(s);
    if (idx.is_lambda()) return idx;  // Lambda is a fixed point
    return OrdinalExt(succ(idx.small()));
  };
  u.limit = [](const OrdinalExt& idx, const std::vector<StageValue>&, Direction) -> StageValue {
    return idx;
  };
  u.describe = [](const StageValue& s) {
    return "Cat_{<" + print_ordinal(std::get<OrdinalExt>(s)) + "}";
  };
  u.stage_equal = [env, shared_corpus](const StageValue& a, const StageValue& b) -> StageEq {
    const auto& x = std::get<OrdinalExt>(a);
    const auto& y = std::get<OrdinalExt>(b);
    if (x == y) return StageEq::equal();
    const OrdinalExt& lo = x < y ? x : y;
    if (lo.is_small() && lo.small() < omega_squared()) {
      ExprPtr w = construct(lo.small());
      return StageEq::distinct("rank " + print_ordinal(lo.small()) + " witness " + print_expr(w),
                               w);
    }
    if (!shared_corpus->empty()) {
      RankEval re(*env);
      for (const ExprPtr& e : *shared_corpus) {
        if (re.member(e, x) != re.member(e, y))
          return StageEq::distinct("corpus witness " + print_expr(e), e);
      }
      return StageEq::equal();
    }
    return StageEq::undecided();
  };
  return u;
}

// ---------------------------------------------------------------------------
// bounded universe

namespace {

struct BoundedCtx {
  SkeletonEnv env;
  std::vector<ExprPtr> corpus;
  std::map<std::string, std::unordered_map<ExprPtr, bool>> memo;

  bool finite_objects(const ExprPtr& e0) {
    ExprPtr e = resolve(env, e0);
    if (as<OmegaSuspT>(e)) return false;
    if (const auto* c = as<CoprodT>(e)) {
      for (const auto& comp : c->components)
        if (!finite_objects(comp)) return false;
    }
    return true;
  }

  // Count of distinct expression nodes reachable through refs, components
  // and homs. The rank of a hereditarily finite expression with an acyclic
  // hom graph is strictly below this count, so membership at a limit stage
  // is settled at that finite depth.
  std::size_t reachable_nodes(const ExprPtr& root) {
    std::unordered_set<const Expr*> seen;
    std::vector<ExprPtr> work{resolve(env, root)};
    while (!work.empty()) {
      ExprPtr e = work.back();
      work.pop_back();
      if (!seen.insert(e.get()).second) continue;
      if (const auto* n = as<NodeT>(e)) {
        for (const auto& [pair, hom] : n->homs) work.push_back(resolve(env, hom));
      } else if (const auto* s = as<SuspT>(e)) {
        work.push_back(resolve(env, s->inner));
      } else if (const auto* c = as<CoprodT>(e)) {
        for (const auto& comp : c->components) work.push_back(resolve(env, comp));
      } else if (const auto* o = as<OmegaSuspT>(e)) {
        work.push_back(resolve(env, o->inner));
      }
    }
    return seen.size();
  }

  // The n-th member of the canonical fundamental sequence of a limit below
  // w^2: (mu + w)[n] = mu + n.
  Ordinal fundamental(const Ordinal& lim, std::uint64_t n) {
    std::vector<Ordinal::Term> terms = lim.terms();
    if (terms.empty() || !terms.back().exponent.is_finite() ||
        terms.back().exponent.finite_value() != 1)
      throw eval_error("bounded stages support limits below w^2 only, got " +
                       print_ordinal(lim));
    if (terms.back().coefficient == 1) {
      terms.pop_back();
    } else {
      terms.back().coefficient -= 1;
    }
    return add(Ordinal::from_terms(std::move(terms)), Ordinal::finite(n));
  }

  bool contains(const OrdinalExt& idx, const ExprPtr& e0) {
    ExprPtr e = resolve(env, e0);
    const std::string key = index_key(idx);
    auto& table = memo[key];
    auto hit = table.find(e);
    if (hit != table.end()) return hit->second;
    bool v = contains_impl(idx, e);
    table[e] = v;
    return v;
  }

  bool contains_impl(const OrdinalExt& idx, const ExprPtr& e) {
    Eval ev(env);
    if (idx.is_lambda()) {
      // Everything hereditarily finite with a small rank is in the stage.
      RankEval re(env);
      return re.bounded_member(e, OrdinalExt::lambda());
    }
    const Ordinal& o = idx.small();
    if (o.is_zero()) return ev.is_point_like(e);
    if (o.is_limit()) {
      // Colimit over all smaller stages; by monotonicity membership is
      // settled at the fundamental-sequence member indexed by the node count.
      std::uint64_t bound = static_cast<std::uint64_t>(reachable_nodes(e)) + 1;
      return contains(OrdinalExt(fundamental(o, bound)), e);
    }
    // successor stage: finitely many objects, every hom in the previous stage
    if (!finite_objects(e)) return false;
    OrdinalExt prev(pred(o));
    HomFamily fam = ev.hom_pairs(e);
    for (const auto& f : fam.finite)
      if (!contains(prev, f.hom)) return false;
    // a linear family implies infinitely many objects; unreachable here
    if (!fam.linear.empty()) return false;
    return true;
  }
};

}  // namespace

std::vector<ExprPtr> bounded_witness_corpus(std::size_t horizon) {
  std::vector<ExprPtr> corpus;
  ExprPtr e = mk_empty();
  corpus.push_back(e);
  for (std::size_t n = 1; n <= horizon; ++n) {
    e = mk_susp(e);
    corpus.push_back(e);
  }
  corpus.push_back(mk_point());
  return corpus;
}

StageUniverse bounded_universe(std::vector<ExprPtr> corpus, SkeletonEnv corpus_env) {
  auto ctx = std::make_shared<BoundedCtx>();
  ctx->env = std::move(corpus_env);
  ctx->corpus = std::move(corpus);

  StageUniverse u;
  u.name = "bounded";
  u.start = [](Direction) -> StageValue { return BoundedStage{OrdinalExt(Ordinal{})}; };
  u.step = [](const StageValue& s) -> StageValue {
    const auto& st = std::get<BoundedStage>(s);
    if (st.index.is_lambda()) return st;
    return BoundedStage{OrdinalExt(succ(st.index.small()))};
  };
  u.limit = [](const OrdinalExt& idx, const std::vector<StageValue>&, Direction) -> StageValue {
    return BoundedStage{idx};
  };
  u.describe = [](const StageValue& s) {
    return "Cat^{<w}_{<" + print_ordinal(std::get<BoundedStage>(s).index) + "}";
  };
  u.stage_equal = [ctx](const StageValue& a, const StageValue& b) -> StageEq {
    const auto& x = std::get<BoundedStage>(a).index;
    const auto& y = std::get<BoundedStage>(b).index;
    if (x == y) return StageEq::equal();
    for (const ExprPtr& e : ctx->corpus) {
      if (ctx->contains(x, e) != ctx->contains(y, e))
        return StageEq::distinct("corpus witness " + print_expr(e), e);
    }
    return StageEq::equal();
  };
  return u;
}

// ---------------------------------------------------------------------------
// card universe

StageUniverse card_universe(PolyFunctor f) {
  auto functor = std::make_shared<PolyFunctor>(std::move(f));

  StageUniverse u;
  u.name = "card";
  u.start = [](Direction d) -> StageValue {
    return d == Direction::initial ? Card::fin(0) : Card::fin(1);
  };
  u.step = [functor](const StageValue& s) -> StageValue {
    return card_eval(*functor, std::get<Card>(s));
  };
  u.limit = [](const OrdinalExt& idx, const std::vector<StageValue>& prefix,
               Direction direction) -> StageValue {
    (void)idx;
    if (prefix.empty()) return Card::fin(0);
    bool strictly_increasing = prefix.size() >= 2;
    Card best = std::get<Card>(prefix[0]);
    for (std::size_t i = 1; i < prefix.size(); ++i) {
      const Card& c = std::get<Card>(prefix[i]);
      if (!(std::get<Card>(prefix[i - 1]) < c)) strictly_increasing = false;
      if (best < c) best = c;
    }
    if (strictly_increasing) {
      if (direction == Direction::terminal)
        throw eval_error(
            "terminal-direction limit of a strictly increasing Card chain is not "
            "representable");
      return Card::aleph0();
    }
    return best;
  };
  u.describe = [](const StageValue& s) { return print_card(std::get<Card>(s)); };
  u.stage_equal = [](const StageValue& a, const StageValue& b) -> StageEq {
    const Card& x = std::get<Card>(a);
    const Card& y = std::get<Card>(b);
    if (x == y) return StageEq::equal();
    return StageEq::distinct("cardinalities differ: " + print_card(x) + " vs " + print_card(y));
  };
  return u;
}

// ---------------------------------------------------------------------------
// truncation tower (terminal direction)

StageUniverse trunc_universe() {
  StageUniverse u;
  u.name = "trunc";
  u.start = [](Direction) -> StageValue { return TruncLabel{-2, false}; };
  u.step = [](const StageValue& s) -> StageValue {
    TruncLabel l = std::get<TruncLabel>(s);
    if (l.omega) return l;
    return TruncLabel{l.n + 1, false};
  };
  u.limit = [](const OrdinalExt&, const std::vector<StageValue>&, Direction) -> StageValue {
    return TruncLabel{0, true};
  };
  u.describe = [](const StageValue& s) {
    TruncLabel l = std::get<TruncLabel>(s);
    if (l.omega) return std::string("Cat_w");
    return "Cat_{(" + std::to_string(l.n) + "," + std::to_string(l.n + 2) + ")}";
  };
  u.stage_equal = [](const StageValue& a, const StageValue& b) -> StageEq {
    TruncLabel x = std::get<TruncLabel>(a);
    TruncLabel y = std::get<TruncLabel>(b);
    if (x == y) return StageEq::equal();
    return StageEq::distinct("labels differ");
  };
  return u;
}

// ---------------------------------------------------------------------------
// schedule parsing

namespace {

Ordinal limit_part(const Ordinal& o) {
  std::vector<Ordinal::Term> terms = o.terms();
  if (!terms.empty() && terms.back().exponent.is_zero()) terms.pop_back();
  return Ordinal::from_terms(std::move(terms));
}

void expand_range(const Ordinal& a, const Ordinal& b, std::size_t horizon,
                  std::vector<OrdinalExt>& out) {
  constexpr std::size_t kMaxStages = 100000;
  Ordinal cur = a;
  std::size_t successors = 0;
  while (cur <= b) {
    if (out.size() >= kMaxStages)
      throw eval_error("schedule range " + print_ordinal(a) + ".." + print_ordinal(b) +
                       " does not reach its endpoint at this horizon");
    out.emplace_back(cur);
    if (cur == b) break;
    if (cur.is_limit() || cur.is_zero()) successors = 0;
    if (successors >= horizon) {
      Ordinal nl = add(limit_part(cur), Ordinal::omega());
      if (!(nl <= b)) break;  // unreachable successor tail is dropped
      cur = nl;
      successors = 0;
    } else {
      cur = succ(cur);
      ++successors;
    }
  }
}

}  // namespace

std::vector<OrdinalExt> parse_schedule(std::string_view text, std::size_t horizon) {
  std::vector<OrdinalExt> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view item =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                           : comma - start);
    std::size_t dots = item.find("..");
    if (dots != std::string_view::npos) {
      Ordinal a = parse_ordinal(item.substr(0, dots));
      Ordinal b = parse_ordinal(item.substr(dots + 2));
      if (!(a <= b)) throw eval_error("descending schedule range");
      expand_range(a, b, horizon, out);
    } else {
      out.push_back(parse_ordinal_ext(item));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace catrank
