#include "catrank/suites.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "catrank/fixpoint.hpp"
#include "catrank/generator.hpp"
#include "catrank/noetherian.hpp"
#include "catrank/parser.hpp"
#include "catrank/rank.hpp"

namespace catrank {

namespace {

CaseOutcome fail(std::string detail) { return CaseOutcome{false, std::move(detail)}; }
CaseOutcome pass() { return CaseOutcome{}; }

GenParams rotating_params(std::size_t index) {
  GenParams p;
  p.max_depth = 3 + static_cast<int>(index % 2);
  switch (index % 3) {
    case 0: p.p_cycle = 0.0; break;
    case 1: p.p_cycle = 0.2; break;
    default: p.p_cycle = 0.5; break;
  }
  return p;
}

SuiteResult collect(const std::string& name, std::size_t cases,
                    const std::vector<CaseOutcome>& outcomes) {
  SuiteResult r;
  r.name = name;
  r.cases = cases;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].ok) continue;
    ++r.failures;
    if (r.details.size() < 5)
      r.details.push_back("case " + std::to_string(i) + ": " + outcomes[i].detail);
  }
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult suite_ordinals(const SuiteOptions& opts) {
  const std::size_t n = opts.cases ? opts.cases : 10000;
  std::vector<Ordinal> corpus(n);
  for (std::size_t i = 0; i < n; ++i) corpus[i] = generate_ordinal(mix_seed(opts.seed, i));
  std::vector<Ordinal> sorted = corpus;
  std::sort(sorted.begin(), sorted.end(),
            [](const Ordinal& x, const Ordinal& y) { return x < y; });

  auto outcomes = run_cases(
      n,
      [&](std::size_t i) -> CaseOutcome {
        const Ordinal& a = corpus[i];
        const Ordinal& b = corpus[mix_seed(opts.seed ^ 0xb, i) % n];
        const Ordinal& c = corpus[mix_seed(opts.seed ^ 0xc, i) % n];

        Order ab = cmp(a, b), ba = cmp(b, a);
        if ((ab == Order::less) != (ba == Order::greater) ||
            (ab == Order::equal) != (ba == Order::equal))
          return fail("cmp not antisymmetric: " + print_ordinal(a) + " vs " + print_ordinal(b));
        if (ab != Order::greater && cmp(b, c) != Order::greater && cmp(a, c) == Order::greater)
          return fail("cmp not transitive");

        if (add(add(a, b), c) != add(a, add(b, c)))
          return fail("add not associative: " + print_ordinal(a) + ", " + print_ordinal(b) +
                      ", " + print_ordinal(c));
        if (add(a, Ordinal{}) != a || add(Ordinal{}, a) != a) return fail("0 is not a unit");
        if (a <= b && !(add(c, a) <= add(c, b))) return fail("left add not monotone");

        Ordinal s = succ(a);
        if (!(s > a)) return fail("succ not increasing");
        auto lo = std::upper_bound(sorted.begin(), sorted.end(), a,
                                   [](const Ordinal& x, const Ordinal& y) { return x < y; });
        for (auto it = lo; it != sorted.end() && *it < s; ++it)
          if (*it != a) return fail("corpus value strictly between a and succ(a)");

        if (parse_ordinal(print_ordinal(a)) != a)
          return fail("codec round trip failed for " + print_ordinal(a));

        Ordinal sup = sup_linear(LinearFamily{a});
        for (std::uint64_t k = 0; k < 24; k += 5)
          if (!(add(a, Ordinal::finite(k)) < sup)) return fail("sup_linear not an upper bound");
        bool b_above_all = true;
        for (std::uint64_t k = 0; k < 64 && b_above_all; ++k)
          if (!(add(a, Ordinal::finite(k)) < b)) b_above_all = false;
        if (b_above_all && !(b >= sup)) return fail("sup_linear not least");
        return pass();
      },
      opts.threads);
  return collect("ordinals", n, outcomes);
}

// ---------------------------------------------------------------------------

CaseOutcome env_roundtrip_case(std::uint64_t seed, std::size_t index) {
  SkeletonEnv env = generate_env(seed, rotating_params(index));
  std::string text = print_env(env);
  SkeletonEnv back;
  try {
    back = parse_file(text);
  } catch (const std::exception& e) {
    return fail(std::string("reparse failed: ") + e.what() + " for\n" + text);
  }
  if (print_env(back) != text) return fail("print not canonical for\n" + text);

  for (const auto& [name, body] : env.defs()) {
    const ExprPtr& body2 = *back.lookup(name);
    Rank r1 = rank_of(env, body);
    Rank r2 = rank_of(back, body2);
    if (r1 != r2)
      return fail("rank changed for " + name + ": " + print_rank(r1) + " vs " + print_rank(r2));
    if (certify(env, body).certified() != certify(back, body2).certified())
      return fail("certification changed for " + name);
    for (const char* stage : {"1", "w + 1"}) {
      OrdinalExt th = parse_ordinal_ext(stage);
      if (member(env, body, th) != member(back, body2, th))
        return fail("membership at " + std::string(stage) + " changed for " + name);
    }
  }
  return pass();
}

SuiteResult suite_roundtrip(const SuiteOptions& opts) {
  const std::size_t n = opts.cases ? opts.cases : 500;
  auto outcomes = run_cases(
      n,
      [&](std::size_t i) -> CaseOutcome {
        Ordinal x = generate_ordinal(mix_seed(opts.seed, 2 * i), 3);
        if (parse_ordinal(print_ordinal(x)) != x)
          return fail("ordinal codec failed for " + print_ordinal(x));
        return env_roundtrip_case(mix_seed(opts.seed, 2 * i + 1), i);
      },
      opts.threads);
  return collect("roundtrip", n, outcomes);
}

// ---------------------------------------------------------------------------

std::vector<Ordinal> construct_schedule() {
  std::vector<Ordinal> out;
  for (std::uint64_t n = 0; n <= 25; ++n) out.push_back(Ordinal::finite(n));
  for (std::uint64_t a = 1; a <= 3; ++a) {
    for (std::uint64_t b = 0; b <= 10; ++b) {
      Ordinal theta = add(Ordinal::power(Ordinal::finite(1), a), Ordinal::finite(b));
      out.push_back(theta);
    }
  }
  return out;
}

SuiteResult suite_lemma24(const SuiteOptions& opts) {
  const std::size_t n = opts.cases ? opts.cases : 1000;

  // construct/rank round trip over the pinned stage list; every witness is
  // also certified Noetherian
  std::vector<Ordinal> thetas = construct_schedule();
  SkeletonEnv env;
  RankEval re(env);
  std::size_t roundtrip_failures = 0;
  std::string roundtrip_detail;
  for (const Ordinal& theta : thetas) {
    ExprPtr witness = construct(theta);
    if (re.rank_of(witness) != Rank::of(theta)) {
      ++roundtrip_failures;
      roundtrip_detail = "construct round trip failed at " + print_ordinal(theta);
    } else if (!certify(env, witness).certified()) {
      ++roundtrip_failures;
      roundtrip_detail = "construct witness not certified at " + print_ordinal(theta);
    }
  }

  // suspension law on random well-founded expressions
  auto outcomes = run_cases(
      n,
      [&](std::size_t i) -> CaseOutcome {
        GenParams p;
        p.p_cycle = 0.0;
        p.max_depth = 3 + static_cast<int>(i % 2);
        ExprPtr e = generate_expr(mix_seed(opts.seed, i), p);
        SkeletonEnv empty;
        RankEval eval(empty);
        Rank r = eval.rank_of(e);
        if (r.is_no_small_rank()) return fail("well-founded expression got no-small-rank");
        Rank rs = eval.rank_of(mk_susp(e));
        Ordinal expect = sup_finite({rank_plus_one(r), Ordinal::finite(1)});
        if (rs != Rank::of(expect))
          return fail("suspension law failed: rank " + print_rank(r) + ", susp " +
                      print_rank(rs));
        return pass();
      },
      opts.threads);

  SuiteResult r = collect("lemma2.4", n + thetas.size(), outcomes);
  r.failures += roundtrip_failures;
  if (roundtrip_failures) r.details.insert(r.details.begin(), roundtrip_detail);
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult suite_lemma23(const SuiteOptions& opts) {
  const std::size_t n = opts.cases ? opts.cases : 500;
  std::vector<Ordinal> stages;
  for (std::uint64_t k = 1; k <= 12; ++k) stages.push_back(Ordinal::finite(k));
  stages.push_back(parse_ordinal("w + 1"));
  stages.push_back(parse_ordinal("w*2 + 1"));

  auto outcomes = run_cases(
      n,
      [&](std::size_t i) -> CaseOutcome {
        SkeletonEnv env = generate_env(mix_seed(opts.seed, i), rotating_params(i));
        RankEval re(env);
        const ExprPtr& e = env.entry();
        bool was_member = false;  // stages ascend, so membership may only switch on
        for (const Ordinal& theta : stages) {
          bool direct = re.member(e, OrdinalExt(theta));
          bool via = re.member_via_homs(e, theta);
          if (direct != via)
            return fail("membership disagrees at stage " + print_ordinal(theta) + " for\n" +
                        print_env(env));
          if (was_member && !direct)
            return fail("membership not monotone at stage " + print_ordinal(theta));
          was_member = direct;
        }
        return pass();
      },
      opts.threads);
  return collect("lemma2.3", n, outcomes);
}

// ---------------------------------------------------------------------------

SuiteResult suite_lemma31(const SuiteOptions& opts) {
  const std::size_t n = opts.cases ? opts.cases : 1000;
  auto outcomes = run_cases(
      n,
      [&](std::size_t i) -> CaseOutcome {
        GenParams p;
        p.p_cycle = 0.0;
        p.allow_omegasusp = false;
        p.max_depth = 3 + static_cast<int>(i % 3);
        ExprPtr e = generate_expr(mix_seed(opts.seed, i), p);
        SkeletonEnv env;
        RankEval re(env);
        Eval& ev = re.eval();
        if (!ev.hereditarily_finite(e)) return fail("generator produced an omegasusp");

        Rank r = re.rank_of(e);
        if (r.is_no_small_rank()) return fail("cycle-free expression got no-small-rank");
        HomFamily fam = ev.hom_pairs(resolve(env, e));
        Ordinal bound;
        for (const auto& f : fam.finite) {
          Rank hr = re.rank_of(f.hom);
          if (hr.is_of() && !hr.value().is_finite()) return fail("hom rank not finite");
          bound = sup_finite({bound, rank_plus_one(hr)});
        }
        if (!fam.linear.empty()) return fail("unexpected linear hom family");
        if (r.is_of()) {
          if (!r.value().is_finite()) return fail("rank not finite: " + print_rank(r));
          if (!(r.value() <= bound)) return fail("rank exceeds max hom rank + 1");
        }
        return pass();
      },
      opts.threads);
  return collect("lemma3.1", n, outcomes);
}

// ---------------------------------------------------------------------------

SuiteResult suite_lemma34(const SuiteOptions& opts) {
  const std::size_t n = opts.cases ? opts.cases : 1000;
  auto outcomes = run_cases(
      n,
      [&](std::size_t i) -> CaseOutcome {
        SkeletonEnv env = generate_env(mix_seed(opts.seed, i), rotating_params(i));
        const ExprPtr& e = env.entry();
        Rank r = rank_of(env, e);
        NoetherianResult cert = certify(env, e);
        if (cert.certified() != r.has_small_rank())
          return fail(std::string("certification disagrees with rank (") + print_rank(r) +
                      ") for\n" + print_env(env));
        if (!cert.certified()) {
          const Tower& t = *cert.counter_tower;
          std::size_t period = t.stem.size() + t.cycle.size();
          ReplayResult rep = replay_tower(env, e, t, 10 * period);
          if (!rep.ok)
            return fail("counter-tower replay failed at step " +
                        std::to_string(rep.failed_step) + " (" + rep.reason + ") for\n" +
                        print_env(env));
          // the rank evaluator's cycle witness is a tower as well
          Tower rw{r.witness().stem, r.witness().cycle};
          std::size_t rperiod = rw.stem.size() + rw.cycle.size();
          ReplayResult rrep = replay_tower(env, e, rw, 10 * rperiod);
          if (!rrep.ok)
            return fail("rank witness replay failed at step " +
                        std::to_string(rrep.failed_step) + " (" + rrep.reason + ") for\n" +
                        print_env(env));
        }
        return pass();
      },
      opts.threads);
  return collect("lemma3.4", n, outcomes);
}

// ---------------------------------------------------------------------------

SuiteResult suite_prop25(const SuiteOptions& opts) {
  (void)opts;
  SuiteResult r;
  r.name = "prop2.5";
  StageUniverse u = rank_universe();
  FixpointReport rep = run_chain(u, parse_schedule("0..w*2", 50), Direction::initial);
  r.cases = rep.visited.size();
  if (rep.stabilized) {
    ++r.failures;
    r.details.push_back("rank chain stabilized at " + print_ordinal(rep.stabilized_at));
    return r;
  }
  SkeletonEnv env;
  RankEval re(env);
  for (const auto& v : rep.visited) {
    if (v.comparison.kind != StageEq::Kind::distinct || !v.comparison.witness_expr) {
      ++r.failures;
      r.details.push_back("missing witness at stage " + print_ordinal(v.index));
      continue;
    }
    OrdinalExt stage = std::get<OrdinalExt>(v.value);
    bool in_next = re.member(v.comparison.witness_expr, OrdinalExt(succ(stage.small())));
    bool in_current = re.member(v.comparison.witness_expr, stage);
    if (!in_next || in_current) {
      ++r.failures;
      r.details.push_back("witness does not separate stage " + print_ordinal(v.index));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult suite_prop32(const SuiteOptions& opts) {
  (void)opts;
  SuiteResult r;
  r.name = "prop3.2";
  const std::size_t horizon = 50;
  StageUniverse u = bounded_universe(bounded_witness_corpus(horizon + 1));
  FixpointReport rep = run_chain(u, parse_schedule("0..w+1", horizon), Direction::initial);
  r.cases = rep.visited.size();
  if (!rep.stabilized || !(rep.stabilized_at == OrdinalExt(Ordinal::omega()))) {
    ++r.failures;
    r.details.push_back("bounded chain did not stabilize at w");
    return r;
  }
  if (!lambek_check(u, rep)) {
    ++r.failures;
    r.details.push_back("lambek check failed at w");
  }
  // every finite stage n <= horizon is separated by exactly susp^n(empty)
  ExprPtr expected = mk_empty();
  for (std::size_t i = 0; i + 1 < rep.visited.size(); ++i) {
    const auto& v = rep.visited[i];
    bool ok = v.comparison.kind == StageEq::Kind::distinct && v.comparison.witness_expr &&
              print_expr(v.comparison.witness_expr) == print_expr(expected);
    if (!ok) {
      ++r.failures;
      r.details.push_back("stage " + print_ordinal(v.index) +
                          " not separated by susp^n(empty)");
    }
    expected = mk_susp(expected);
  }
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult suite_thm37(const SuiteOptions& opts) {
  const std::size_t n = opts.cases ? opts.cases : 1000;
  auto outcomes = run_cases(
      n,
      [&](std::size_t i) -> CaseOutcome {
        SkeletonEnv env = generate_env(mix_seed(opts.seed, i), rotating_params(i));
        const ExprPtr& e = env.entry();
        Eval ev(env);
        bool whole = certify(env, e).certified();
        bool local = true;
        HomFamily fam = ev.hom_pairs(resolve(env, e));
        for (const auto& f : fam.finite)
          if (!certify(env, f.hom).certified()) local = false;
        for (const auto& l : fam.linear)
          if (!certify(env, l.inner).certified()) local = false;
        if (whole != local)
          return fail(std::string("closure violated: whole ") + (whole ? "yes" : "no") +
                      ", homs " + (local ? "yes" : "no") + " for\n" + print_env(env));
        return pass();
      },
      opts.threads);
  SuiteResult r = collect("thm3.7", n, outcomes);

  // the rank chain closes once LAMBDA is scheduled
  StageUniverse u = rank_universe();
  FixpointReport rep = run_chain(u, parse_schedule("0..w*2,LAMBDA", 12), Direction::initial);
  ++r.cases;
  if (!rep.stabilized || !rep.stabilized_at.is_lambda() || !lambek_check(u, rep)) {
    ++r.failures;
    r.details.push_back("rank chain did not close at LAMBDA");
  }
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult suite_classical(const SuiteOptions& opts) {
  (void)opts;
  SuiteResult r;
  r.name = "classical";
  auto expect = [&](const char* what, bool cond) {
    ++r.cases;
    if (!cond) {
      ++r.failures;
      r.details.push_back(what);
    }
  };

  {
    StageUniverse u = card_universe(parse_functor("X"));
    FixpointReport rep = run_chain(u, parse_schedule("0..w+1", 8), Direction::initial);
    expect("identity functor stabilizes at 0 with Fin(0)",
           rep.stabilized && rep.stabilized_at == OrdinalExt(Ordinal{}) &&
               std::get<Card>(rep.visited.back().value) == Card::fin(0) && lambek_check(u, rep));
  }
  {
    StageUniverse u = card_universe(parse_functor("2"));
    FixpointReport rep = run_chain(u, parse_schedule("0..w+1", 8), Direction::initial);
    expect("constant functor stabilizes at 1 with Fin(2)",
           rep.stabilized && rep.stabilized_at == OrdinalExt(Ordinal::finite(1)) &&
               std::get<Card>(rep.visited.back().value) == Card::fin(2) && lambek_check(u, rep));
  }
  {
    StageUniverse u = card_universe(parse_functor("1 + X"));
    FixpointReport rep = run_chain(u, parse_schedule("0..w+1", 16), Direction::initial);
    expect("successor functor stabilizes at w with aleph0",
           rep.stabilized && rep.stabilized_at == OrdinalExt(Ordinal::omega()) &&
               std::get<Card>(rep.visited.back().value) == Card::aleph0() &&
               lambek_check(u, rep));
  }
  {
    StageUniverse u = card_universe(parse_functor("1 + X^2"));
    FixpointReport rep = run_chain(u, parse_schedule("0..w+1", 12), Direction::initial);
    expect("1 + X^2 stabilizes at w with aleph0",
           rep.stabilized && rep.stabilized_at == OrdinalExt(Ordinal::omega()) &&
               std::get<Card>(rep.visited.back().value) == Card::aleph0() &&
               lambek_check(u, rep));
  }
  {
    StageUniverse u = trunc_universe();
    FixpointReport rep = run_chain(u, parse_schedule("0..w", 12), Direction::terminal);
    expect("truncation tower stabilizes at w with label Cat_w",
           rep.stabilized && rep.stabilized_at == OrdinalExt(Ordinal::omega()) &&
               rep.visited.back().description == "Cat_w" && lambek_check(u, rep));
  }
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "ordinals", "roundtrip", "lemma2.3", "lemma2.4", "lemma3.1",
      "lemma3.4", "prop2.5",   "prop3.2",  "thm3.7",   "classical"};
  return names;
}

bool is_suite_name(const std::string& name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  SuiteResult r;
  if (name == "ordinals") r = suite_ordinals(opts);
  else if (name == "roundtrip") r = suite_roundtrip(opts);
  else if (name == "lemma2.3") r = suite_lemma23(opts);
  else if (name == "lemma2.4") r = suite_lemma24(opts);
  else if (name == "lemma3.1") r = suite_lemma31(opts);
  else if (name == "lemma3.4") r = suite_lemma34(opts);
  else if (name == "prop2.5") r = suite_prop25(opts);
  else if (name == "prop3.2") r = suite_prop32(opts);
  else if (name == "thm3.7") r = suite_thm37(opts);
  else if (name == "classical") r = suite_classical(opts);
  else throw eval_error("unknown suite '" + name + "'");
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace catrank
