#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catrank/noetherian.hpp"
#include "catrank/parser.hpp"
#include "catrank/rank.hpp"

using namespace catrank;

namespace {

Ordinal O(const char* s) { return parse_ordinal(s); }
OrdinalExt E(const char* s) { return parse_ordinal_ext(s); }

SkeletonEnv cyclic_env() {
  return parse_file("def X = cat { objects: [x]; hom(x,x) = X; }; main = X;");
}

}  // namespace

TEST_CASE("rank_plus_one") {
  CHECK(rank_plus_one(Rank::bottom()) == O("0"));
  CHECK(rank_plus_one(Rank::of(O("0"))) == O("1"));
  CHECK(rank_plus_one(Rank::of(O("w"))) == O("w + 1"));
  CHECK_THROWS_AS(rank_plus_one(Rank::no_small_rank({{}, {TowerStep{"X", "x", "x"}}})),
                  eval_error);
}

TEST_CASE("rank of the basic formers") {
  SkeletonEnv env;
  CHECK(rank_of(env, mk_point()).is_bottom());
  CHECK(rank_of(env, mk_empty()) == Rank::of(O("0")));
  CHECK(rank_of(env, mk_susp(mk_empty())) == Rank::of(O("1")));
  CHECK(rank_of(env, mk_omegasusp(mk_empty())) == Rank::of(O("w")));

  // brute-force over the four hom pairs {point, point, point, empty}:
  // sup{0, 0, 0, 1} = 1
  CHECK(rank_of(env, mk_susp(mk_point())) == Rank::of(O("1")));
}

TEST_CASE("rank of susp(point) matches a direct sup over its hom pairs") {
  SkeletonEnv env;
  Eval ev(env);
  RankEval re(env);
  HomFamily fam = ev.hom_pairs(mk_susp(mk_point()));
  std::vector<Ordinal> contributions;
  for (const auto& f : fam.finite) contributions.push_back(rank_plus_one(re.rank_of(f.hom)));
  REQUIRE(fam.linear.empty());
  CHECK(sup_finite(contributions) == O("1"));
}

TEST_CASE("cycle detection") {
  SkeletonEnv env = cyclic_env();
  Rank r = rank_of(env, *env.lookup("X"));
  REQUIRE(r.is_no_small_rank());
  CHECK(r.witness().stem.empty());
  REQUIRE(r.witness().cycle.size() == 1);
  CHECK(r.witness().cycle[0] == TowerStep{"X", "x", "x"});
}

TEST_CASE("no-small-rank is contagious through hom positions") {
  SkeletonEnv env = parse_file(
      "def X = cat { objects: [x]; hom(x,x) = X; };\n"
      "def Y = cat { objects: [u, v]; hom(u,v) = X; };\n"
      "def S = susp(X);\n"
      "def C = coprod(point, X);\n"
      "def M = omegasusp(X);\n"
      "main = Y;");
  for (const char* name : {"Y", "S", "C", "M"}) {
    Rank r = rank_of(env, *env.lookup(name));
    CHECK_MESSAGE(r.is_no_small_rank(), name);
    CHECK_FALSE(r.witness().cycle.empty());
  }

  // the witness stem from Y reaches the cycle at X
  Rank ry = rank_of(env, *env.lookup("Y"));
  REQUIRE(ry.witness().stem.size() == 1);
  CHECK(ry.witness().stem[0] == TowerStep{"Y", "u", "v"});
  CHECK(ry.witness().cycle[0] == TowerStep{"X", "x", "x"});
}

TEST_CASE("member") {
  SkeletonEnv env;
  CHECK(member(env, mk_point(), E("0")));
  CHECK_FALSE(member(env, mk_susp(mk_empty()), E("1")));
  CHECK(member(env, mk_susp(mk_empty()), E("2")));
  CHECK(member(env, mk_susp(mk_empty()), OrdinalExt::lambda()));

  SkeletonEnv cyc = cyclic_env();
  CHECK_FALSE(member(cyc, *cyc.lookup("X"), OrdinalExt::lambda()));
}

TEST_CASE("member monotonicity in the stage") {
  SkeletonEnv env;
  ExprPtr e = construct(O("w + 2"));
  CHECK_FALSE(member(env, e, E("w + 2")));
  CHECK(member(env, e, E("w + 3")));
  CHECK(member(env, e, E("w*2")));
  CHECK(member(env, e, OrdinalExt::lambda()));
}

TEST_CASE("member_via_homs") {
  SkeletonEnv env;
  CHECK_FALSE(member_via_homs(env, mk_susp(mk_empty()), O("1")));
  CHECK(member_via_homs(env, mk_susp(mk_empty()), O("2")));
  CHECK(member_via_homs(env, mk_omegasusp(mk_empty()), O("w + 1")));
  CHECK(member_via_homs(env, mk_omegasusp(mk_empty()), O("w*2 + 1")) ==
        member(env, mk_omegasusp(mk_empty()), E("w*2 + 1")));
  CHECK_THROWS_AS(member_via_homs(env, mk_point(), O("w")), eval_error);
  CHECK_THROWS_AS(member_via_homs(env, mk_point(), O("0")), eval_error);
}

TEST_CASE("bounded_member") {
  SkeletonEnv env;
  ExprPtr e = mk_empty();
  for (int n = 0; n <= 6; ++n) {
    CHECK(bounded_member(env, e, OrdinalExt(Ordinal::finite(n + 1))));
    CHECK_FALSE(bounded_member(env, e, OrdinalExt(Ordinal::finite(n))));
    e = mk_susp(e);
  }
  CHECK_FALSE(bounded_member(env, mk_omegasusp(mk_empty()), E("w + 1")));
  CHECK(member(env, mk_omegasusp(mk_empty()), E("w + 1")));
  CHECK(bounded_member(env, mk_empty(), E("1")));
}

TEST_CASE("suspension law on construct witnesses") {
  SkeletonEnv env;
  RankEval re(env);
  for (const char* s : {"0", "1", "5", "w", "w + 3", "w*2", "w*3 + 7"}) {
    ExprPtr e = construct(O(s));
    Rank r = re.rank_of(e);
    Rank rs = re.rank_of(mk_susp(e));
    REQUIRE(rs.is_of());
    Ordinal expect = sup_finite({rank_plus_one(r), O("1")});
    CHECK(rs.value() == expect);
  }
  // susp on a point-like inner has rank 1
  CHECK(rank_of(env, mk_susp(mk_point())) == Rank::of(O("1")));
}

TEST_CASE("construct/rank round trip") {
  SkeletonEnv env;
  RankEval re(env);
  for (const char* s : {"0", "1", "2", "17", "w", "w + 1", "w + 10", "w*2", "w*2 + 1",
                        "w*3 + 9"}) {
    CHECK(re.rank_of(construct(O(s))) == Rank::of(O(s)));
  }
}

TEST_CASE("evaluation is memoization-stable") {
  SkeletonEnv env = parse_file(
      "def X = cat { objects: [x]; hom(x,x) = X; };\n"
      "def D = coprod(susp(susp(empty)), omegasusp(empty), X);\n"
      "main = D;");
  RankEval re(env);
  Rank cold = re.rank_of(*env.lookup("D"));
  Rank warm = re.rank_of(*env.lookup("D"));
  CHECK(cold == warm);
  CHECK(cold.is_no_small_rank());

  SkeletonEnv env2 = parse_file("def D = coprod(susp(susp(empty)), omegasusp(empty)); main = D;");
  RankEval re2(env2);
  CHECK(re2.rank_of(*env2.lookup("D")) == re2.rank_of(*env2.lookup("D")));
  CHECK(re2.rank_of(*env2.lookup("D")) == Rank::of(O("w")));
}

TEST_CASE("shared body nodes between definitions do not evade cycle detection") {
  // two names bound to one node whose hom refers back through the second name
  SkeletonEnv env;
  ExprPtr body = mk_node({"x"}, {{{"x", "x"}, mk_ref("B")}});
  env.define("A", body);
  env.define("B", body);
  env.validate();
  Rank r = rank_of(env, *env.lookup("A"));
  REQUIRE(r.is_no_small_rank());
  CHECK_FALSE(r.witness().cycle.empty());
  CHECK(certify(env, *env.lookup("A")).certified() == false);
}

TEST_CASE("rank of omegasusp stacks") {
  SkeletonEnv env;
  CHECK(rank_of(env, mk_omegasusp(mk_omegasusp(mk_empty()))) == Rank::of(O("w*2")));
  CHECK(rank_of(env, mk_omegasusp(mk_point())) == Rank::of(O("w")));
  CHECK(rank_of(env, mk_omegasusp(mk_susp(mk_empty()))) == Rank::of(O("w")));
  // rank of omegasusp(d) = sup_linear(rank_plus_one(rank d))
  SkeletonEnv e2;
  ExprPtr d = mk_coprod({mk_susp(mk_empty()), mk_point()});
  Rank rd = rank_of(e2, d);
  CHECK(rank_of(e2, mk_omegasusp(d)) ==
        Rank::of(sup_linear(LinearFamily{rank_plus_one(rd)})));
}
