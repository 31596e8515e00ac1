#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "catrank/generator.hpp"
#include "catrank/parser.hpp"
#include "catrank/rank.hpp"
#include "catrank/skeleton.hpp"

using namespace catrank;

namespace {

Ordinal O(const char* s) { return parse_ordinal(s); }

SkeletonEnv cyclic_env() {
  return parse_file("def X = cat { objects: [x]; hom(x,x) = X; }; main = X;");
}

}  // namespace

TEST_CASE("has_objects") {
  SkeletonEnv env;
  CHECK_FALSE(has_objects(env, mk_empty()));
  CHECK(has_objects(env, mk_point()));
  CHECK(has_objects(env, mk_susp(mk_empty())));
  CHECK_FALSE(has_objects(env, mk_coprod({mk_empty(), mk_empty()})));
  CHECK(has_objects(env, mk_coprod({mk_empty(), mk_point()})));
  CHECK(has_objects(env, mk_omegasusp(mk_empty())));
}

TEST_CASE("is_point_like") {
  SkeletonEnv env;
  CHECK(is_point_like(env, mk_point()));
  CHECK_FALSE(is_point_like(env, mk_empty()));
  CHECK_FALSE(is_point_like(env, mk_susp(mk_point())));
  CHECK_FALSE(is_point_like(env, mk_omegasusp(mk_point())));

  ExprPtr one_obj = mk_node({"x"}, {{{"x", "x"}, mk_point()}});
  CHECK(is_point_like(env, one_obj));

  // one object but an empty endo-hom is not the point
  CHECK_FALSE(is_point_like(env, mk_node({"x"}, {})));

  // exactly one component with objects, and it is point-like
  CHECK(is_point_like(env, mk_coprod({mk_empty(), one_obj, mk_empty()})));
  CHECK_FALSE(is_point_like(env, mk_coprod({one_obj, one_obj})));

  // a reference cycle resolves to false (least fixed point)
  SkeletonEnv cyc = cyclic_env();
  CHECK_FALSE(is_point_like(cyc, *cyc.lookup("X")));
  CHECK(has_objects(cyc, *cyc.lookup("X")));
}

TEST_CASE("hom_pairs on the basic formers") {
  SkeletonEnv env;
  Eval ev(env);

  HomFamily susp = ev.hom_pairs(mk_susp(mk_empty()));
  REQUIRE(susp.finite.size() == 4);
  CHECK(susp.linear.empty());
  int points = 0, empties = 0;
  for (const auto& f : susp.finite) {
    if (as<PointT>(f.hom)) ++points;
    if (as<EmptyT>(f.hom)) ++empties;
  }
  CHECK(points == 2);
  CHECK(empties == 2);  // the inner empty and the reverse hom

  CHECK(ev.hom_pairs(mk_empty()).finite.empty());
  CHECK(ev.hom_pairs(mk_empty()).linear.empty());

  HomFamily pp = ev.hom_pairs(mk_coprod({mk_point(), mk_point()}));
  REQUIRE(pp.finite.size() == 4);
  points = empties = 0;
  for (const auto& f : pp.finite) {
    if (as<PointT>(f.hom)) ++points;
    if (as<EmptyT>(f.hom)) ++empties;
  }
  CHECK(points == 2);
  CHECK(empties == 2);

  HomFamily om = ev.hom_pairs(mk_omegasusp(mk_empty()));
  REQUIRE(om.linear.size() == 1);
  CHECK(as<EmptyT>(om.linear[0].inner));

  HomFamily pt = ev.hom_pairs(mk_point());
  REQUIRE(pt.finite.size() == 1);
  CHECK(as<PointT>(pt.finite[0].hom));
}

TEST_CASE("point-like expressions have only point-like homs") {
  SkeletonEnv env;
  Eval ev(env);
  ExprPtr one_obj = mk_node({"x"}, {{{"x", "x"}, mk_point()}});
  ExprPtr e = mk_coprod({mk_empty(), one_obj});
  REQUIRE(ev.is_point_like(e));
  for (const auto& f : ev.hom_pairs(e).finite) CHECK(ev.is_point_like(f.hom));
}

TEST_CASE("point-likeness implies objects, and point-like homs, on a corpus") {
  for (std::size_t i = 0; i < 400; ++i) {
    GenParams p;
    p.p_cycle = (i % 2) * 0.3;
    SkeletonEnv env = generate_env(mix_seed(31, i), p);
    Eval ev(env);
    for (const auto& [name, body] : env.defs()) {
      if (!ev.is_point_like(body)) continue;
      CHECK(ev.has_objects(body));
      HomFamily fam = ev.hom_pairs(resolve(env, body));
      for (const auto& f : fam.finite) CHECK(ev.is_point_like(resolve(env, f.hom)));
    }
  }
}

TEST_CASE("construct") {
  SkeletonEnv env;
  CHECK(as<EmptyT>(construct(O("0"))));

  ExprPtr three = construct(O("3"));
  const auto* s1 = as<SuspT>(three);
  REQUIRE(s1);
  const auto* s2 = as<SuspT>(s1->inner);
  REQUIRE(s2);
  const auto* s3 = as<SuspT>(s2->inner);
  REQUIRE(s3);
  CHECK(as<EmptyT>(s3->inner));

  ExprPtr w21 = construct(O("w*2 + 1"));
  const auto* t1 = as<SuspT>(w21);
  REQUIRE(t1);
  const auto* o1 = as<OmegaSuspT>(t1->inner);
  REQUIRE(o1);
  const auto* o2 = as<OmegaSuspT>(o1->inner);
  REQUIRE(o2);
  CHECK(as<EmptyT>(o2->inner));

  CHECK_THROWS_AS(construct(O("w^2")), unsupported_ordinal);
  CHECK_THROWS_AS(construct(O("w^2 + 3")), unsupported_ordinal);
  CHECK_THROWS_AS(construct(O("w^3*2")), unsupported_ordinal);
}

TEST_CASE("coprod laws for the basic queries") {
  SkeletonEnv env;
  ExprPtr a = mk_susp(mk_empty());
  ExprPtr b = mk_node({"x", "y"}, {{{"x", "y"}, mk_point()}});

  ExprPtr ab = mk_coprod({a, b});
  ExprPtr ba = mk_coprod({b, a});
  ExprPtr a_unit = mk_coprod({a, mk_empty()});

  CHECK(has_objects(env, ab) == has_objects(env, ba));
  CHECK(is_point_like(env, ab) == is_point_like(env, ba));
  CHECK(rank_of(env, ab) == rank_of(env, ba));

  CHECK(has_objects(env, a_unit) == has_objects(env, a));
  CHECK(is_point_like(env, a_unit) == is_point_like(env, a));
  CHECK(rank_of(env, a_unit) == rank_of(env, a));
}

TEST_CASE("objects and hom_of_pair enumeration") {
  SkeletonEnv env;
  Eval ev(env);

  ExprPtr susp = mk_susp(mk_point());
  auto objs = ev.objects(susp);
  REQUIRE(objs.size() == 2);
  CHECK(objs[0] == "bot");
  CHECK(objs[1] == "top");
  CHECK(as<PointT>(ev.hom_of_pair(susp, "bot", "top")));
  CHECK(as<PointT>(ev.hom_of_pair(susp, "bot", "bot")));
  CHECK(as<EmptyT>(ev.hom_of_pair(susp, "top", "bot")));
  CHECK(ev.hom_of_pair(susp, "top", "zap") == nullptr);

  ExprPtr cop = mk_coprod({mk_point(), susp});
  objs = ev.objects(cop);
  REQUIRE(objs.size() == 3);
  CHECK(objs[0] == "0.pt");
  CHECK(objs[1] == "1.bot");
  CHECK(as<EmptyT>(ev.hom_of_pair(cop, "0.pt", "1.bot")));
  CHECK(as<PointT>(ev.hom_of_pair(cop, "1.bot", "1.top")));

  ExprPtr om = mk_omegasusp(mk_point());
  objs = ev.objects(om);
  REQUIRE(objs.size() == 3);  // 0.pt, fam.bot, fam.top
  CHECK(as<PointT>(ev.hom_of_pair(om, "fam.bot", "fam.top")));  // depth-one exit
  CHECK(as<PointT>(ev.hom_of_pair(om, "fam.bot", "fam.bot")));
  CHECK(as<EmptyT>(ev.hom_of_pair(om, "fam.top", "fam.bot")));
  CHECK(as<EmptyT>(ev.hom_of_pair(om, "0.pt", "fam.bot")));
}

TEST_CASE("hereditarily finite") {
  SkeletonEnv env;
  Eval ev(env);
  CHECK(ev.hereditarily_finite(mk_susp(mk_susp(mk_empty()))));
  CHECK_FALSE(ev.hereditarily_finite(mk_omegasusp(mk_empty())));
  CHECK_FALSE(ev.hereditarily_finite(mk_node({"x"}, {{{"x", "x"}, mk_omegasusp(mk_empty())}})));
  CHECK_FALSE(ev.hereditarily_finite(mk_coprod({mk_point(), mk_omegasusp(mk_empty())})));

  SkeletonEnv cyc = cyclic_env();
  Eval cev(cyc);
  CHECK(cev.hereditarily_finite(*cyc.lookup("X")));
}

TEST_CASE("print round trips through the parser") {
  SkeletonEnv env;
  ExprPtr e = construct(O("w*2 + 1"));
  ExprPtr back = parse_expr_text(print_expr(e));
  CHECK(rank_of(env, back) == rank_of(env, e));
  CHECK(print_expr(back) == print_expr(e));

  SkeletonEnv cyc = cyclic_env();
  SkeletonEnv cyc2 = parse_file(print_env(cyc));
  CHECK(rank_of(cyc2, *cyc2.lookup("X")).is_no_small_rank());
  CHECK(print_env(cyc2) == print_env(cyc));
}
