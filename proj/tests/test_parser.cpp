#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catrank/parser.hpp"
#include "catrank/rank.hpp"

using namespace catrank;

TEST_CASE("basic definitions") {
  SkeletonEnv env = parse_file("def a = susp(empty); main = a;");
  REQUIRE(env.defs().size() == 1);
  CHECK(env.main() == "a");
  CHECK(as<SuspT>(*env.lookup("a")));
  CHECK_FALSE(env.lookup("b"));
}

TEST_CASE("legal hom-position cycle loads") {
  SkeletonEnv env = parse_file("def X = cat { objects: [x]; hom(x,x) = X; }; main = X;");
  const auto* n = as<NodeT>(*env.lookup("X"));
  REQUIRE(n);
  CHECK(n->objects.size() == 1);
}

TEST_CASE("legal mutual cycle through homs and aliases") {
  SkeletonEnv env = parse_file(
      "def X = cat { objects: [x]; hom(x,x) = Y; };\n"
      "def Y = X;\n"
      "main = X;");
  CHECK(rank_of(env, *env.lookup("X")).is_no_small_rank());
}

TEST_CASE("component-position cycles are rejected") {
  CHECK_THROWS_WITH_AS(parse_file("def Y = coprod(Y, empty);"),
                       doctest::Contains("'Y'"), eval_error);
  CHECK_THROWS_AS(parse_file("def Z = omegasusp(Z);"), eval_error);
  // cycle that passes through a hom and then a component position
  CHECK_THROWS_AS(
      parse_file("def X = cat { objects: [x]; hom(x,x) = coprod(X, empty); };"),
      eval_error);
  // mutual cycle where one link sits in a component position
  CHECK_THROWS_AS(parse_file("def A = cat { objects: [a]; hom(a,a) = B; };\n"
                             "def B = coprod(A, empty);"),
                  eval_error);
}

TEST_CASE("alias cycles are rejected") {
  CHECK_THROWS_AS(parse_file("def A = A;"), eval_error);
  CHECK_THROWS_AS(parse_file("def A = B; def B = A;"), eval_error);
  // an alias edge inside a legal hom cycle is fine (covered above)
}

TEST_CASE("unresolved references") {
  CHECK_THROWS_WITH_AS(parse_file("def a = susp(b);"), doctest::Contains("'b'"), eval_error);
  CHECK_THROWS_AS(parse_file("main = nothing;"), eval_error);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_file("def a = susp(empty);\ndef b = susp(;\n");
    FAIL("expected a parse error");
  } catch (const skeleton_parse_error& e) {
    CHECK(e.line() == 2);
    CHECK(e.col() >= 13);
  }
  CHECK_THROWS_AS(parse_file("def = susp(empty);"), skeleton_parse_error);
  CHECK_THROWS_AS(parse_file("def a susp(empty);"), skeleton_parse_error);
  CHECK_THROWS_AS(parse_file("def a = susp(empty)"), skeleton_parse_error);
  CHECK_THROWS_AS(parse_file("def a = cat { objects: []; };"), skeleton_parse_error);
  CHECK_THROWS_AS(parse_file("def a = cat { objects: [x, x]; };"), skeleton_parse_error);
  CHECK_THROWS_AS(parse_file("def a = cat { objects: [x]; hom(x,y) = empty; };"),
                  skeleton_parse_error);
}

TEST_CASE("comments and whitespace") {
  SkeletonEnv env = parse_file(
      "# a cyclic definition\n"
      "def X = cat {  # the lone object\n"
      "  objects: [x];\n"
      "  hom(x,x) = X;  # self-reference through the hom\n"
      "};\n"
      "main = X;  # entry point\n");
  CHECK(env.defs().size() == 1);
}

TEST_CASE("main must resolve and be last") {
  CHECK_THROWS_AS(parse_file("main = a; def a = point;"), skeleton_parse_error);
  SkeletonEnv env = parse_file("def a = point;");
  CHECK_FALSE(env.main().has_value());
  CHECK(as<PointT>(env.entry()));
}

TEST_CASE("entry selection") {
  SkeletonEnv env = parse_file("def a = point; def b = empty;");
  CHECK_THROWS_AS(env.entry(), eval_error);
  CHECK(as<EmptyT>(env.entry(std::string("b"))));
}

TEST_CASE("nested expression forms") {
  SkeletonEnv env = parse_file(
      "def d = coprod(point, susp(omegasusp(empty)), cat { objects: [u, v]; "
      "hom(u,v) = susp(point); hom(u,u) = point; });\n"
      "main = d;");
  const auto* c = as<CoprodT>(*env.lookup("d"));
  REQUIRE(c);
  CHECK(c->components.size() == 3);
  ExprPtr back = parse_expr_text(print_expr(*env.lookup("d")));
  CHECK(print_expr(back) == print_expr(*env.lookup("d")));
}
