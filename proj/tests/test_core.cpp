#include "doctest.h"
#include "support.hpp"

using namespace ho;

namespace {

Signature map_sig() { return test::load("map").signature; }

} // namespace

TEST_CASE("type_of follows the typing rules") {
  auto sig = map_sig();
  Term t = test::term("map (/\\x. Z[x]) nil", sig);
  CHECK(show(type_of(t)) == "list");

  Type f = test::ty("nat -> nat -> nat");
  Term id = lam("x", f, var("x", f));
  CHECK(type_equal(type_of(id), arrow(f, f)));

  auto ap = test::load("aplm");
  Term l = ap.rules[0].lhs;
  CHECK(show(type_of(l)) == "o -> o");
  CHECK(show(type_of(ap.rules[0].rhs)) == "o -> o");
}

TEST_CASE("type_of rejects ill-typed input") {
  auto sig = map_sig();
  CHECK_THROWS_AS(test::term("map nil nil", sig), ParseError);
  Type nat = test::ty("nat");
  CHECK_THROWS_AS(app(fun(sig.at("s")), fun(sig.at("nil"))), TypeError);
  CHECK_THROWS_AS(meta(MetaVar{"Z", {nat}, nat}, {fun(sig.at("nil"))}), TypeError);
  CHECK_THROWS_AS(type_of(var("y", nat), VarTypes{}), TypeError);
  CHECK(type_equal(type_of(var("y", nat), VarTypes{{"y", nat}}), nat));
}

TEST_CASE("alpha_equal ignores binder names only") {
  Signature sig{{"f", plain_symbol("f", test::ty("nat -> nat"))}, {"0", plain_symbol("0", test::ty("nat"))}};
  CHECK(alpha_equal(test::term("/\\x. f x", sig), test::term("/\\y. f y", sig)));
  Type nat = test::ty("nat");
  CHECK_FALSE(alpha_equal(test::term("/\\x. f x", sig), lam("x", nat, test::term("f 0", sig))));
  MetaVar z{"Z", {nat, nat}, nat};
  Term a = lam("x", nat, lam("y", nat, meta(z, {var("x", nat), var("y", nat)})));
  Term b = lam("y", nat, lam("x", nat, meta(z, {var("y", nat), var("x", nat)})));
  Term c = lam("y", nat, lam("x", nat, meta(z, {var("x", nat), var("y", nat)})));
  CHECK(alpha_equal(a, b));
  CHECK_FALSE(alpha_equal(a, c));
}

TEST_CASE("is_pattern") {
  auto sig = map_sig();
  CHECK(is_pattern(test::term("map (/\\x. Z[x]) (cons H T)", sig)));
  Type nat = test::ty("nat");
  MetaVar z2{"Z", {nat, nat}, nat};
  Term x = var("x", nat);
  CHECK_FALSE(is_pattern(lam(x, meta(z2, {x, x}))));
  MetaVar z0{"Z", {}, test::ty("nat -> nat")};
  CHECK_FALSE(is_pattern(lam(x, app(meta(z0, {}), x))));
  CHECK(is_pattern(meta(z0, {})));
  CHECK_FALSE(is_pattern(test::term("map (/\\x. Z[s x]) nil", sig)));
}

TEST_CASE("fully extended and linear") {
  auto sig = map_sig();
  Term l = test::term("map (/\\x. Z[x]) nil", sig);
  CHECK(is_fully_extended(l));
  CHECK(is_linear(l));
  Signature s2{{"f", plain_symbol("f", test::ty("(nat -> nat) -> nat"))},
               {"g", plain_symbol("g", test::ty("nat -> nat -> nat"))}};
  CHECK_FALSE(is_fully_extended(test::term("f (/\\x. Z)", s2)));
  CHECK_FALSE(is_linear(test::term("g Z Z", s2)));
  CHECK(is_linear(test::term("g Z Y", s2)));
}

TEST_CASE("head and subterms") {
  Signature sig{{"f", plain_symbol("f", test::ty("o -> o -> o"))},
                {"a", plain_symbol("a", test::ty("o"))},
                {"b", plain_symbol("b", test::ty("o"))}};
  Term fab = test::term("f a b", sig);
  CHECK(alpha_equal(head(fab), fun(sig.at("f"))));
  auto ap = test::load("aplm").signature;
  Term w = test::term("/\\y. ap y y", ap);
  Term body = test::term("ap y y", ap, {{"y", test::ty("o")}});
  CHECK(subterm_eq(w, body));
  CHECK(strict_subterm(w, body));
  Signature s3{{"f", plain_symbol("f", test::ty("o -> o"))},
               {"a", plain_symbol("a", test::ty("o"))},
               {"b", plain_symbol("b", test::ty("o"))}};
  Term fa = test::term("f a", s3);
  CHECK(subterm_eq(fa, fa));
  CHECK(subterm_eq(fa, fun(s3.at("f"))));
  CHECK(subterm_eq(fa, fun(s3.at("a"))));
  CHECK_FALSE(subterm_eq(fa, fun(s3.at("b"))));
}

TEST_CASE("infer_max_arity") {
  auto ord = test::load("ordrec").rule_set();
  CHECK(ord.arity().at("rec") == 4);
  CHECK(ord.arity().at("lim") == 1);
  CHECK(ord.arity().at("s") == 1);

  Signature sig{{"f", plain_symbol("f", test::ty("nat -> nat"))}};
  CHECK(infer_max_arity({}, sig).at("f") == 1);

  InputSystem g = parse_system("SIG\n g : nat -> nat -> nat\n h : nat -> nat\nRULES\n g X => h\n");
  CHECK(g.rule_set().arity().at("g") == 1);
  CHECK(g.rule_set().arity().at("h") == 0);

  auto ap = test::load("aplm").rule_set();
  CHECK(ap.arity().at("ap") == 1);
  CHECK(ap.arity().at("lm") == 1);
}

TEST_CASE("respects_arity") {
  auto sig = map_sig();
  ArityMap ar{{"map", 2}, {"s", 1}, {"cons", 2}, {"nil", 0}, {"0", 0}};
  CHECK_FALSE(respects_arity(test::term("map s (cons 0 nil)", sig), ar));
  ArityMap zero{{"map", 0}, {"s", 0}, {"cons", 0}, {"nil", 0}, {"0", 0}};
  CHECK(respects_arity(test::term("map s (cons 0 nil)", sig), zero));
  auto ord = test::load("ordrec").rule_set();
  for (const auto& r : ord.rules()) {
    CHECK(respects_arity(r.lhs, ord.arity()));
    CHECK(respects_arity(r.rhs, ord.arity()));
  }
}

TEST_CASE("inc_ar") {
  auto sig = map_sig();
  ArityMap ar{{"map", 2}, {"s", 1}, {"cons", 2}, {"nil", 0}, {"0", 0}};
  Term t = inc_ar(test::term("map s nil", sig), ar);
  CHECK(alpha_equal(t, test::term("map (/\\x1. s x1) nil", sig)));
  Term ok = test::term("map (/\\x. s x) (cons 0 nil)", sig);
  CHECK(alpha_equal(inc_ar(ok, ar), ok));

  Signature s2{{"f", plain_symbol("f", test::ty("nat -> nat -> nat"))}};
  Type xt = test::ty("(nat -> nat -> nat) -> nat");
  Term xf = test::term("x f", s2, {{"x", xt}});
  Term want = test::term("x (/\\x1 x2. f x1 x2)", s2, {{"x", xt}});
  CHECK(alpha_equal(inc_ar(xf, ArityMap{{"f", 2}}), want));
  CHECK(respects_arity(inc_ar(xf, ArityMap{{"f", 2}}), ArityMap{{"f", 2}}));
}

TEST_CASE("printing round-trips through the parser") {
  for (const char* name : {"map", "ordrec", "deriv", "deriv_eta", "aplm", "staticbad", "graphcond", "staticgraph",
                           "extend", "empty", "fgeta", "plus", "loop", "twice", "fold"}) {
    CAPTURE(name);
    InputSystem sys = test::load(name);
    InputSystem again = parse_system(render_system(sys));
    REQUIRE(again.rules.size() == sys.rules.size());
    for (std::size_t i = 0; i < sys.rules.size(); ++i) {
      CHECK(alpha_equal(again.rules[i].lhs, sys.rules[i].lhs));
      CHECK(alpha_equal(again.rules[i].rhs, sys.rules[i].rhs));
    }
  }
}
