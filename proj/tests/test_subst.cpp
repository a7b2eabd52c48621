#include "doctest.h"
#include "support.hpp"

using namespace ho;

namespace {

Signature arith() {
  Type nat = test::ty("nat");
  return {{"plus", plain_symbol("plus", test::ty("nat -> nat -> nat"))},
          {"s", plain_symbol("s", test::ty("nat -> nat"))},
          {"f", plain_symbol("f", test::ty("nat -> nat"))},
          {"0", plain_symbol("0", nat)}};
}

} // namespace

TEST_CASE("approx_e decomposes meta-variable values") {
  auto sig = arith();
  Term v1 = test::term("/\\x. plus x x", sig);
  auto e1 = approx_e(v1, 1);
  REQUIRE(e1.xs.size() == 1);
  CHECK(alpha_equal(e1.body, apps(fun(sig.at("plus")), {e1.xs[0], e1.xs[0]})));

  Term v2 = fun(sig.at("s"));
  auto e2 = approx_e(v2, 1);
  REQUIRE(e2.xs.size() == 1);
  CHECK(alpha_equal(e2.body, app(fun(sig.at("s")), e2.xs[0])));

  Type nat = test::ty("nat");
  Term v3 = lam("x", nat, fun(sig.at("f")));
  auto e3 = approx_e(v3, 2);
  REQUIRE(e3.xs.size() == 2);
  CHECK(e3.xs[0]->name == "x");
  CHECK(alpha_equal(e3.body, app(fun(sig.at("f")), e3.xs[1])));

  CHECK_THROWS_AS(approx_e(v3, 3), TypeError);
}

TEST_CASE("apply performs a one-level beta-development") {
  Type real = test::ty("real");
  Signature sig{{"d", plain_symbol("d", test::ty("(real -> real) -> real"))},
                {"sin", plain_symbol("sin", test::ty("real -> real"))},
                {"plus", plain_symbol("plus", test::ty("real -> real -> real"))}};
  VarTypes env{{"x", real}};
  Term s = test::term("d (/\\x. sin Z[x])", sig);
  Substitution g;
  g.metas["Z"] = test::term("/\\y. plus y x", sig, env);
  Term want = test::term("d (/\\z. sin (plus z x))", sig, env);
  CHECK(alpha_equal(apply_subst(s, g), want));
  // the bound x of s must not capture the free x of gamma(Z)
  CHECK(show(apply_subst(s, g)) == "d (/\\x1.sin (plus x1 x))");

  Signature ls{{"plus", plain_symbol("plus", test::ty("nat -> nat -> nat"))},
               {"len", plain_symbol("len", test::ty("list -> nat"))},
               {"nil", plain_symbol("nil", test::ty("list"))},
               {"0", plain_symbol("0", test::ty("nat"))}};
  Type nat = test::ty("nat");
  Term x = meta(MetaVar{"X", {test::ty("list"), nat}, nat}, {fun(ls.at("nil")), fun(ls.at("0"))});
  Substitution h;
  h.metas["X"] = test::term("/\\x. plus (len x)", ls);
  CHECK(alpha_equal(apply_subst(x, h), test::term("plus (len nil) 0", ls)));

  CHECK(alpha_equal(apply_subst(s, Substitution{}), s));
}

TEST_CASE("respects checks meta-variable conditions") {
  auto sig = arith();
  Substitution g;
  g.metas["F"] = test::term("/\\x. s x", sig);
  CHECK(respects(g, Conditions{{"F", 1}}));
  Substitution h;
  h.metas["F"] = lam("x", test::ty("nat"), fun(sig.at("0")));
  CHECK_FALSE(respects(h, Conditions{{"F", 1}}));
  CHECK(respects(h, Conditions{}));
  // an eta-supplied argument is always regarded
  Substitution k;
  k.metas["F"] = fun(sig.at("s"));
  CHECK(respects(k, Conditions{{"F", 1}}));
}

TEST_CASE("match on patterns") {
  auto sys = test::load("map");
  const auto& sig = sys.signature;
  Term l = test::term("map (/\\x. Z[x]) nil", sig);
  auto d = match(l, test::term("map (/\\y. 0) nil", sig));
  REQUIRE(d.has_value());
  CHECK(alpha_equal(d->metas.at("Z"), lam("y", test::ty("nat"), fun(sig.at("0")))));
  CHECK_FALSE(match(l, test::term("map s nil", sig)).has_value());

  Type nat = test::ty("nat");
  MetaVar z{"Z", {nat}, nat};
  Term x1 = var("x1", nat);
  Term pat = lam(x1, meta(z, {x1}));
  Term t = test::term("/\\u. plus u (s u)", arith());
  auto d2 = match(pat, t);
  REQUIRE(d2.has_value());
  CHECK(alpha_equal(apply_subst(pat, *d2), t));

  // the Miller discipline: Z without arguments cannot capture x
  MetaVar z0{"Z", {}, nat};
  Term pat0 = lam(x1, meta(z0, {}));
  CHECK_FALSE(match(pat0, t).has_value());
  CHECK(match(pat0, lam("u", nat, fun(arith().at("0")))).has_value());
}

TEST_CASE("match respects non-linear occurrences") {
  Signature sig{{"g", plain_symbol("g", test::ty("o -> o -> o"))},
                {"a", plain_symbol("a", test::ty("o"))},
                {"b", plain_symbol("b", test::ty("o"))}};
  Term l = test::term("g Z Z", sig);
  CHECK(match(l, test::term("g a a", sig)).has_value());
  CHECK_FALSE(match(l, test::term("g a b", sig)).has_value());
}
