#include "doctest.h"
#include "support.hpp"

using namespace ho;

namespace {

bool contains(const std::vector<Reduct>& rs, const Term& t) {
  for (const auto& r : rs)
    if (alpha_equal(r.result, t)) return true;
  return false;
}

bool has_rule(const RuleSet& R, const Rule& want) {
  for (const auto& r : R.rules())
    if (rule_equal(r, want)) return true;
  return false;
}

} // namespace

TEST_CASE("reduce_once finds rule and beta steps everywhere") {
  auto R = test::load("map").rule_set();
  const auto& sig = R.signature();
  Term s = test::term("map (/\\y. 0) (cons (s 0) nil)", sig);
  auto rs = reduce_once(s, R);
  CHECK(contains(rs, test::term("cons 0 (map (/\\y. 0) nil)", sig)));
  CHECK(rs.size() == 1);
  CHECK(rs[0].pos.empty());

  CHECK(reduce_once(test::term("map s (cons 0 nil)", sig), R).empty());
  CHECK(reduce_once(test::term("cons (s 0) nil", sig), R).empty());
}

TEST_CASE("reduce_once rewrites below binders and reports positions") {
  auto R = test::load("map").rule_set();
  const auto& sig = R.signature();
  Term s = test::term("/\\u. map (/\\y. y) (cons u nil)", sig);
  auto rs = reduce_once(s, R);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].pos == Position{1});
  CHECK(alpha_equal(rs[0].result, test::term("/\\u. cons u (map (/\\y. y) nil)", sig)));

  Term b = test::term("(/\\y. 0) (s 0)", sig);
  auto rb = reduce_once(b, R);
  REQUIRE(rb.size() == 1);
  CHECK(rb[0].rule == -1);
  CHECK(alpha_equal(rb[0].result, fun(sig.at("0"))));
}

TEST_CASE("beta_normalize") {
  auto sig = test::load("map").signature;
  CHECK(alpha_equal(beta_normalize(test::term("(/\\y. 0) (s 0)", sig)), fun(sig.at("0"))));
  Term n = test::term("cons (s 0) nil", sig);
  CHECK(alpha_equal(beta_normalize(n), n));
  Signature k{{"a", plain_symbol("a", test::ty("o"))}, {"b", plain_symbol("b", test::ty("o"))}};
  CHECK(alpha_equal(beta_normalize(test::term("(/\\x y. x) a b", k)), fun(k.at("a"))));
}

TEST_CASE("rules_eta builds R+") {
  auto D = test::load("deriv").rule_set();
  auto plus = rules_eta(D);
  CHECK(plus.size() == 2);
  auto want = test::load("deriv_eta").rules[0];
  CHECK(has_rule(plus, want));
  CHECK(has_rule(plus, D.rules()[0]));

  auto P = test::load("plus").rule_set();
  CHECK(rules_eta(P).size() == P.size());

  auto A = test::load("aplm").rule_set();
  auto ap = rules_eta(A);
  CHECK(ap.size() == 2);
  const auto& sig = A.signature();
  Type o = test::ty("o");
  Term F = meta(MetaVar{"F", {}, test::ty("o -> o")}, {});
  Term X = meta(MetaVar{"X", {}, o}, {});
  Rule ext{apps(fun(sig.at("ap")), {app(fun(sig.at("lm")), F), X}), app(F, X)};
  CHECK(has_rule(ap, ext));
}

TEST_CASE("eta_expand_rules builds R-up") {
  auto D = eta_expand_rules(test::load("deriv").rule_set());
  REQUIRE(D.size() == 1);
  CHECK(rule_equal(D.rules()[0], test::load("deriv_eta").rules[0]));
  CHECK(D.arity().at("deriv") == 2);

  auto F = eta_expand_rules(test::load("fgeta").rule_set());
  REQUIRE(F.size() == 1);
  const auto& sig = F.signature();
  Rule want{test::term("f X", sig), test::term("g (/\\x. f x)", sig)};
  CHECK(rule_equal(F.rules()[0], want));

  auto P = test::load("plus").rule_set();
  auto Pu = eta_expand_rules(P);
  REQUIRE(Pu.size() == P.size());
  for (std::size_t i = 0; i < P.size(); ++i) CHECK(rule_equal(Pu.rules()[i], P.rules()[i]));
}

TEST_CASE("terminates_bounded") {
  auto R = test::load("map").rule_set();
  const auto& sig = R.signature();
  auto r1 = terminates_bounded(test::term("map (/\\y. 0) (cons (s 0) nil)", sig), R, 1000);
  CHECK(r1.verdict == Termination::terminating);

  auto A = test::load("aplm").rule_set();
  Term w = test::term("lm (/\\y. ap y y)", A.signature());
  Term omega = apps(fun(A.signature().at("ap")), {w, w});
  auto r2 = terminates_bounded(omega, rules_eta(A), 1000);
  CHECK(r2.verdict == Termination::nonterminating);
  CHECK(r2.cycle.size() == 2);

  auto r3 = terminates_bounded(test::term("cons 0 nil", sig), R, 10);
  CHECK(r3.verdict == Termination::terminating);

  auto L = test::load("fgeta").rule_set();
  auto up = eta_expand_rules(L);
  Term fa = test::term("f (g f)", L.signature());
  CHECK(terminates_bounded(fa, L, 1000).verdict == Termination::terminating);
  // the expanded system diverges without repeating a term
  CHECK(terminates_bounded(fa, up, 200).verdict == Termination::unknown);
}
