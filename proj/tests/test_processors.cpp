#include "doctest.h"
#include "support.hpp"

#include "ho/processors.hpp"

using namespace ho;

namespace {

Options opts() { return Options{}; }

// index of the DP rendered as `text`, or -1
int find_dp(const std::vector<DP>& ps, const std::string& text) {
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (show(ps[i]) == text) return static_cast<int>(i);
  return -1;
}

std::vector<std::string> shows(const std::vector<DP>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(show(p));
  std::sort(out.begin(), out.end());
  return out;
}

DPProblem with_dps(const DPProblem& M, std::vector<DP> ps) {
  DPProblem out = M;
  out.dps = std::move(ps);
  return out;
}

} // namespace

TEST_CASE("graph: meta-variable conditions suppress the self-loop") {
  auto R = test::load("graphcond").rule_set();
  auto P = ddp(R);
  int one = find_dp(P, "f# (/\\x.F[x]) ==> F[f (/\\x.0)] {}");
  int two = find_dp(P, "f# (/\\x.F[x]) ==> f# (/\\x.0) {F:1}");
  REQUIRE(one >= 0);
  REQUIRE(two >= 0);
  auto G = graph_approx(P, R);
  CHECK(G.edge[one][one]);
  CHECK(G.edge[one][two]);
  CHECK(G.edge[two][one]);
  CHECK_FALSE(G.edge[two][two]);
}

TEST_CASE("graph: variables cannot be reduced") {
  auto R = test::load("staticbad").rule_set();
  auto M = initial_dynamic(R);
  int two = find_dp(M.dps, "f# 0 ==> f# x {}");
  REQUIRE(two >= 0);
  auto G = graph_approx(M.dps, R);
  for (std::size_t j = 0; j < M.dps.size(); ++j) CHECK_FALSE(G.edge[two][j]);
  auto r = proc_graph(M, opts());
  REQUIRE(r.kind == ProcessorResult::Kind::problems);
  REQUIRE(r.problems.size() == 1);
  CHECK(shows(r.problems[0].dps) ==
        std::vector<std::string>{"f# 0 ==> g# (/\\x.f x) {}", "g# (/\\x.F[x]) ==> F[1] {}"});
  CHECK(r.problems[0].m == M.m);
  CHECK(r.problems[0].formative == M.formative);
}

TEST_CASE("graph: self-loop and acyclic cases") {
  auto R = test::load("plus").rule_set();
  const auto& sig = R.signature();
  DPProblem M;
  M.rules = R;
  auto self = parse_terms({"plus X Y", "plus X Y"}, sig);
  DP loop{mark(self[0], R), mark(self[1], R), {}};
  M.dps = {loop};
  auto G = graph_approx(M.dps, R);
  CHECK(G.edge[0][0]);
  // a single component holding every pair is no progress
  auto r = proc_graph(M, opts());
  CHECK(r.kind == ProcessorResult::Kind::not_applicable);

  auto ab = parse_terms({"plus 0 Y", "plus (s Y) 0"}, sig);
  M.dps = {DP{mark(ab[0], R), mark(ab[1], R), {}}};
  r = proc_graph(M, opts());
  REQUIRE(r.kind == ProcessorResult::Kind::problems);
  CHECK(r.problems.empty());
}

TEST_CASE("graph on the condition example keeps both pairs together") {
  // (1) -> (2) -> (1) is a cycle: the right side of (1) is headed by a
  // meta-variable, so it has an edge to every pair, and F := /\x. 0 takes (2) to (1).
  auto R = test::load("graphcond").rule_set();
  auto M = initial_dynamic(R);
  auto comps = scc_on_cycles(graph_approx(M.dps, R));
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].size() == 2);
  CHECK(proc_graph(M, opts()).kind == ProcessorResult::Kind::not_applicable);
}

TEST_CASE("graph components partition the nodes on cycles") {
  for (const char* name : {"map", "deriv", "ordrec", "staticgraph", "staticbad", "extend", "fold", "twice"}) {
    CAPTURE(name);
    auto R = test::load(name).rule_set();
    auto M = initial_dynamic(R);
    auto G = graph_approx(M.dps, R);
    auto comps = scc_on_cycles(G);
    std::vector<int> seen(M.dps.size(), 0);
    for (const auto& c : comps)
      for (auto i : c) ++seen[i];
    for (std::size_t i = 0; i < M.dps.size(); ++i) {
      // on a cycle iff reachable from itself
      std::vector<bool> vis(M.dps.size(), false);
      std::vector<std::size_t> stack{i};
      bool cyc = false;
      while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < M.dps.size(); ++v) {
          if (!G.edge[u][v]) continue;
          if (v == i) cyc = true;
          if (!vis[v]) {
            vis[v] = true;
            stack.push_back(v);
          }
        }
      }
      CHECK(seen[i] == (cyc ? 1 : 0));
    }
  }
}

TEST_CASE("static switch on the static-graph example") {
  auto R = test::load("staticgraph").rule_set();
  auto M = initial_dynamic(R);
  auto r = proc_to_static(M, opts());
  REQUIRE(r.kind == ProcessorResult::Kind::problems);
  REQUIRE(r.problems.size() == 1);
  const auto& S = r.problems[0];
  CHECK(shows(S.dps) == std::vector<std::string>{"map# (/\\x.Z[x]) (cons H T) ==> map# (/\\x.Z[x]) T {}"});
  CHECK(S.m == Minimality::computable);
  CHECK(S.formative);
  // (2) is also a dynamic pair
  CHECK(r.complete);
}

TEST_CASE("static switch needs AFP and dynamic provenance") {
  auto A = test::load("aplm").rule_set();
  CHECK(proc_to_static(initial_dynamic(A), opts()).kind == ProcessorResult::Kind::not_applicable);
  auto R = test::load("map").rule_set();
  auto M = initial_dynamic(R);
  M.subset_ddp = false;
  CHECK(proc_to_static(M, opts()).kind == ProcessorResult::Kind::not_applicable);
  auto E = test::load("empty").rule_set();
  auto r = proc_to_static(initial_dynamic(E), opts());
  if (r.kind == ProcessorResult::Kind::problems) {
    REQUIRE(r.problems.size() == 1);
    CHECK(r.problems[0].dps.empty());
  }
}

TEST_CASE("useless pairs of deriv") {
  auto R = test::load("deriv").rule_set();
  auto M = initial_dynamic(R);
  REQUIRE(M.dps.size() == 5);
  auto r = proc_useless(M, opts());
  REQUIRE(r.kind == ProcessorResult::Kind::problems);
  REQUIRE(r.problems.size() == 1);
  CHECK(shows(r.problems[0].dps) == std::vector<std::string>{
                                        "deriv (/\\x.sin F[x]) X ==> F[X] {}",
                                        "deriv# (/\\x.sin F[x]) ==> deriv (/\\x.F[x]) y {}",
                                        "deriv# (/\\x.sin F[x]) ==> deriv# (/\\x.F[x]) {}",
                                    });
  M.m = Minimality::arbitrary;
  CHECK(proc_useless(M, opts()).kind == ProcessorResult::Kind::not_applicable);
  auto plain = initial_dynamic(test::load("map").rule_set());
  CHECK(proc_useless(plain, opts()).kind == ProcessorResult::Kind::not_applicable);
}

TEST_CASE("extend, addcond, graph and formative rules on the extend example") {
  auto R = test::load("extend").rule_set();
  auto M = initial_dynamic(R);
  REQUIRE(M.dps.size() == 3);

  auto e = proc_extend(M, opts());
  REQUIRE(e.kind == ProcessorResult::Kind::problems);
  const auto& Me = e.problems.at(0);
  CHECK(Me.dps.size() == M.dps.size());
  CHECK(find_dp(Me.dps, "g# F X ==> F[f X] {}") >= 0);
  CHECK(find_dp(Me.dps, "f# 0 ==> g# (/\\x.0) 1 {}") >= 0);
  CHECK(find_dp(Me.dps, "g# F X ==> f# X {}") >= 0);

  auto a = proc_addcond(Me, opts());
  REQUIRE(a.kind == ProcessorResult::Kind::problems);
  const auto& Ma = a.problems.at(0);
  CHECK(Ma.dps.size() == 3);
  CHECK(find_dp(Ma.dps, "g# F X ==> F[f X] {F:1}") >= 0);

  auto g = proc_graph(Ma, opts());
  REQUIRE(g.kind == ProcessorResult::Kind::problems);
  REQUIRE(g.problems.size() == 2);
  std::vector<std::vector<std::string>> comps;
  for (const auto& p : g.problems) comps.push_back(shows(p.dps));
  std::sort(comps.begin(), comps.end());
  CHECK(comps[0] == std::vector<std::string>{"f# 0 ==> g# (/\\x.0) 1 {}", "g# F X ==> f# X {}"});
  CHECK(comps[1] == std::vector<std::string>{"g# F X ==> F[f X] {F:1}"});

  const DPProblem* collapsing = nullptr;
  for (const auto& p : g.problems)
    if (p.dps.size() == 1) collapsing = &p;
  REQUIRE(collapsing);
  CHECK(formative_rules(collapsing->dps, R).empty());
  auto f = proc_formative(*collapsing, opts());
  REQUIRE(f.kind == ProcessorResult::Kind::problems);
  CHECK(f.problems.at(0).rules.empty());
  CHECK(f.problems.at(0).m == Minimality::minimal);
  CHECK(f.problems.at(0).formative);
  CHECK_FALSE(f.problems.at(0).subset_ddp);
  CHECK_FALSE(f.problems.at(0).subset_ddp_ext);

  // the remaining problem is discharged by a triple, then by the graph
  auto t = proc_triple(f.problems[0], TripleVariant::base, opts());
  REQUIRE(t.kind == ProcessorResult::Kind::problems);
  CHECK(t.problems.at(0).dps.empty());
}

TEST_CASE("extend leaves non-collapsing and plain meta right sides alone") {
  auto R = test::load("map").rule_set();
  auto M = initial_dynamic(R);
  CHECK(proc_extend(M, opts()).kind == ProcessorResult::Kind::not_applicable);
  auto S = initial_dynamic(test::load("staticbad").rule_set());
  CHECK(proc_extend(S, opts()).kind == ProcessorResult::Kind::not_applicable);
}

TEST_CASE("addcond: one copy per argument") {
  auto R = test::load("staticbad").rule_set();
  auto M = initial_dynamic(R);
  auto a = proc_addcond(M, opts());
  REQUIRE(a.kind == ProcessorResult::Kind::problems);
  CHECK(a.problems[0].dps.size() == M.dps.size());
  CHECK(find_dp(a.problems[0].dps, "g# (/\\x.F[x]) ==> F[1] {F:1}") >= 0);
  M.m = Minimality::arbitrary;
  CHECK(proc_addcond(M, opts()).kind == ProcessorResult::Kind::not_applicable);
}

TEST_CASE("addcond output size is |P1| plus the sum of e over P2") {
  const char* src = R"(
SIG
  a : nat
  h : nat -> nat -> nat
  k : (nat -> nat -> nat) -> nat -> nat
RULES
  k (/\x y. F[x,y]) Z => F[h Z a, Z]
)";
  auto R = parse_system(src).rule_set();
  auto M = initial_dynamic(R);
  int collapsing = 0, sum_e = 0;
  for (const auto& p : M.dps)
    if (p.rhs->kind == Kind::meta && p.lhs->has_meta) {
      ++collapsing;
      sum_e += static_cast<int>(p.rhs->args.size());
    }
  REQUIRE(collapsing == 1);
  auto a = proc_addcond(M, opts());
  REQUIRE(a.kind == ProcessorResult::Kind::problems);
  CHECK(a.problems[0].dps.size() == M.dps.size() - collapsing + sum_e);
}

TEST_CASE("formative rules keep rules that can build a constructor pattern") {
  auto R = test::load("map").rule_set();
  auto M = initial_dynamic(R);
  auto FR = formative_rules(M.dps, R);
  // cons H T on the left: the second map rule produces cons at the root
  bool has_cons_rule = false;
  for (const auto& r : FR.rules())
    if (show(r.rhs).rfind("cons", 0) == 0) has_cons_rule = true;
  CHECK(has_cons_rule);
  for (const auto& r : FR.rules()) {
    bool in_R = false;
    for (const auto& q : R.rules()) in_R = in_R || rule_equal(r, q);
    CHECK(in_R);
  }
  M.formative = false;
  CHECK(proc_formative(M, opts()).kind == ProcessorResult::Kind::not_applicable);
}

TEST_CASE("formative rules are a subset of R on the corpus") {
  for (const char* name : {"map", "deriv", "ordrec", "staticgraph", "staticbad", "extend", "fold", "twice", "plus",
                           "graphcond", "loop"}) {
    CAPTURE(name);
    auto R = test::load(name).rule_set();
    auto FR = formative_rules(ddp(R), R);
    for (const auto& r : FR.rules()) {
      bool in_R = false;
      for (const auto& q : R.rules()) in_R = in_R || rule_equal(r, q);
      CHECK(in_R);
    }
  }
}

TEST_CASE("has_shape") {
  auto R = test::load("map").rule_set();
  const auto& sig = R.signature();
  Type list = test::ty("list");
  auto t = test::term("cons 0 nil", sig);
  CHECK(has_shape(t, "cons", list));
  CHECK_FALSE(has_shape(t, "nil", list));
  VarTypes x{{"x", list}};
  CHECK(has_shape(test::term("x", sig, x), "_|_", list));
}

TEST_CASE("usable rules") {
  auto R = test::load("map").rule_set();
  auto S = *initial_static(R);
  auto U = usable_rules(S.dps, R);
  int map_rules = 0, projections = 0;
  for (const auto& r : U.rules()) {
    if (root_symbol(r).name == "map") ++map_rules;
    if (is_reserved_name(root_symbol(r).name)) ++projections;
  }
  CHECK(map_rules == 2);
  CHECK(projections > 0);
  CHECK(projections % 2 == 0);

  // every rule stays usable: no progress
  CHECK(proc_usable(S, opts()).kind == ProcessorResult::Kind::not_applicable);

  // constructor-only right sides: only the projection rules remain
  auto E = test::load("extend").rule_set();
  auto SE = *initial_static(E);
  RuleSet UE = usable_rules(SE.dps, E);
  CHECK(UE.size() > 0);
  for (const auto& q : UE.rules()) CHECK(is_reserved_name(root_symbol(q).name));
  auto r = proc_usable(SE, opts());
  REQUIRE(r.kind == ProcessorResult::Kind::problems);
  CHECK(r.problems[0].m == Minimality::arbitrary);
  CHECK_FALSE(r.problems[0].formative);
  CHECK_FALSE(r.problems[0].subset_ddp);

  CHECK(proc_usable(initial_dynamic(R), opts()).kind == ProcessorResult::Kind::not_applicable);
}

TEST_CASE("usable rules fall back to all of R at applied meta-variables") {
  auto R = test::load("twice").rule_set();
  auto S = initial_static(R);
  REQUIRE(S);
  bool applied = false;
  for (const auto& p : S->dps)
    for (const auto& t : subterms(p.rhs))
      if (t->kind == Kind::meta && !t->args.empty()) applied = true;
  if (!applied) return;
  auto U = usable_rules(S->dps, R);
  for (const auto& q : R.rules()) {
    bool kept = false;
    for (const auto& u : U.rules()) kept = kept || rule_equal(u, q);
    CHECK(kept);
  }
}

TEST_CASE("subterm criterion on map") {
  auto R = test::load("staticgraph").rule_set();
  auto sw = proc_to_static(initial_dynamic(R), opts());
  REQUIRE(sw.kind == ProcessorResult::Kind::problems);
  auto r = proc_subterm(sw.problems[0], opts());
  REQUIRE(r.kind == ProcessorResult::Kind::problems);
  CHECK(r.problems[0].dps.empty());
  CHECK(r.payload["projection"] == "nu(map#)=2");
  auto s = proc_static_subterm(sw.problems[0], opts());
  REQUIRE(s.kind == ProcessorResult::Kind::problems);
  CHECK(s.problems[0].dps.empty());
}

TEST_CASE("subterm criterion needs progress and a non-collapsing P") {
  auto R = test::load("plus").rule_set();
  const auto& sig = R.signature();
  DPProblem M;
  M.rules = R;
  auto same = parse_terms({"plus X Y", "plus X Y"}, sig);
  M.dps = {DP{mark(same[0], R), mark(same[1], R), {}}};
  CHECK(proc_subterm(M, opts()).kind == ProcessorResult::Kind::not_applicable);
  CHECK(proc_subterm(initial_dynamic(test::load("map").rule_set()), opts()).kind ==
        ProcessorResult::Kind::not_applicable);
}

TEST_CASE("static subterm criterion on ordrec") {
  auto R = test::load("ordrec").rule_set();
  auto S = initial_static(R);
  REQUIRE(S);
  REQUIRE(S->dps.size() == 2);
  auto r = proc_static_subterm(*S, opts());
  REQUIRE(r.kind == ProcessorResult::Kind::problems);
  CHECK(r.problems[0].dps.empty());
  CHECK(r.payload["projection"] == "nu(rec#)=1");
  // the plain subterm criterion cannot see lim H |> H M
  auto p = proc_subterm(*S, opts());
  if (p.kind == ProcessorResult::Kind::problems) CHECK(p.problems[0].dps.size() == 1);
  auto D = initial_dynamic(R);
  CHECK(proc_static_subterm(D, opts()).kind == ProcessorResult::Kind::not_applicable);
}

TEST_CASE("projection search results re-check") {
  for (const char* name : {"map", "ordrec", "plus", "fold", "staticgraph"}) {
    CAPTURE(name);
    auto R = test::load(name).rule_set();
    auto S = initial_static(R);
    if (!S) continue;
    auto heads = projection_heads(S->dps);
    REQUIRE(heads);
    auto r = proc_subterm(*S, opts());
    if (r.kind != ProcessorResult::Kind::problems) continue;
    // the payload names one argument for every head
    std::string nu = r.payload["projection"];
    for (const auto& [h, n] : *heads) CHECK(nu.find("nu(" + h + ")=") != std::string::npos);
    for (const auto& kept : r.problems[0].dps) CHECK(find_dp(S->dps, show(kept)) >= 0);
  }
}

TEST_CASE("loop search on ap/lm") {
  auto R = test::load("aplm").rule_set();
  auto r = proc_nontermination(initial_dynamic(R), opts());
  REQUIRE(r.kind == ProcessorResult::Kind::no);
  CHECK(r.payload["size"].get<int>() <= 12);
  CHECK(r.payload["loop"].size() >= 2);
  CHECK(r.payload["loop"].front() == r.payload["loop"].back());
}

TEST_CASE("loop search finds nothing for terminating systems") {
  for (const char* name : {"map", "plus", "ordrec", "empty"}) {
    CAPTURE(name);
    auto R = test::load(name).rule_set();
    CHECK(proc_nontermination(initial_dynamic(R), opts()).kind == ProcessorResult::Kind::not_applicable);
  }
}

TEST_CASE("enumerate_terms counts small closed terms") {
  auto R = test::load("plus").rule_set();
  std::vector<Symbol> syms;
  for (const auto& [n, f] : R.signature()) syms.push_back(f);
  Type nat = test::ty("nat");
  // size 1: 0; size 2: s 0; size 3: s (s 0), plus 0 0
  CHECK(enumerate_terms(nat, 1, syms, R.arity()).size() == 1);
  CHECK(enumerate_terms(nat, 2, syms, R.arity()).size() == 1);
  CHECK(enumerate_terms(nat, 3, syms, R.arity()).size() == 2);
  for (int n = 1; n <= 5; ++n)
    for (const auto& t : enumerate_terms(test::ty("nat -> nat"), n, syms, R.arity())) {
      CHECK(locally_closed(t));
      CHECK(free_vars(t).empty());
      CHECK(is_beta_normal(t));
      CHECK(respects_arity(t, R.arity()));
    }
}

TEST_CASE("base-type triple: the single requirement with fresh meta-variables") {
  const char* src = R"(
SIG
  a : nat
  f : nat -> nat -> nat
RULES
)";
  auto sys = parse_system(src);
  auto R = sys.rule_set();
  Symbol f = sharp(sys.signature.at("f"));
  MetaVar X{"X", {}, test::ty("nat")}, Z{"Z", {}, test::ty("nat")};
  Term a = fun(sys.signature.at("a"));
  Term lhs = apps(fun(f), {a, meta(X, {})});
  Term rhs = apps(fun(f), {var("y", test::ty("nat")), meta(Z, {})});
  DPProblem M;
  M.rules = R;
  M.dps = {DP{lhs, rhs, {}}};
  auto reqs = triple_requirements(M, TripleVariant::base);
  REQUIRE(reqs);
  CHECK(reqs->weak_pair.empty());
  CHECK(reqs->weak_rule.empty());
  CHECK(reqs->auxiliary.empty());
  REQUIRE(reqs->strict.size() == 1);
  CHECK(show(reqs->strict[0].lhs) == "f# a X");
  CHECK(show(reqs->strict[0].rhs) == "f# _|_<nat> Z");

  auto t = proc_triple(M, TripleVariant::base, opts());
  REQUIRE(t.kind == ProcessorResult::Kind::problems);
  CHECK(t.problems[0].dps.empty());
}

TEST_CASE("tagged triple: the requirement table for the dynamic staticbad problem") {
  auto R = test::load("staticbad").rule_set();
  auto M = initial_dynamic(R);
  auto g = proc_graph(M, opts());
  REQUIRE(g.kind == ProcessorResult::Kind::problems);
  const DPProblem& P = g.problems.at(0);
  auto reqs = triple_requirements(P, TripleVariant::tagged);
  REQUIRE(reqs);
  CHECK(reqs->collapsing);
  std::set<std::string> strict, rule, aux;
  for (const auto& q : reqs->strict) strict.insert(show(q.lhs) + " > " + show(q.rhs));
  for (const auto& q : reqs->weak_rule) rule.insert(show(q.lhs) + " >~ " + show(q.rhs));
  for (const auto& q : reqs->auxiliary)
    aux.insert(show(q.lhs) + (q.rel == poly::Relation::rule_geq ? " >~ " : " >= ") + show(q.rhs));
  CHECK(strict == std::set<std::string>{"f# 0 > g# (/\\x.f- x)", "g# (/\\x.F[x]) > F[1]"});
  CHECK(rule == std::set<std::string>{"f 0 >~ g (/\\x.f- x)", "g (/\\x.F[x]) >~ F[1]"});
  // the table's tag and marking laws for f, among the auxiliary clauses
  bool tag_f = false, mark_f = false, proj_f = false;
  for (const auto& s : aux) {
    if (s.rfind("f- ", 0) == 0 && s.find(" >~ f ") != std::string::npos) tag_f = true;
    if (s.rfind("f- ", 0) == 0 && s.find(" >= f# ") != std::string::npos) mark_f = true;
    if (s.rfind("f- ", 0) == 0 && s.find(" >= X") != std::string::npos) proj_f = true;
  }
  CHECK(tag_f);
  CHECK(mark_f);
  CHECK(proj_f);

  auto t = proc_triple(P, TripleVariant::tagged, opts());
  REQUIRE(t.kind == ProcessorResult::Kind::problems);
  CHECK(t.problems[0].dps.empty());
}

TEST_CASE("basic triple is not applicable to collapsing pairs") {
  auto R = test::load("staticbad").rule_set();
  CHECK_FALSE(triple_requirements(initial_dynamic(R), TripleVariant::basic));
  auto S = initial_static(test::load("map").rule_set());
  REQUIRE(S);
  CHECK(triple_requirements(*S, TripleVariant::basic));
}

TEST_CASE("triple with no pairs makes no progress") {
  auto R = test::load("map").rule_set();
  DPProblem M = initial_dynamic(R);
  M.dps.clear();
  CHECK(proc_triple(M, TripleVariant::base, opts()).kind == ProcessorResult::Kind::not_applicable);
}

TEST_CASE("strategy names resolve") {
  for (const auto& n : processor_names()) {
    auto p = processor_by_name(n);
    REQUIRE(p);
    CHECK(p->name == n);
  }
  CHECK_FALSE(processor_by_name("no-such-processor"));
  auto nt = processor_by_name("nontermination");
  REQUIRE(nt);
  CHECK_FALSE(nt->sound);
  CHECK(nt->complete);
}

TEST_CASE("no single processor flips a verdict on the corpus") {
  for (const char* name : {"map", "ordrec", "aplm", "staticbad", "extend", "graphcond", "plus", "loop"}) {
    CAPTURE(name);
    auto R = test::load(name).rule_set();
    Options o;
    auto base_yes = solve_finite(initial_dynamic(R), default_strategy(), o).answer;
    auto base_no = solve_infinite(initial_dynamic(R), default_infinite_strategy(), o).answer;
    CHECK_FALSE((base_yes == Answer::yes && base_no == Answer::no));
    for (const auto& p : default_strategy()) {
      auto first = p.run(initial_dynamic(R), o);
      if (first.kind != ProcessorResult::Kind::problems) continue;
      bool all_yes = true;
      for (const auto& sub : first.problems)
        all_yes = all_yes && solve_finite(sub, default_strategy(), o).answer == Answer::yes;
      if (all_yes) CHECK(base_no != Answer::no);
    }
  }
}

TEST_CASE("removing rules drops the dynamic provenance") {
  // with R emptied by the formative rules processor, the static switch
  // would otherwise compute SDP of the empty system
  auto R = test::load("loop").rule_set();
  auto f = proc_formative(initial_dynamic(R), opts());
  REQUIRE(f.kind == ProcessorResult::Kind::problems);
  CHECK(proc_to_static(f.problems[0], opts()).kind == ProcessorResult::Kind::not_applicable);
  CHECK(proc_useless(f.problems[0], opts()).kind == ProcessorResult::Kind::not_applicable);
}
