#include "ho/processors.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace ho {

namespace {

using nlohmann::json;

DPProblem with_dps(const DPProblem& M, std::vector<DP> dps) {
  DPProblem out = M;
  out.dps = std::move(dps);
  return out;
}

json dp_list(const std::vector<DP>& ps) {
  json j = json::array();
  for (const auto& p : ps) j.push_back(show(p));
  return j;
}

bool loose(const Term& t, int idx) {
  if (t->max_loose < idx) return false;
  switch (t->kind) {
  case Kind::bound: return t->index == idx;
  case Kind::app: return loose(t->left, idx) || loose(t->right, idx);
  case Kind::abs: return loose(t->left, idx + 1);
  case Kind::meta:
    return std::any_of(t->args.begin(), t->args.end(), [&](const Term& a) { return loose(a, idx); });
  default: return false;
  }
}

void symbols_of(const Term& t, std::map<std::string, Symbol>& out) {
  switch (t->kind) {
  case Kind::fun:
    if (t->sym.mark != Mark::bottom) out.emplace(show(t->sym), t->sym);
    return;
  case Kind::app:
    symbols_of(t->left, out);
    symbols_of(t->right, out);
    return;
  case Kind::abs: symbols_of(t->left, out); return;
  case Kind::meta:
    for (const auto& a : t->args) symbols_of(a, out);
    return;
  default: return;
  }
}

// funs(P, R), marked and unmarked, keyed by rendering
std::map<std::string, Symbol> funs_of(const std::vector<DP>& P, const RuleSet& R) {
  std::map<std::string, Symbol> out;
  for (const auto& p : P) {
    symbols_of(p.lhs, out);
    symbols_of(p.rhs, out);
  }
  for (const auto& r : R.rules()) {
    symbols_of(r.lhs, out);
    symbols_of(r.rhs, out);
  }
  return out;
}

// ---------------------------------------------------------------- graph

struct Reach {
  const RuleSet& R;
  const Conditions& A2;
  std::set<std::string>& used;

  bool rigid(const Term& h) const {
    return h->kind == Kind::fun && (h->sym.mark != Mark::none || !R.is_defined(h->sym));
  }

  // b = Z<x1..xk>; a reduct of a must supply what the conditions on Z demand
  bool introduce_ok(const Term& a, const Term& b) const {
    for (const auto& [z, i] : A2) {
      if (z != b->mv.name) continue;
      int k = static_cast<int>(b->args.size());
      if (i <= k) {
        const Term& xi = b->args[static_cast<std::size_t>(i - 1)];
        if (xi->kind != Kind::var) continue;
        if (!free_vars(a).count(xi->name)) return false;
      } else {
        Term cur = a;
        for (int j = 1; j < i - k && cur->kind == Kind::abs; ++j) cur = cur->left;
        if (cur->kind != Kind::abs) continue;
        if (!loose(cur->left, 0)) return false;
      }
    }
    return true;
  }

  bool may(const Term& a, const Term& b) {
    if (b->kind == Kind::meta) return introduce_ok(a, b);
    Term ha = head(a);
    if (ha->kind == Kind::meta || (ha->kind == Kind::abs && a->kind == Kind::app)) return true;
    if (ha->kind == Kind::fun && !rigid(ha)) return true;
    if (a->kind == Kind::abs) {
      if (b->kind != Kind::abs) return false;
      auto [x, body] = open_abs(a, used);
      return may(body, beta(b, x));
    }
    if (b->kind == Kind::abs) return false;
    Term hb = head(b);
    auto as = spine_args(a);
    auto bs = spine_args(b);
    if (as.size() != bs.size()) return false;
    if (ha->kind == Kind::fun) {
      if (hb->kind != Kind::fun || hb->sym != ha->sym) return false;
    } else if (ha->kind == Kind::var) {
      if (hb->kind != Kind::var || hb->name != ha->name) return false;
    } else {
      return true;
    }
    for (std::size_t i = 0; i < as.size(); ++i)
      if (!may(as[i], bs[i])) return false;
    return true;
  }
};

// empty string when the edge is kept
std::string refute_edge(const DP& r1, const DP& r2, const RuleSet& R) {
  if (is_collapsing(r1)) return "";
  Term h1 = head(r1.rhs), h2 = head(r2.lhs);
  if (h1->kind != Kind::fun || h2->kind != Kind::fun) return "";
  auto as = spine_args(r1.rhs);
  auto bs = spine_args(r2.lhs);
  if (h1->sym != h2->sym || as.size() != bs.size()) return "head mismatch";
  std::set<std::string> used = used_names(r1.rhs);
  for (const auto& n : used_names(r2.lhs)) used.insert(n);
  Reach reach{R, r2.conds, used};
  for (std::size_t i = 0; i < as.size(); ++i)
    if (!reach.may(as[i], bs[i])) return "argument " + std::to_string(i + 1) + " cannot reach the pattern";
  return "";
}

} // namespace

GraphApprox graph_approx(const std::vector<DP>& P, const RuleSet& R) {
  GraphApprox G;
  G.edge.assign(P.size(), std::vector<bool>(P.size(), false));
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = 0; j < P.size(); ++j) {
      std::string why = refute_edge(P[i], P[j], R);
      if (why.empty())
        G.edge[i][j] = true;
      else
        G.notes.push_back("no edge " + std::to_string(i + 1) + " -> " + std::to_string(j + 1) + ": " + why);
    }
  return G;
}

std::vector<std::vector<std::size_t>> scc_on_cycles(const GraphApprox& G) {
  const std::size_t n = G.edge.size();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  int counter = 0, ncomp = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (!G.edge[v][w]) continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = ncomp;
      } while (w != v);
      ++ncomp;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  std::vector<std::vector<std::size_t>> groups(static_cast<std::size_t>(ncomp));
  for (std::size_t v = 0; v < n; ++v) groups[static_cast<std::size_t>(comp[v])].push_back(v);
  std::vector<std::vector<std::size_t>> out;
  for (auto& g : groups) {
    bool cyclic = g.size() > 1 || G.edge[g[0]][g[0]];
    if (cyclic) out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ProcessorResult proc_graph(const DPProblem& M, const Options&) {
  if (M.dps.empty()) return ProcessorResult::of({}, json{{"components", json::array()}});
  GraphApprox G = graph_approx(M.dps, M.rules);
  auto comps = scc_on_cycles(G);
  if (comps.size() == 1 && comps[0].size() == M.dps.size()) return ProcessorResult::na();
  std::vector<DPProblem> out;
  json cj = json::array();
  for (const auto& c : comps) {
    std::vector<DP> ps;
    json ids = json::array();
    for (auto i : c) {
      ps.push_back(M.dps[i]);
      ids.push_back(i + 1);
    }
    cj.push_back(ids);
    out.push_back(with_dps(M, std::move(ps)));
  }
  return ProcessorResult::of(std::move(out), json{{"components", cj}, {"suppressed", G.notes}});
}

ProcessorResult proc_to_static(const DPProblem& M, const Options&) {
  if (!M.subset_ddp) return ProcessorResult::na();
  auto ord = find_afp_ordering(M.rules);
  if (!ord) return ProcessorResult::na();
  std::vector<DP> S = sdp(M.rules);
  GraphApprox G = graph_approx(S, M.rules);
  std::vector<bool> keep(S.size(), false);
  for (const auto& c : scc_on_cycles(G))
    for (auto i : c) keep[i] = true;
  DPProblem Q;
  for (std::size_t i = 0; i < S.size(); ++i)
    if (keep[i]) Q.dps.push_back(S[i]);
  Q.rules = M.rules;
  Q.m = Minimality::computable;
  Q.formative = true;
  Q.S = std::make_shared<const RuleSet>(M.rules);
  Q.ordering = ord;
  bool within = std::all_of(Q.dps.begin(), Q.dps.end(), [&](const DP& d) {
    return std::any_of(M.dps.begin(), M.dps.end(), [&](const DP& e) { return dp_equal(d, e); });
  });
  json why{{"sdp", dp_list(S)}, {"on_cycles", dp_list(Q.dps)}, {"ordering", show(*ord)}};
  ProcessorResult r = ProcessorResult::of({std::move(Q)}, std::move(why));
  r.complete = within;
  return r;
}

// ---------------------------------------------------------------- structural

ProcessorResult proc_useless(const DPProblem& M, const Options&) {
  if (!at_least(M.m, Minimality::minimal) || !M.subset_ddp) return ProcessorResult::na();
  std::vector<DP> kept;
  json removed = json::array();
  for (std::size_t d = 0; d < M.dps.size(); ++d) {
    const DP& p = M.dps[d];
    Term h = head(p.lhs);
    auto args = spine_args(p.lhs);
    bool useless = false;
    Substitution back; // extension meta-variables as free variables of the base rhs
    std::set<std::string> used = used_names(p.rhs);
    for (std::size_t j = 1; j <= args.size() && !useless; ++j) {
      const Term& z = args[args.size() - j];
      if (z->kind != Kind::meta || !z->args.empty()) break;
      std::vector<Term> prefix(args.begin(), args.end() - static_cast<std::ptrdiff_t>(j));
      if (free_metas(apps(h, prefix)).count(z->mv.name)) break;
      std::string x = fresh_name("y", used);
      used.insert(x);
      back.metas[z->mv.name] = var(x, z->type);
      Term base_l = mark(apps(h, prefix), M.rules);
      Term base_r = apply_subst(p.rhs, back);
      for (std::size_t e = 0; e < M.dps.size() && !useless; ++e)
        if (e != d && M.dps[e].conds == p.conds &&
            equal_modulo_renaming({M.dps[e].lhs, M.dps[e].rhs}, {base_l, base_r}))
          useless = true;
    }
    if (useless)
      removed.push_back(show(p));
    else
      kept.push_back(p);
  }
  if (removed.empty()) return ProcessorResult::na();
  return ProcessorResult::of({with_dps(M, std::move(kept))}, json{{"removed", removed}});
}

ProcessorResult proc_extend(const DPProblem& M, const Options&) {
  std::vector<DP> out;
  json changed = json::array();
  for (const auto& p : M.dps) {
    Term h = head(p.rhs);
    auto extra = spine_args(p.rhs);
    if (h->kind != Kind::meta || extra.empty()) {
      out.push_back(p);
      continue;
    }
    MetaVar z = h->mv;
    std::vector<Term> args = h->args;
    for (const auto& s : extra) {
      z.args.push_back(s->type);
      args.push_back(s);
    }
    z.result = p.rhs->type;
    DP q{p.lhs, meta(z, args), p.conds};
    changed.push_back(show(p) + "  becomes  " + show(q));
    out.push_back(std::move(q));
  }
  if (changed.empty()) return ProcessorResult::na();
  DPProblem Q = with_dps(M, std::move(out));
  Q.subset_ddp_ext = M.subset_ddp || M.subset_ddp_ext;
  Q.subset_ddp = false;
  ProcessorResult r = ProcessorResult::of({std::move(Q)}, json{{"extended", changed}});
  r.complete = M.subset_ddp || M.subset_ddp_ext;
  return r;
}

ProcessorResult proc_addcond(const DPProblem& M, const Options& opt) {
  if (!at_least(M.m, Minimality::minimal) || !(M.subset_ddp || M.subset_ddp_ext)) return ProcessorResult::na();
  std::vector<DP> out;
  json changed = json::array();
  for (const auto& p : M.dps) {
    const Term& r = p.rhs;
    bool select = r->kind == Kind::meta && !r->args.empty() && free_metas(p.lhs).count(r->mv.name) &&
                  std::none_of(p.conds.begin(), p.conds.end(), [&](const Condition& c) { return c.first == r->mv.name; });
    int e = select ? static_cast<int>(r->args.size()) : 0;
    if (select && !opt.addcond_duplicate && e != 1) select = false;
    if (!select) {
      out.push_back(p);
      continue;
    }
    for (int i = 1; i <= e; ++i) {
      DP q = p;
      q.conds.insert({r->mv.name, i});
      changed.push_back(show(q));
      out.push_back(std::move(q));
    }
  }
  if (changed.empty()) return ProcessorResult::na();
  DPProblem Q = with_dps(M, std::move(out));
  Q.subset_ddp = Q.subset_ddp_ext = false;
  return ProcessorResult::of({std::move(Q)}, json{{"added", changed}});
}

// ---------------------------------------------------------------- formative rules

bool has_shape(const Term& s, const std::string& a, const Type& tau) {
  if (!type_equal(s->type, tau)) return false;
  if (s->kind == Kind::abs) return a == "\\";
  Term h = head(s);
  if (h->kind == Kind::fun) return a == show(h->sym);
  if (h->kind == Kind::abs) {
    auto args = spine_args(s);
    Term u = beta(h, args[0]);
    return has_shape(apps(u, std::vector<Term>(args.begin() + 1, args.end())), a, tau);
  }
  return true;
}

namespace {

struct Formative {
  std::vector<Rule> plus;          // R+
  std::vector<std::size_t> origin; // index into R
  std::set<std::size_t> fa;        // indices into plus

  void add_shape(const std::string& a, const Type& tau, std::vector<std::size_t>& todo) {
    for (std::size_t i = 0; i < plus.size(); ++i)
      if (!fa.count(i) && has_shape(plus[i].rhs, a, tau)) {
        fa.insert(i);
        todo.push_back(i);
      }
  }

  void visit(const Term& l, std::set<std::string>& used, std::vector<std::size_t>& todo) {
    if (l->kind == Kind::meta) return;
    if (l->kind == Kind::abs) {
      add_shape("\\", l->type, todo);
      auto [x, body] = open_abs(l, used);
      visit(body, used, todo);
      return;
    }
    Term h = head(l);
    if (h->kind == Kind::meta) return;
    add_shape(h->kind == Kind::fun ? show(h->sym) : "_|_", l->type, todo);
    for (const auto& a : spine_args(l)) visit(a, used, todo);
  }

  void close(const Term& l) {
    std::vector<std::size_t> todo;
    std::set<std::string> used = used_names(l);
    visit(l, used, todo);
    while (!todo.empty()) {
      std::size_t i = todo.back();
      todo.pop_back();
      std::set<std::string> u2 = used_names(plus[i].lhs);
      visit(plus[i].lhs, u2, todo);
    }
  }
};

} // namespace

RuleSet formative_rules(const std::vector<DP>& P, const RuleSet& R) {
  Formative F;
  for (std::size_t i = 0; i < R.rules().size(); ++i)
    for (auto& e : eta_extensions(R.rules()[i])) {
      F.plus.push_back(std::move(e));
      F.origin.push_back(i);
    }
  for (const auto& p : P)
    for (const auto& a : spine_args(p.lhs)) F.close(a);
  std::set<std::size_t> keep;
  for (auto i : F.fa) keep.insert(F.origin[i]);
  std::vector<Rule> out;
  for (auto i : keep) out.push_back(R.rules()[i]);
  return R.with_rules(std::move(out));
}

ProcessorResult proc_formative(const DPProblem& M, const Options&) {
  if (!M.formative) return ProcessorResult::na();
  RuleSet FR = formative_rules(M.dps, M.rules);
  if (FR.size() == M.rules.size()) return ProcessorResult::na();
  json kept = json::array();
  for (const auto& r : FR.rules()) kept.push_back(show(r));
  DPProblem Q = M;
  Q.rules = std::move(FR);
  // P is in general no longer a subset of DDP of the smaller rule set
  Q.subset_ddp = Q.subset_ddp_ext = false;
  return ProcessorResult::of({std::move(Q)}, json{{"kept_rules", kept}});
}

// ---------------------------------------------------------------- usable rules

namespace {

// collects defined symbols; false when an applied meta-variable or a
// variable-headed application is met
bool scan_usable(const Term& t, const RuleSet& R, std::set<std::string>& out) {
  switch (t->kind) {
  case Kind::fun:
    if (t->sym.mark == Mark::none && R.is_defined(t->sym)) out.insert(t->sym.name);
    return true;
  case Kind::meta:
    if (!t->args.empty()) return false;
    return true;
  case Kind::abs: return scan_usable(t->left, R, out);
  case Kind::app: {
    Term h = head(t);
    if (h->kind != Kind::fun && h->kind != Kind::abs) return false;
    return scan_usable(t->left, R, out) && scan_usable(t->right, R, out);
  }
  default: return true;
  }
}

} // namespace

RuleSet usable_rules(const std::vector<DP>& P, const RuleSet& R) {
  std::set<std::string> reached;
  bool all = false;
  for (const auto& p : P)
    for (const auto& a : spine_args(p.rhs))
      if (!scan_usable(a, R, reached)) all = true;
  std::vector<bool> used(R.size(), false);
  std::vector<std::string> todo(reached.begin(), reached.end());
  while (!todo.empty() && !all) {
    std::string f = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i < R.size(); ++i) {
      if (used[i] || root_symbol(R.rules()[i]).name != f) continue;
      used[i] = true;
      std::set<std::string> more;
      if (!scan_usable(R.rules()[i].rhs, R, more)) all = true;
      for (const auto& g : more)
        if (reached.insert(g).second) todo.push_back(g);
    }
  }
  std::vector<Rule> out;
  for (std::size_t i = 0; i < R.size(); ++i)
    if (all || used[i]) out.push_back(R.rules()[i]);

  Signature sig = R.signature();
  ArityMap ar = R.arity();
  std::set<std::string> sorts;
  for (const auto& [n, f] : R.signature()) collect_sorts(f.type, sorts);
  for (const auto& s : sorts) {
    Type t = sort_type(s);
    Symbol p = plain_symbol("_p_" + s, arrows({t, t}, t));
    sig[p.name] = p;
    ar[p.name] = 2;
    Term X = meta(MetaVar{"X", {}, t}, {});
    Term Y = meta(MetaVar{"Y", {}, t}, {});
    out.push_back(Rule{apps(fun(p), {X, Y}), X});
    out.push_back(Rule{apps(fun(p), {X, Y}), Y});
  }
  return RuleSet(std::move(out), std::move(sig), std::move(ar));
}

ProcessorResult proc_usable(const DPProblem& M, const Options&) {
  if (is_collapsing(M.dps) || !at_least(M.m, Minimality::minimal)) return ProcessorResult::na();
  RuleSet U = usable_rules(M.dps, M.rules);
  std::size_t original = 0;
  json kept = json::array();
  for (const auto& r : U.rules())
    if (!is_reserved_name(root_symbol(r).name)) {
      ++original;
      kept.push_back(show(r));
    }
  if (original == M.rules.size()) return ProcessorResult::na();
  DPProblem Q;
  Q.dps = M.dps;
  Q.rules = std::move(U);
  Q.m = Minimality::arbitrary;
  Q.formative = false;
  ProcessorResult r = ProcessorResult::of({std::move(Q)}, json{{"usable", kept}});
  r.complete = false;
  return r;
}

// ---------------------------------------------------------------- projections

std::optional<std::map<std::string, int>> projection_heads(const std::vector<DP>& P) {
  if (P.empty() || is_collapsing(P)) return std::nullopt;
  std::map<std::string, int> heads;
  for (const auto& p : P)
    for (const Term& side : {p.lhs, p.rhs}) {
      Term h = head(side);
      if (h->kind != Kind::fun) return std::nullopt;
      int n = static_cast<int>(spine_args(side).size());
      if (n == 0) return std::nullopt;
      auto [it, fresh] = heads.emplace(show(h->sym), n);
      if (!fresh) it->second = std::min(it->second, n);
    }
  return heads;
}

std::optional<Term> project(const Term& s, const Projection& nu) {
  Term h = head(s);
  if (h->kind != Kind::fun) return std::nullopt;
  auto it = nu.find(show(h->sym));
  auto args = spine_args(s);
  if (it == nu.end() || it->second < 1 || it->second > static_cast<int>(args.size())) return std::nullopt;
  return args[static_cast<std::size_t>(it->second - 1)];
}

std::string show(const Projection& nu) {
  std::string out;
  for (const auto& [f, i] : nu) out += (out.empty() ? "" : ", ") + ("nu(" + f + ")=" + std::to_string(i));
  return out;
}

namespace {

using StrictRel = std::function<bool(const Term&, const Term&)>;

// number of strictly decreasing DPs, or -1 when some DP is neither
int score(const std::vector<DP>& P, const Projection& nu, const StrictRel& gt, std::vector<bool>* strict) {
  int n = 0;
  if (strict) strict->assign(P.size(), false);
  for (std::size_t i = 0; i < P.size(); ++i) {
    auto l = project(P[i].lhs, nu);
    auto r = project(P[i].rhs, nu);
    if (!l || !r) return -1;
    if (gt(*l, *r)) {
      ++n;
      if (strict) (*strict)[i] = true;
    } else if (!alpha_equal(*l, *r)) {
      return -1;
    }
  }
  return n;
}

std::optional<Projection> search_projection(const std::vector<DP>& P, const StrictRel& gt) {
  auto heads = projection_heads(P);
  if (!heads) return std::nullopt;
  std::vector<std::pair<std::string, int>> hs(heads->begin(), heads->end());
  Projection nu;
  for (const auto& [f, m] : hs) nu[f] = 1;
  std::optional<Projection> best;
  int best_score = 0;
  if (hs.size() <= 4) {
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == hs.size()) {
        int s = score(P, nu, gt, nullptr);
        if (s > best_score) {
          best_score = s;
          best = nu;
        }
        return;
      }
      for (int i = 1; i <= hs[k].second; ++i) {
        nu[hs[k].first] = i;
        rec(k + 1);
      }
    };
    rec(0);
    return best;
  }
  // coordinate ascent from all-first-arguments
  bool improved = true;
  int cur = score(P, nu, gt, nullptr);
  while (improved) {
    improved = false;
    for (const auto& [f, m] : hs)
      for (int i = 1; i <= m; ++i) {
        Projection alt = nu;
        alt[f] = i;
        int s = score(P, alt, gt, nullptr);
        if (s > cur) {
          cur = s;
          nu = alt;
          improved = true;
        }
      }
  }
  if (cur > 0) return nu;
  return std::nullopt;
}

ProcessorResult apply_projection(const DPProblem& M, const StrictRel& gt) {
  auto nu = search_projection(M.dps, gt);
  if (!nu) return ProcessorResult::na();
  std::vector<bool> strict;
  score(M.dps, *nu, gt, &strict);
  std::vector<DP> kept;
  json removed = json::array();
  for (std::size_t i = 0; i < M.dps.size(); ++i)
    if (strict[i])
      removed.push_back(show(M.dps[i]));
    else
      kept.push_back(M.dps[i]);
  return ProcessorResult::of({with_dps(M, std::move(kept))}, json{{"projection", show(*nu)}, {"removed", removed}});
}

} // namespace

ProcessorResult proc_subterm(const DPProblem& M, const Options&) {
  if (!at_least(M.m, Minimality::minimal)) return ProcessorResult::na();
  return apply_projection(M, [](const Term& l, const Term& r) { return strict_subterm_open(l, r); });
}

ProcessorResult proc_static_subterm(const DPProblem& M, const Options&) {
  if (M.m != Minimality::computable || !M.ordering) return ProcessorResult::na();
  SortOrdering ord = *M.ordering;
  return apply_projection(M, [ord](const Term& s, const Term& t) {
    if (alpha_equal(s, t)) return false;
    if (acc_subterm(s, t, ord)) return true;
    Term h = head(t);
    return h->kind == Kind::meta && acc_reaches_meta(s, h->mv.name, ord);
  });
}

// ---------------------------------------------------------------- loops

namespace {

struct Enumerator {
  std::vector<Symbol> symbols;
  ArityMap ar;
  std::map<std::string, std::vector<Term>> memo;

  static std::string key(const Type& t, int size, const std::vector<Type>& ctx) {
    std::string k = show(t) + "|" + std::to_string(size);
    for (const auto& c : ctx) k += "|" + show(c);
    return k;
  }

  // lists of n arguments of the given types with sizes summing to `size`
  void fill(const std::vector<Type>& types, std::size_t i, int size, const std::vector<Type>& ctx,
            std::vector<Term>& cur, const Term& h, std::vector<Term>& out) {
    if (i == types.size()) {
      if (size == 0) out.push_back(apps(h, cur));
      return;
    }
    int rest = static_cast<int>(types.size() - i - 1);
    for (int s = 1; s <= size - rest; ++s)
      for (const auto& t : gen(types[i], s, ctx)) {
        cur.push_back(t);
        fill(types, i + 1, size - s, ctx, cur, h, out);
        cur.pop_back();
      }
  }

  const std::vector<Term>& gen(const Type& ty, int size, const std::vector<Type>& ctx) {
    std::string k = key(ty, size, ctx);
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    std::vector<Term> out;
    if (size >= 1) {
      std::vector<std::pair<Term, int>> heads;
      for (const auto& f : symbols) heads.emplace_back(fun(f), arity_of(ar, f));
      for (std::size_t j = 0; j < ctx.size(); ++j)
        heads.emplace_back(bvar(static_cast<int>(ctx.size() - 1 - j), ctx[j]), 0);
      for (const auto& [h, minargs] : heads) {
        auto types = arg_types(h->type);
        for (std::size_t n = static_cast<std::size_t>(minargs); n <= types.size(); ++n) {
          if (!type_equal(drop_args(h->type, static_cast<int>(n)), ty)) continue;
          std::vector<Type> first(types.begin(), types.begin() + static_cast<std::ptrdiff_t>(n));
          std::vector<Term> cur;
          fill(first, 0, size - 1, ctx, cur, h, out);
        }
      }
      if (!is_sort(ty) && size >= 2) {
        auto inner = ctx;
        inner.push_back(ty->dom);
        for (const auto& body : gen(ty->cod, size - 1, inner))
          out.push_back(abs_raw("x" + std::to_string(ctx.size()), ty->dom, body));
      }
    }
    return memo.emplace(k, std::move(out)).first->second;
  }
};

bool contains(const Term& t, const Term& s) {
  if (t->size < s->size) return false;
  if (t->size == s->size && alpha_equal(t, s)) return true;
  switch (t->kind) {
  case Kind::app: return contains(t->left, s) || contains(t->right, s);
  case Kind::abs: return contains(t->left, s);
  default: return false;
  }
}

int skeleton_size(const Term& t) {
  switch (t->kind) {
  case Kind::meta: return 0;
  case Kind::app: return skeleton_size(t->left) + skeleton_size(t->right);
  case Kind::abs: return 1 + skeleton_size(t->left);
  default: return 1;
  }
}

int term_size(const Term& t) { return skeleton_size(t); }

// s ->+ C[s] within `steps` steps; returns the path
std::optional<std::vector<Term>> find_loop(const Term& s, const RuleSet& R, int steps, std::size_t& budget) {
  std::map<Term, Term, TermLess> parent;
  std::vector<Term> frontier{s};
  parent.emplace(s, nullptr);
  for (int d = 0; d < steps && !frontier.empty(); ++d) {
    std::vector<Term> next;
    for (const auto& t : frontier)
      for (const auto& r : reduce_once(t, R)) {
        if (budget == 0) return std::nullopt;
        --budget;
        if (contains(r.result, s)) {
          std::vector<Term> path{r.result};
          for (Term cur = t; cur; cur = parent.at(cur)) path.push_back(cur);
          std::reverse(path.begin(), path.end());
          return path;
        }
        if (parent.emplace(r.result, t).second) next.push_back(r.result);
      }
    frontier = std::move(next);
  }
  return std::nullopt;
}

} // namespace

std::vector<Term> enumerate_terms(const Type& type, int size, const std::vector<Symbol>& symbols, const ArityMap& ar) {
  Enumerator e{symbols, ar, {}};
  return e.gen(type, size, {});
}

ProcessorResult proc_nontermination(const DPProblem& M, const Options& opt) {
  if (M.dps.empty()) return ProcessorResult::na();
  Enumerator en;
  for (const auto& [n, f] : M.rules.signature())
    if (!is_reserved_name(n)) en.symbols.push_back(f);
  en.ar = M.rules.arity();
  std::size_t budget = 200000;
  std::size_t seeds = 0;
  constexpr std::size_t max_seeds = 20000;
  for (const auto& p : M.dps) {
    std::vector<MetaVar> zs;
    for (const auto& [n, z] : free_metas(p.lhs)) zs.push_back(z);
    int room = opt.loop_size - skeleton_size(p.lhs);
    if (room < static_cast<int>(zs.size())) continue;
    // distribute sizes over the meta-variables, smallest total first
    for (int total = static_cast<int>(zs.size()); total <= room; ++total) {
      std::optional<ProcessorResult> found;
      std::function<bool(std::size_t, int, Substitution&)> rec = [&](std::size_t k, int left, Substitution& g) {
        if (opt.expired() || budget == 0 || seeds >= max_seeds) return true;
        if (k == zs.size()) {
          if (left != 0 || !respects(g, p.conds)) return false;
          ++seeds;
          Term seed = beta_normalize(unmark_all(apply_subst(p.lhs, g)));
          if (!respects_arity(seed, en.ar)) return false;
          auto path = find_loop(seed, M.rules, opt.loop_steps, budget);
          if (!path) return false;
          json loop = json::array();
          for (const auto& t : *path) loop.push_back(show(t));
          found = ProcessorResult::nonterminating(
              json{{"dp", show(p)}, {"seed", show(seed)}, {"size", term_size(seed)}, {"loop", loop}});
          return true;
        }
        int rest = static_cast<int>(zs.size() - k - 1);
        for (int s = 1; s <= left - rest; ++s) {
          if (k + 1 == zs.size() && s != left) continue;
          for (const auto& t : en.gen(zs[k].type(), s, {})) {
            g.metas[zs[k].name] = t;
            if (rec(k + 1, left - s, g)) return true;
          }
        }
        g.metas.erase(zs[k].name);
        return false;
      };
      Substitution g;
      if (zs.empty()) {
        if (total == 0) rec(0, 0, g);
      } else {
        rec(0, total, g);
      }
      if (found) return *found;
      if (opt.expired() || budget == 0 || seeds >= max_seeds) return ProcessorResult::na();
      if (zs.empty()) break;
    }
  }
  return ProcessorResult::na();
}

// ---------------------------------------------------------------- triples

std::string show(TripleVariant v) {
  switch (v) {
  case TripleVariant::basic: return "basic";
  case TripleVariant::base: return "base";
  case TripleVariant::tagged: return "tagged";
  }
  return "?";
}

namespace {

struct Fresh {
  std::set<std::string> used;
  Term meta0(const std::string& hint, const Type& t) {
    std::string n = fresh_name(hint, used);
    used.insert(n);
    return meta(MetaVar{n, {}, t}, {});
  }
  std::vector<Term> metas(const std::string& hint, const std::vector<Type>& ts) {
    std::vector<Term> out;
    for (const auto& t : ts) out.push_back(meta0(hint, t));
    return out;
  }
};

std::vector<Term> bottoms(const Type& t) {
  std::vector<Term> out;
  for (const auto& a : arg_types(t)) out.push_back(fun(bottom(a)));
  return out;
}

Term bottom_vars(const Term& p) {
  Substitution g;
  for (const auto& [x, t] : free_vars(p)) g.vars[x] = fun(bottom(t));
  return g.vars.empty() ? p : apply_subst(p, g);
}

// a X1..Xm >= Xi _|_.. for every i
void projection_laws(const Term& a, Fresh& fresh, const std::string& origin, std::vector<poly::Requirement>& out) {
  auto types = arg_types(a->type);
  if (types.empty()) return;
  auto xs = fresh.metas("X", types);
  Term lhs = apps(a, xs);
  for (std::size_t i = 0; i < xs.size(); ++i)
    out.push_back(poly::Requirement{lhs, apps(xs[i], bottoms(xs[i]->type)), poly::Relation::pair_geq,
                                    origin + " projects argument " + std::to_string(i + 1), false});
}

} // namespace

std::optional<OrderingRequirements> triple_requirements(const DPProblem& M, TripleVariant v) {
  OrderingRequirements Q;
  Q.collapsing = is_collapsing(M.dps);
  if (v == TripleVariant::basic && Q.collapsing) return std::nullopt;
  if (v == TripleVariant::tagged && (!M.formative || !is_abstraction_simple(M.dps, M.rules))) return std::nullopt;
  const ArityMap& ar = M.rules.arity();
  auto T = [&](const Term& t) { return v == TripleVariant::tagged ? tag(t, ar) : t; };
  Fresh fresh;
  for (const auto& p : M.dps) {
    for (const auto& n : used_names(p.lhs)) fresh.used.insert(n);
    for (const auto& n : used_names(p.rhs)) fresh.used.insert(n);
  }
  for (const auto& r : M.rules.rules()) {
    for (const auto& n : used_names(r.lhs)) fresh.used.insert(n);
    for (const auto& n : used_names(r.rhs)) fresh.used.insert(n);
  }

  for (std::size_t i = 0; i < M.dps.size(); ++i) {
    const DP& p = M.dps[i];
    Term lhs = p.lhs, rhs = p.rhs;
    if (v != TripleVariant::basic) {
      lhs = apps(p.lhs, fresh.metas("Z", arg_types(p.lhs->type)));
      Term q = bottom_vars(p.rhs);
      rhs = T(apps(q, bottoms(q->type)));
    }
    Q.strict.push_back(poly::Requirement{lhs, rhs, poly::Relation::strict, "dp " + std::to_string(i + 1), false});
  }
  for (std::size_t i = 0; i < M.rules.size(); ++i) {
    const Rule& r = M.rules.rules()[i];
    Q.weak_rule.push_back(
        poly::Requirement{r.lhs, T(r.rhs), poly::Relation::rule_geq, "rule " + std::to_string(i + 1), false});
  }

  auto funs = funs_of(M.dps, M.rules);
  std::set<std::string> marked_used;
  for (const auto& [k, f] : funs)
    if (f.mark == Mark::sharp) marked_used.insert(f.name);

  if (v == TripleVariant::tagged) {
    for (const auto& [k, f] : funs) {
      if (f.mark != Mark::none) continue;
      int n = arity_of(ar, f);
      if (n == 0) continue;
      auto ts = arg_types(f.type);
      auto xs = fresh.metas("X", std::vector<Type>(ts.begin(), ts.begin() + n));
      Q.auxiliary.push_back(poly::Requirement{apps(fun(tagged(f)), xs), apps(fun(f), xs), poly::Relation::rule_geq,
                                              "tag law " + k, false});
    }
  }
  if (!Q.collapsing) return Q;

  // the meta-variable case is represented by every meta-variable type in P
  std::map<std::string, Type> meta_types;
  for (const auto& p : M.dps)
    for (const auto& [n, z] : free_metas(p.lhs)) meta_types.emplace(show(z.type()), z.type());
  for (const auto& [k, t] : meta_types) projection_laws(fresh.meta0("A", t), fresh, "meta " + k, Q.auxiliary);

  for (const auto& [k, f] : funs) {
    if (v == TripleVariant::base) {
      projection_laws(fun(f), fresh, k, Q.auxiliary);
    } else if (v == TripleVariant::tagged && f.mark == Mark::none && arity_of(ar, f) > 0) {
      projection_laws(fun(tagged(f)), fresh, show(tagged(f)), Q.auxiliary);
    }
    if (f.mark != Mark::none || !marked_used.count(f.name)) continue;
    int n = arity_of(ar, f);
    auto ts = arg_types(f.type);
    auto xs = fresh.metas("X", std::vector<Type>(ts.begin(), ts.begin() + n));
    Term small = apps(fun(sharp(f)), xs);
    Term big = apps(fun(v == TripleVariant::tagged && n > 0 ? tagged(f) : f), xs);
    Q.auxiliary.push_back(poly::Requirement{big, small, poly::Relation::pair_geq, "marking law " + k, false});
  }
  return Q;
}

ProcessorResult proc_triple(const DPProblem& M, TripleVariant v, const Options& opt) {
  if (M.dps.empty()) return ProcessorResult::na();
  auto Q = triple_requirements(M, v);
  if (!Q) return ProcessorResult::na();
  std::vector<poly::Requirement> all = Q->strict;
  all.insert(all.end(), Q->weak_rule.begin(), Q->weak_rule.end());
  all.insert(all.end(), Q->auxiliary.begin(), Q->auxiliary.end());
  poly::Scheme scheme = poly::make_scheme(all, Q->collapsing);
  poly::SolveStats stats;
  auto asg = poly::solve(all, scheme, opt.coef_bound, &stats);
  if (!asg) {
    for (std::size_t i = 0; i < Q->strict.size(); ++i) {
      all[i].rel = poly::Relation::pair_geq;
      all[i].optional_strict = true;
    }
    asg = poly::solve(all, scheme, opt.coef_bound, &stats);
  }
  if (!asg) return ProcessorResult::na();
  poly::Interpretation J(scheme, *asg);
  std::vector<DP> kept;
  json removed = json::array();
  for (std::size_t i = 0; i < M.dps.size(); ++i)
    if (J.gt(Q->strict[i].lhs, Q->strict[i].rhs))
      removed.push_back(show(M.dps[i]));
    else
      kept.push_back(M.dps[i]);
  if (removed.empty()) return ProcessorResult::na();
  json reqs = json::array();
  for (const auto& q : all) reqs.push_back(show(q.lhs) + " " + poly::show(q.optional_strict ? poly::Relation::pair_geq : q.rel) + " " + show(q.rhs));
  return ProcessorResult::of({with_dps(M, std::move(kept))}, json{{"variant", show(v)},
                                                                  {"interpretation", poly::show(*asg, scheme)},
                                                                  {"removed", removed},
                                                                  {"requirements", reqs}});
}

// ---------------------------------------------------------------- strategies

namespace {

Processor make(const std::string& name, bool sound, bool complete,
               std::function<ProcessorResult(const DPProblem&, const Options&)> run) {
  return Processor{name, sound, complete, std::move(run)};
}

} // namespace

std::vector<std::string> processor_names() {
  return {"useless",           "extend",      "addcond",       "graph",         "sdp",
          "static-subterm-criterion", "subterm-criterion", "formative", "usable", "triple-base",
          "triple-tagged",     "triple-basic", "nontermination"};
}

std::optional<Processor> processor_by_name(const std::string& name) {
  if (name == "useless") return make(name, true, true, proc_useless);
  if (name == "extend") return make(name, true, true, proc_extend);
  if (name == "addcond") return make(name, true, true, proc_addcond);
  if (name == "graph") return make(name, true, true, proc_graph);
  if (name == "sdp") return make(name, true, true, proc_to_static);
  if (name == "static-subterm-criterion") return make(name, true, true, proc_static_subterm);
  if (name == "subterm-criterion") return make(name, true, true, proc_subterm);
  if (name == "formative") return make(name, true, true, proc_formative);
  if (name == "usable") return make(name, true, false, proc_usable);
  if (name == "triple-base")
    return make(name, true, true, [](const DPProblem& M, const Options& o) { return proc_triple(M, TripleVariant::base, o); });
  if (name == "triple-tagged")
    return make(name, true, true, [](const DPProblem& M, const Options& o) { return proc_triple(M, TripleVariant::tagged, o); });
  if (name == "triple-basic")
    return make(name, true, true, [](const DPProblem& M, const Options& o) { return proc_triple(M, TripleVariant::basic, o); });
  if (name == "nontermination") return make(name, false, true, proc_nontermination);
  return std::nullopt;
}

std::vector<Processor> default_strategy() {
  std::vector<Processor> out;
  for (const char* n : {"useless", "extend", "addcond", "graph", "sdp", "static-subterm-criterion", "subterm-criterion",
                        "formative", "usable", "triple-base", "triple-tagged"})
    out.push_back(*processor_by_name(n));
  return out;
}

std::vector<Processor> default_infinite_strategy() {
  std::vector<Processor> out;
  for (const char* n : {"nontermination", "graph", "useless", "extend", "addcond", "formative"})
    out.push_back(*processor_by_name(n));
  return out;
}

} // namespace ho
