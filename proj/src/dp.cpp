#include "ho/dp.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace ho {

std::string show(const DP& p) {
  std::string out = show(p.lhs) + " ==> " + show(p.rhs);
  out += " " + show(p.conds);
  return out;
}

bool is_collapsing(const DP& p) { return head(p.rhs)->kind == Kind::meta; }

bool is_collapsing(const std::vector<DP>& ps) {
  return std::any_of(ps.begin(), ps.end(), [](const DP& p) { return is_collapsing(p); });
}

bool dp_equal(const DP& a, const DP& b) {
  auto ren = meta_renaming({a.lhs, a.rhs}, {b.lhs, b.rhs});
  if (!ren || a.conds.size() != b.conds.size()) return false;
  for (const auto& [z, i] : a.conds) {
    auto it = ren->find(z);
    std::string w = it == ren->end() ? z : it->second;
    if (!b.conds.count({w, i})) return false;
  }
  return true;
}

bool same_dps(const std::vector<DP>& a, const std::vector<DP>& b) {
  auto covered = [](const std::vector<DP>& xs, const std::vector<DP>& ys) {
    for (const auto& x : xs)
      if (std::none_of(ys.begin(), ys.end(), [&](const DP& y) { return dp_equal(x, y); })) return false;
    return true;
  };
  return covered(a, b) && covered(b, a);
}

// ---------------------------------------------------------------- marks

Term mark(const Term& s, const RuleSet& R) {
  Term h = head(s);
  if (h->kind != Kind::fun || h->sym.mark != Mark::none || !R.is_defined(h->sym)) return s;
  auto args = spine_args(s);
  if (static_cast<int>(args.size()) != arity_of(R.arity(), h->sym)) return s;
  return apps(fun(sharp(h->sym)), args);
}

Term unmark(const Term& s) {
  Term h = head(s);
  if (h->kind != Kind::fun || h->sym.mark != Mark::sharp) return s;
  return apps(fun(unmarked(h->sym)), spine_args(s));
}

Term unmark_all(const Term& s) {
  switch (s->kind) {
  case Kind::fun:
    if (s->sym.mark == Mark::sharp || s->sym.mark == Mark::tag) return fun(unmarked(s->sym));
    return s;
  case Kind::app: return app(unmark_all(s->left), unmark_all(s->right));
  case Kind::abs: return abs_raw(s->name, s->type->dom, unmark_all(s->left));
  case Kind::meta: {
    std::vector<Term> as;
    for (const auto& a : s->args) as.push_back(unmark_all(a));
    return meta(s->mv, as);
  }
  default: return s;
  }
}

// ---------------------------------------------------------------- BRSMT

namespace {

void reach(const Term& s, const Conditions& A, std::set<std::string> used, std::vector<Candidate>& out) {
  for (Term cur = s;; cur = cur->left) {
    out.push_back(Candidate{cur, A});
    if (cur->kind != Kind::app) break;
  }
  if (s->kind == Kind::abs) {
    auto [x, body] = open_abs(s, used);
    reach(body, A, used, out);
    return;
  }
  Term h = head(s);
  auto args = spine_args(s);
  if (h->kind == Kind::abs && !args.empty()) {
    std::vector<Term> rest(args.begin() + 1, args.end());
    reach(apps(beta(h, args[0]), rest), A, used, out);
  }
  for (const auto& a : args) reach(a, A, used, out);
  if (h->kind == Kind::meta) {
    for (std::size_t i = 0; i < h->args.size(); ++i) {
      Conditions B = A;
      B.insert({h->mv.name, static_cast<int>(i) + 1});
      reach(h->args[i], B, used, out);
    }
  }
}

bool bare_meta(const Term& t) {
  if (t->kind != Kind::meta || static_cast<int>(t->args.size()) != t->mv.arity()) return false;
  std::set<std::string> seen;
  for (const auto& a : t->args)
    if (a->kind != Kind::var || !seen.insert(a->name).second) return false;
  return true;
}

} // namespace

std::vector<Candidate> brsmt_reachable(const Term& s) {
  std::vector<Candidate> raw;
  reach(s, {}, used_names(s), raw);
  // group by term in discovery order, keeping the minimal condition sets
  std::vector<Term> order;
  std::unordered_map<Term, std::vector<Conditions>, TermHash, TermEq> sets;
  for (auto& c : raw) {
    auto [it, fresh] = sets.try_emplace(c.term);
    if (fresh) order.push_back(c.term);
    auto& v = it->second;
    if (std::find(v.begin(), v.end(), c.conds) == v.end()) v.push_back(c.conds);
  }
  std::vector<Candidate> out;
  for (const auto& t : order) {
    const auto& v = sets.at(t);
    for (const auto& a : v) {
      bool minimal = std::none_of(v.begin(), v.end(), [&](const Conditions& b) {
        return b.size() < a.size() && std::includes(a.begin(), a.end(), b.begin(), b.end());
      });
      if (minimal) out.push_back(Candidate{t, a});
    }
  }
  return out;
}

std::vector<Candidate> candidates(const Term& s, const RuleSet& R) {
  std::vector<Candidate> out;
  for (auto& c : brsmt_reachable(s)) {
    Term h = head(c.term);
    bool shape = false;
    if (h->kind == Kind::fun)
      shape = h->sym.mark == Mark::none && R.is_defined(h->sym) &&
              static_cast<int>(spine_args(c.term).size()) >= arity_of(R.arity(), h->sym);
    else if (h->kind == Kind::meta)
      shape = !bare_meta(c.term);
    if (shape) out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------- DDP / SDP

namespace {

// alpha-equality up to a bijective renaming of free variables only
struct VarRenaming {
  std::map<std::string, std::string> fwd, bwd;

  bool eq(const Term& a, const Term& b) {
    if (a->kind != b->kind || !type_equal(a->type, b->type)) return false;
    switch (a->kind) {
    case Kind::var: {
      auto i = fwd.find(a->name);
      auto j = bwd.find(b->name);
      if (i == fwd.end() && j == bwd.end()) {
        fwd.emplace(a->name, b->name);
        bwd.emplace(b->name, a->name);
        return true;
      }
      return i != fwd.end() && j != bwd.end() && i->second == b->name;
    }
    case Kind::bound: return a->index == b->index;
    case Kind::fun: return a->sym == b->sym;
    case Kind::app: return eq(a->left, b->left) && eq(a->right, b->right);
    case Kind::abs: return eq(a->left, b->left);
    case Kind::meta:
      if (a->mv.name != b->mv.name || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!eq(a->args[i], b->args[i])) return false;
      return true;
    }
    return false;
  }
};

} // namespace

bool strict_subterm_open(const Term& l, const Term& p) {
  auto all = subterms(l);
  for (std::size_t i = 1; i < all.size(); ++i) {
    VarRenaming r;
    if (r.eq(all[i], p)) return true;
  }
  return false;
}

std::vector<DP> ddp(const RuleSet& R) {
  std::vector<DP> out;
  RuleSet plus = rules_eta(R);
  for (const auto& r : plus.rules())
    for (const auto& c : candidates(r.rhs, R))
      if (!strict_subterm_open(r.lhs, c.term)) out.push_back(DP{mark(r.lhs, R), mark(c.term, R), c.conds});
  return out;
}

Term metafy(const Term& p, const std::set<std::string>& avoid) {
  VarTypes fv = free_vars(p);
  if (fv.empty()) return p;
  std::set<std::string> used = used_names(p);
  used.insert(avoid.begin(), avoid.end());
  Substitution g;
  for (const auto& [x, ty] : fv) {
    std::string hint = x;
    if (std::isalpha(static_cast<unsigned char>(hint[0])))
      hint[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(hint[0])));
    else
      hint = "X";
    std::string n = fresh_name(hint, used);
    used.insert(n);
    g.vars[x] = meta(MetaVar{n, {}, ty}, {});
  }
  return apply_subst(p, g);
}

std::vector<DP> sdp(const RuleSet& R) {
  std::vector<DP> out;
  for (const auto& r : R.rules()) {
    std::set<std::string> avoid = used_names(r.lhs);
    for (const auto& n : used_names(r.rhs)) avoid.insert(n);
    for (const auto& c : candidates(r.rhs, R)) {
      Term h = head(c.term);
      if (h->kind != Kind::fun) continue;
      if (static_cast<int>(spine_args(c.term).size()) != arity_of(R.arity(), h->sym)) continue;
      out.push_back(DP{mark(r.lhs, R), metafy(mark(c.term, R), avoid), c.conds});
    }
  }
  return out;
}

// ---------------------------------------------------------------- accessibility

int SortOrdering::rank_of(const std::string& s) const {
  auto it = rank.find(s);
  return it == rank.end() ? 0 : it->second;
}

std::string show(const SortOrdering& ord) {
  std::map<int, std::vector<std::string>, std::greater<>> classes;
  for (const auto& [s, r] : ord.rank) classes[r].push_back(s);
  std::string out;
  for (const auto& [r, ss] : classes) {
    if (!out.empty()) out += " > ";
    for (std::size_t i = 0; i < ss.size(); ++i) out += (i ? " = " : "") + ss[i];
  }
  return out.empty() ? "(trivial)" : out;
}

bool pos_geq(const std::string& iota, const Type& sigma, const SortOrdering& ord) {
  if (!ord.geq(iota, target_sort(sigma))) return false;
  for (const auto& s : arg_types(sigma))
    if (!neg_gt(iota, s, ord)) return false;
  return true;
}

bool neg_gt(const std::string& iota, const Type& sigma, const SortOrdering& ord) {
  if (!ord.gt(iota, target_sort(sigma))) return false;
  for (const auto& s : arg_types(sigma))
    if (!pos_geq(iota, s, ord)) return false;
  return true;
}

std::set<int> acc_indices(const Symbol& f, const SortOrdering& ord) {
  std::set<int> out;
  const std::string& iota = target_sort(f.type);
  auto as = arg_types(f.type);
  for (std::size_t i = 0; i < as.size(); ++i)
    if (pos_geq(iota, as[i], ord)) out.insert(static_cast<int>(i) + 1);
  return out;
}

std::set<int> acc_indices_var(const Type& x, const SortOrdering& ord) {
  std::set<int> out;
  const std::string& iota = target_sort(x);
  auto as = arg_types(x);
  for (std::size_t i = 0; i < as.size(); ++i)
    if (ord.geq(iota, target_sort(as[i]))) out.insert(static_cast<int>(i) + 1);
  return out;
}

namespace {

std::set<int> head_acc(const Term& h, const SortOrdering& ord) {
  if (h->kind == Kind::fun) return acc_indices(h->sym, ord);
  if (h->kind == Kind::var || h->kind == Kind::bound) return acc_indices_var(h->type, ord);
  return {};
}

bool acc_rec(const Term& s, const Term& t, const SortOrdering& ord, std::set<std::string>& used) {
  if (alpha_equal(s, t)) return true;
  if (s->kind == Kind::abs) {
    auto [x, body] = open_abs(s, used);
    return acc_rec(body, t, ord, used);
  }
  auto args = spine_args(s);
  for (int i : head_acc(head(s), ord))
    if (i <= static_cast<int>(args.size()) && acc_rec(args[i - 1], t, ord, used)) return true;
  return false;
}

} // namespace

bool acc_subterm(const Term& s, const Term& t, const SortOrdering& ord) {
  std::set<std::string> used = used_names(s);
  for (const auto& n : used_names(t)) used.insert(n);
  return acc_rec(s, t, ord, used);
}

bool acc_reaches_meta(const Term& s, const std::string& z, const SortOrdering& ord) {
  if (s->kind == Kind::meta && s->mv.name == z && static_cast<int>(s->args.size()) == s->mv.arity())
    return std::all_of(s->args.begin(), s->args.end(),
                       [](const Term& a) { return a->kind == Kind::var || a->kind == Kind::bound; });
  if (s->kind == Kind::abs) return acc_reaches_meta(s->left, z, ord);
  auto args = spine_args(s);
  for (int i : head_acc(head(s), ord))
    if (i <= static_cast<int>(args.size()) && acc_reaches_meta(args[i - 1], z, ord)) return true;
  return false;
}

bool arities_maximal(const RuleSet& R) {
  for (const auto& [n, f] : R.signature())
    if (arity_of(R.arity(), f) != max_arity(f.type)) return false;
  return true;
}

bool rules_afp_under(const RuleSet& R, const SortOrdering& ord) {
  for (const auto& r : R.rules()) {
    auto args = spine_args(r.lhs);
    for (const auto& [z, mv] : free_metas(r.rhs)) {
      bool ok = std::any_of(args.begin(), args.end(), [&](const Term& a) { return acc_reaches_meta(a, z, ord); });
      if (!ok) return false;
    }
  }
  return true;
}

namespace {

constexpr std::size_t max_enumerated_sorts = 8;

// surjections sorts -> {0..blocks-1}, lexicographic
bool next_assignment(std::vector<int>& a, int blocks) {
  for (;;) {
    int i = static_cast<int>(a.size()) - 1;
    while (i >= 0 && a[i] == blocks - 1) a[i--] = 0;
    if (i < 0) return false;
    ++a[i];
    std::vector<bool> hit(blocks, false);
    for (int v : a) hit[v] = true;
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) return true;
  }
}

} // namespace

std::optional<SortOrdering> find_afp_ordering(const RuleSet& R) {
  if (!arities_maximal(R)) return std::nullopt;
  std::set<std::string> sort_set;
  for (const auto& [n, f] : R.signature()) collect_sorts(f.type, sort_set);
  std::vector<std::string> sorts(sort_set.begin(), sort_set.end());
  auto make = [&](const std::vector<int>& a) {
    SortOrdering o;
    for (std::size_t i = 0; i < sorts.size(); ++i) o.rank[sorts[i]] = a[i];
    return o;
  };
  std::vector<int> flat(sorts.size(), 0);
  if (rules_afp_under(R, make(flat))) return make(flat);
  if (sorts.size() > max_enumerated_sorts) return std::nullopt;
  for (int blocks = 2; blocks <= static_cast<int>(sorts.size()); ++blocks) {
    std::vector<int> a(sorts.size(), 0);
    while (next_assignment(a, blocks))
      if (auto o = make(a); rules_afp_under(R, o)) return o;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- abstraction-simple

namespace {

// meta-variables occur only as /\x1..xk.Z<x1,..,xk>; `lams` counts the
// abstractions directly above s
bool metas_wrapped(const Term& s, int lams) {
  switch (s->kind) {
  case Kind::abs: return metas_wrapped(s->left, lams + 1);
  case Kind::app: return metas_wrapped(s->left, 0) && metas_wrapped(s->right, 0);
  case Kind::meta: {
    int k = static_cast<int>(s->args.size());
    if (k > lams) return false;
    for (int j = 0; j < k; ++j)
      if (s->args[j]->kind != Kind::bound || s->args[j]->index != k - 1 - j) return false;
    return true;
  }
  default: return true;
  }
}

bool small_metas(const Term& l) {
  for (const auto& [n, z] : free_metas(l))
    if (z.arity() > 1) return false;
  return true;
}

} // namespace

bool is_abstraction_simple(const std::vector<DP>& P, const RuleSet& R) {
  bool higher = std::any_of(R.rules().begin(), R.rules().end(), [](const Rule& r) { return !is_sort(r.lhs->type); });
  auto ok = [&](const Term& l) {
    return is_pattern(l) && is_fully_extended(l) && is_linear(l) && metas_wrapped(l, 0) &&
           (!higher || small_metas(l));
  };
  for (const auto& r : R.rules())
    if (!ok(r.lhs)) return false;
  for (const auto& p : P)
    if (!ok(p.lhs)) return false;
  return true;
}

// ---------------------------------------------------------------- tag

namespace {

bool mentions_variable(const Term& t) { return t->max_loose >= 0 || !free_vars(t).empty(); }

} // namespace

Term tag(const Term& s, const ArityMap& ar) {
  switch (s->kind) {
  case Kind::abs: return abs_raw(s->name, s->type->dom, tag(s->left, ar));
  case Kind::meta: {
    std::vector<Term> as;
    for (const auto& a : s->args) as.push_back(tag(a, ar));
    return meta(s->mv, as);
  }
  case Kind::app: {
    Term h = head(s);
    auto args = spine_args(s);
    std::vector<Term> targs;
    for (const auto& a : args) targs.push_back(tag(a, ar));
    if (h->kind != Kind::fun) return apps(tag(h, ar), targs);
    int k = arity_of(ar, h->sym);
    Term hh = h;
    if (h->sym.mark == Mark::none && k > 0 && k <= static_cast<int>(args.size())) {
      Term prefix = apps(h, std::vector<Term>(args.begin(), args.begin() + k));
      if (mentions_variable(prefix)) hh = fun(tagged(h->sym));
    }
    return apps(hh, targs);
  }
  default: return s;
  }
}

} // namespace ho
