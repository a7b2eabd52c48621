#include "ho/polyint.hpp"

#include <algorithm>
#include <sstream>

namespace ho::poly {

namespace {

constexpr std::size_t kMaxAlts = 64;

struct TooBig : std::runtime_error {
  TooBig() : std::runtime_error("max-polynomial too large") {}
};

void add_term(Poly& p, const Monomial& m, Coeff c) {
  if (c == 0) return;
  Coeff& slot = p.terms[m];
  slot += c;
  if (slot == 0) p.terms.erase(m);
}

Poly padd(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [m, c] : b.terms) add_term(r, m, c);
  return r;
}

Poly pscale(const Poly& a, Coeff k) {
  Poly r;
  if (k == 0) return r;
  for (const auto& [m, c] : a.terms) r.terms[m] = c * k;
  return r;
}

Coeff coeff(const Poly& p, const Monomial& m) {
  auto it = p.terms.find(m);
  return it == p.terms.end() ? 0 : it->second;
}

// q <= p coefficient-wise (all coefficients are non-negative)
bool below(const Poly& q, const Poly& p) {
  for (const auto& [m, c] : q.terms)
    if (coeff(p, m) < c) return false;
  return true;
}

PolyExpr normalize(std::vector<Poly> alts) {
  std::sort(alts.begin(), alts.end());
  alts.erase(std::unique(alts.begin(), alts.end()), alts.end());
  std::vector<Poly> keep;
  for (std::size_t i = 0; i < alts.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < alts.size() && !dominated; ++j)
      dominated = j != i && below(alts[i], alts[j]) && !(below(alts[j], alts[i]) && j > i);
    if (!dominated) keep.push_back(alts[i]);
  }
  if (keep.size() > kMaxAlts) throw TooBig();
  return PolyExpr{std::move(keep)};
}

PolyExpr eadd(const PolyExpr& a, const PolyExpr& b) {
  std::vector<Poly> out;
  for (const auto& p : a.alts)
    for (const auto& q : b.alts) out.push_back(padd(p, q));
  return normalize(std::move(out));
}

PolyExpr escale(const PolyExpr& a, Coeff k) {
  if (k == 0) return constant(0);
  std::vector<Poly> out;
  for (const auto& p : a.alts) out.push_back(pscale(p, k));
  return PolyExpr{std::move(out)};
}

PolyExpr emax(const PolyExpr& a, const PolyExpr& b) {
  std::vector<Poly> out = a.alts;
  out.insert(out.end(), b.alts.begin(), b.alts.end());
  return normalize(std::move(out));
}

PolyExpr eatom(AtomId a) {
  Poly p;
  p.terms[Monomial{{a, 1}}] = 1;
  return PolyExpr{{p}};
}

void collect_symbols(const Term& t, std::map<std::string, Symbol>& out) {
  switch (t->kind) {
  case Kind::fun:
    if (t->sym.mark != Mark::bottom) out.emplace(show(t->sym), t->sym);
    return;
  case Kind::app:
    collect_symbols(t->left, out);
    collect_symbols(t->right, out);
    return;
  case Kind::abs: collect_symbols(t->left, out); return;
  case Kind::meta:
    for (const auto& a : t->args) collect_symbols(a, out);
    return;
  default: return;
  }
}

std::set<std::string> symbol_keys(const Term& t) {
  std::map<std::string, Symbol> syms;
  collect_symbols(t, syms);
  std::set<std::string> out;
  for (const auto& [k, s] : syms) out.insert(k);
  return out;
}

} // namespace

PolyExpr constant(Coeff c) {
  Poly p;
  if (c != 0) p.terms[Monomial{}] = c;
  return PolyExpr{{p}};
}

std::string show(Relation r) {
  switch (r) {
  case Relation::rule_geq: return ">~";
  case Relation::pair_geq: return ">=";
  case Relation::strict: return ">";
  }
  return "?";
}

int Template::choices() const {
  return static_cast<int>(std::count(functional.begin(), functional.end(), true));
}

Scheme make_scheme(const std::vector<Requirement>& reqs, bool collapsing) {
  Scheme s;
  s.collapsing = collapsing;
  std::map<std::string, Symbol> syms;
  for (const auto& q : reqs) {
    collect_symbols(q.lhs, syms);
    collect_symbols(q.rhs, syms);
  }
  for (const auto& [k, f] : syms) {
    Template t;
    t.sym = f;
    for (const auto& a : arg_types(f.type)) t.functional.push_back(!is_sort(a));
    t.arity = static_cast<int>(t.functional.size());
    s.symbols.emplace(k, t);
  }
  return s;
}

// ------------------------------------------------------------ values

namespace {

struct Value;
using V = std::shared_ptr<const Value>;

struct Value {
  Type type;
  PolyExpr num; // when type is a sort
  std::function<V(const V&)> fn;
};

} // namespace

struct Interpretation::Impl {
  const Scheme scheme;
  const Assignment asg;

  struct AtomInfo {
    std::string name;
    std::vector<PolyExpr> args;
  };
  std::vector<AtomInfo> atoms;
  std::map<std::string, AtomId> index;
  int depth = 0;
  int params = 0;

  Impl(const Scheme& s, const Assignment& a) : scheme(s), asg(a) {}

  std::string key(const Poly& p) const {
    std::string out = "{";
    for (const auto& [m, c] : p.terms) {
      out += std::to_string(c) + "*";
      for (const auto& [x, e] : m) out += "a" + std::to_string(x) + "^" + std::to_string(e);
      out += ";";
    }
    return out + "}";
  }
  std::string key(const PolyExpr& p) const {
    std::string out = "[";
    for (const auto& q : p.alts) out += key(q);
    return out + "]";
  }

  AtomId atom(const std::string& name, std::vector<PolyExpr> args) {
    std::string k = name + "(";
    for (const auto& a : args) k += key(a) + ",";
    k += ")";
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    AtomId id = static_cast<AtomId>(atoms.size());
    atoms.push_back(AtomInfo{name, std::move(args)});
    index.emplace(k, id);
    return id;
  }

  static V base(PolyExpr p, Type t) {
    auto v = std::make_shared<Value>();
    v->type = std::move(t);
    v->num = std::move(p);
    return v;
  }

  static V closure(Type t, std::function<V(const V&)> f) {
    auto v = std::make_shared<Value>();
    v->type = std::move(t);
    v->fn = std::move(f);
    return v;
  }

  V zero(const Type& t) {
    if (is_sort(t)) return base(constant(0), t);
    Type cod = t->cod;
    return closure(t, [this, cod](const V&) { return zero(cod); });
  }

  V symbolic(const std::string& name, const Type& t, std::vector<PolyExpr> args) {
    if (is_sort(t)) return base(eatom(atom(name, std::move(args))), t);
    Type cod = t->cod;
    return closure(t, [this, name, cod, args](const V& x) {
      auto more = args;
      more.push_back(canon(x));
      return symbolic(name, cod, std::move(more));
    });
  }

  // a function value, identified by its body on canonical parameters
  PolyExpr canon(const V& v) {
    if (is_sort(v->type)) return v->num;
    int d = depth++;
    V cur = v;
    int i = 0;
    while (!is_sort(cur->type)) {
      V p = symbolic("$" + std::to_string(d) + "." + std::to_string(i++), cur->type->dom, {});
      cur = cur->fn(p);
    }
    --depth;
    return cur->num;
  }

  PolyExpr at_zero(const V& v) {
    V cur = v;
    while (!is_sort(cur->type)) cur = cur->fn(zero(cur->type->dom));
    return cur->num;
  }

  V max_lift(const V& v, const PolyExpr& extra) {
    if (is_sort(v->type)) return base(emax(v->num, extra), v->type);
    return closure(v->type, [this, v, extra](const V& y) { return max_lift(v->fn(y), extra); });
  }

  V app_at(const V& f, const V& x) {
    V r = f->fn(x);
    if (!scheme.collapsing) return r;
    return max_lift(r, at_zero(x));
  }

  PolyExpr template_value(const Template& t, const std::vector<int>& c, const std::vector<V>& args) {
    PolyExpr sib = constant(0);
    for (std::size_t i = 0; i < args.size(); ++i)
      if (!t.functional[i]) sib = eadd(sib, args[i]->num);
    PolyExpr out = constant(c.at(0));
    int choice = 0;
    for (std::size_t i = 0; i < args.size(); ++i) {
      int k = c.at(i + 1);
      if (k == 0) {
        if (t.functional[i]) ++choice;
        continue;
      }
      PolyExpr a;
      if (!t.functional[i]) {
        a = args[i]->num;
      } else {
        bool use_sib = c.at(1 + t.arity + choice++) != 0;
        V cur = args[i];
        while (!is_sort(cur->type)) {
          Type d = cur->type->dom;
          cur = cur->fn(is_sort(d) ? base(use_sib ? sib : constant(0), d) : zero(d));
        }
        a = cur->num;
      }
      out = eadd(out, escale(a, k));
    }
    return out;
  }

  V symbol_value(const Symbol& f) {
    if (f.mark == Mark::bottom) return zero(f.type);
    const Template& t = scheme.symbols.at(ho::show(f));
    const std::vector<int>& c = asg.at(ho::show(f));
    return collect(t, c, f.type, {});
  }

  V collect(const Template& t, const std::vector<int>& c, const Type& ty, std::vector<V> got) {
    if (static_cast<int>(got.size()) == t.arity) return base(template_value(t, c, got), ty);
    Type cod = ty->cod;
    return closure(ty, [this, &t, &c, cod, got](const V& x) {
      auto more = got;
      more.push_back(x);
      return collect(t, c, cod, std::move(more));
    });
  }

  V eval(const Term& s, const std::vector<V>& env) {
    switch (s->kind) {
    case Kind::var: return symbolic("V:" + s->name, s->type, {});
    case Kind::bound: return env.at(env.size() - 1 - static_cast<std::size_t>(s->index));
    case Kind::fun: return symbol_value(s->sym);
    case Kind::meta: {
      V v = symbolic("M:" + s->mv.name, s->mv.type(), {});
      for (const auto& a : s->args) v = v->fn(eval(a, env));
      return v;
    }
    case Kind::abs: {
      Term body = s->left;
      return closure(s->type, [this, body, env](const V& x) {
        auto inner = env;
        inner.push_back(x);
        return eval(body, inner);
      });
    }
    case Kind::app: {
      Term h = head(s);
      auto args = spine_args(s);
      V v = eval(h, env);
      bool direct = h->kind == Kind::fun;
      for (const auto& a : args) v = direct ? v->fn(eval(a, env)) : app_at(v, eval(a, env));
      return v;
    }
    }
    throw std::logic_error("eval: unknown term kind");
  }

  std::pair<PolyExpr, PolyExpr> both(const Term& l, const Term& r) {
    V a = eval(l, {});
    V b = eval(r, {});
    while (!is_sort(a->type) && !is_sort(b->type)) {
      V p = symbolic("$c" + std::to_string(params++), a->type->dom, {});
      a = a->fn(p);
      b = b->fn(p);
    }
    if (!is_sort(a->type) || !is_sort(b->type)) throw TooBig();
    return {a->num, b->num};
  }

  bool geq_expr(const PolyExpr& l, const PolyExpr& r, bool strict, int fuel) {
    for (const auto& q : r.alts) {
      bool ok = false;
      for (const auto& p : l.alts)
        if (poly_ge(p, q, strict, fuel)) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
    return true;
  }

  static bool nonneg(const Poly& p, const Poly& q, bool strict) {
    for (const auto& [m, c] : q.terms)
      if (coeff(p, m) < c) return false;
    return !strict || coeff(p, Monomial{}) > coeff(q, Monomial{});
  }

  // F(a..) >= F(b..) when every a_i >= b_i (weak monotonicity)
  bool atom_dominates(AtomId big, AtomId small, int fuel) {
    const auto& A = atoms[static_cast<std::size_t>(big)];
    const auto& B = atoms[static_cast<std::size_t>(small)];
    if (A.name != B.name || A.args.size() != B.args.size() || fuel <= 0) return false;
    for (std::size_t i = 0; i < A.args.size(); ++i)
      if (!geq_expr(A.args[i], B.args[i], false, fuel - 1)) return false;
    return true;
  }

  bool poly_ge(const Poly& p, const Poly& q, bool strict, int fuel) {
    if (nonneg(p, q, strict)) return true;
    std::set<AtomId> in_p, in_q;
    for (const auto& [m, c] : p.terms)
      for (const auto& [x, e] : m) in_p.insert(x);
    for (const auto& [m, c] : q.terms)
      for (const auto& [x, e] : m) in_q.insert(x);
    std::map<AtomId, AtomId> lift;
    for (AtomId a : in_q) {
      if (in_p.count(a)) continue;
      for (AtomId b : in_p)
        if (atom_dominates(b, a, fuel)) {
          lift[a] = b;
          break;
        }
    }
    if (lift.empty()) return false;
    Poly q2;
    for (const auto& [m, c] : q.terms) {
      Monomial m2;
      for (const auto& [x, e] : m) {
        auto it = lift.find(x);
        m2[it == lift.end() ? x : it->second] += e;
      }
      add_term(q2, m2, c);
    }
    return nonneg(p, q2, strict);
  }

  std::string atom_name(AtomId a) const {
    const auto& info = atoms[static_cast<std::size_t>(a)];
    std::string n = info.name;
    if (n.rfind("M:", 0) == 0 || n.rfind("V:", 0) == 0) n = n.substr(2);
    if (info.args.empty()) return n;
    n += "(";
    for (std::size_t i = 0; i < info.args.size(); ++i) n += (i ? "," : "") + show(info.args[i]);
    return n + ")";
  }

  std::string show(const Poly& p) const {
    if (p.terms.empty()) return "0";
    std::string out;
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
      const auto& [m, c] = *it;
      std::string t;
      for (const auto& [x, e] : m) {
        if (!t.empty()) t += "*";
        t += atom_name(x);
        if (e > 1) t += "^" + std::to_string(e);
      }
      if (t.empty())
        t = std::to_string(c);
      else if (c != 1)
        t = std::to_string(c) + "*" + t;
      out += (out.empty() ? "" : " + ") + t;
    }
    return out;
  }

  std::string show(const PolyExpr& p) const {
    if (p.alts.size() == 1) return show(p.alts[0]);
    std::string out = "max(";
    for (std::size_t i = 0; i < p.alts.size(); ++i) out += (i ? ", " : "") + show(p.alts[i]);
    return out + ")";
  }

  Coeff evaluate(const PolyExpr& p, const Valuation& val) const {
    Coeff best = 0;
    for (const auto& q : p.alts) {
      Coeff sum = 0;
      for (const auto& [m, c] : q.terms) {
        Coeff prod = c;
        for (const auto& [x, e] : m) {
          const auto& info = atoms[static_cast<std::size_t>(x)];
          std::vector<Coeff> args;
          for (const auto& a : info.args) args.push_back(evaluate(a, val));
          std::string n = info.name;
          if (n.rfind("M:", 0) == 0 || n.rfind("V:", 0) == 0) n = n.substr(2);
          Coeff v = val(n, args);
          for (int k = 0; k < e; ++k) prod *= v;
        }
        sum += prod;
      }
      best = std::max(best, sum);
    }
    return best;
  }
};

Interpretation::Interpretation(const Scheme& scheme, const Assignment& a)
    : impl_(std::make_unique<Impl>(scheme, a)) {}
Interpretation::~Interpretation() = default;

PolyExpr Interpretation::interpret(const Term& s) {
  auto v = impl_->eval(s, {});
  while (!is_sort(v->type)) v = v->fn(impl_->symbolic("$c" + std::to_string(impl_->params++), v->type->dom, {}));
  return v->num;
}

std::string Interpretation::show(const PolyExpr& p) const { return impl_->show(p); }

bool Interpretation::geq(const Term& l, const Term& r) {
  try {
    auto [a, b] = impl_->both(l, r);
    return impl_->geq_expr(a, b, false, 4);
  } catch (const TooBig&) {
    return false;
  }
}

bool Interpretation::gt(const Term& l, const Term& r) {
  try {
    auto [a, b] = impl_->both(l, r);
    return impl_->geq_expr(a, b, true, 4);
  } catch (const TooBig&) {
    return false;
  }
}

bool Interpretation::holds(const Requirement& q) {
  return q.rel == Relation::strict ? gt(q.lhs, q.rhs) : geq(q.lhs, q.rhs);
}

Coeff Interpretation::evaluate(const PolyExpr& p, const Valuation& atom) const { return impl_->evaluate(p, atom); }

// ------------------------------------------------------------ search

namespace {

struct Search {
  const std::vector<Requirement>& reqs;
  const Scheme& scheme;
  int bound;
  std::size_t max_nodes;
  std::vector<std::string> order;
  std::vector<std::vector<std::size_t>> due; // requirements completed at each level
  std::vector<std::size_t> optional;
  Assignment asg;
  SolveStats stats;

  bool check(std::size_t i) {
    Interpretation J(scheme, asg);
    const auto& q = reqs[i];
    return q.optional_strict ? J.geq(q.lhs, q.rhs) : J.holds(q);
  }

  bool leaf() {
    if (optional.empty()) return true;
    Interpretation J(scheme, asg);
    for (auto i : optional)
      if (J.gt(reqs[i].lhs, reqs[i].rhs)) return true;
    return false;
  }

  bool next(std::vector<int>& v, const Template& t) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) {
      int top = i <= t.arity ? bound : 1;
      if (v[static_cast<std::size_t>(i)] < top) {
        ++v[static_cast<std::size_t>(i)];
        return true;
      }
      v[static_cast<std::size_t>(i)] = 0;
    }
    return false;
  }

  bool dfs(std::size_t level) {
    if (level == order.size()) return leaf();
    const std::string& key = order[level];
    const Template& t = scheme.symbols.at(key);
    std::vector<int> v(static_cast<std::size_t>(t.size()), 0);
    do {
      if (++stats.nodes > max_nodes) {
        stats.exhausted_budget = true;
        return false;
      }
      asg[key] = v;
      bool ok = true;
      for (auto i : due[level])
        if (!check(i)) {
          ok = false;
          break;
        }
      if (ok && dfs(level + 1)) return true;
      if (stats.exhausted_budget) return false;
    } while (next(v, t));
    asg.erase(key);
    return false;
  }
};

} // namespace

std::optional<Assignment> solve(const std::vector<Requirement>& reqs, const Scheme& scheme, int bound,
                                SolveStats* stats, std::size_t max_nodes) {
  Search s{reqs, scheme, bound, max_nodes, {}, {}, {}, {}, {}};
  std::vector<std::set<std::string>> need;
  for (const auto& q : reqs) {
    auto a = symbol_keys(q.lhs);
    auto b = symbol_keys(q.rhs);
    a.insert(b.begin(), b.end());
    need.push_back(std::move(a));
  }
  // greedy order: close the requirement with the fewest open symbols first
  std::set<std::string> placed;
  std::vector<bool> done(reqs.size(), false);
  for (;;) {
    int best = -1;
    std::size_t best_open = 0;
    for (std::size_t i = 0; i < reqs.size(); ++i) {
      if (done[i]) continue;
      std::size_t open = 0;
      for (const auto& k : need[i]) open += placed.count(k) ? 0 : 1;
      if (best < 0 || open < best_open) {
        best = static_cast<int>(i);
        best_open = open;
      }
    }
    if (best < 0) break;
    done[static_cast<std::size_t>(best)] = true;
    for (const auto& k : need[static_cast<std::size_t>(best)])
      if (placed.insert(k).second) s.order.push_back(k);
  }
  for (const auto& [k, t] : scheme.symbols)
    if (!placed.count(k)) s.asg[k] = std::vector<int>(static_cast<std::size_t>(t.size()), 0);

  s.due.assign(s.order.size(), {});
  std::vector<std::size_t> immediate;
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    if (reqs[i].optional_strict) s.optional.push_back(i);
    int last = -1;
    for (std::size_t l = 0; l < s.order.size(); ++l)
      if (need[i].count(s.order[l])) last = static_cast<int>(l);
    if (last < 0)
      immediate.push_back(i);
    else
      s.due[static_cast<std::size_t>(last)].push_back(i);
  }
  bool ok = true;
  for (auto i : immediate)
    if (!s.check(i)) ok = false;
  ok = ok && s.dfs(0);
  if (stats) *stats = s.stats;
  if (!ok) return std::nullopt;
  return s.asg;
}

Triple triple_of(const Assignment& a, const Scheme& scheme) {
  auto sc = std::make_shared<const Scheme>(scheme);
  auto as = std::make_shared<const Assignment>(a);
  auto geq = [sc, as](const Term& l, const Term& r) {
    Interpretation J(*sc, *as);
    return J.geq(l, r);
  };
  auto gt = [sc, as](const Term& l, const Term& r) {
    Interpretation J(*sc, *as);
    return J.gt(l, r);
  };
  return Triple{geq, geq, gt};
}

std::string show(const Assignment& a, const Scheme& scheme) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, t] : scheme.symbols) {
    auto it = a.find(k);
    if (it == a.end()) continue;
    const auto& c = it->second;
    std::vector<std::string> xs;
    for (int i = 0; i < t.arity; ++i) xs.push_back((t.functional[static_cast<std::size_t>(i)] ? "F" : "x") + std::to_string(i + 1));
    std::string sib;
    for (int i = 0; i < t.arity; ++i)
      if (!t.functional[static_cast<std::size_t>(i)]) sib += (sib.empty() ? "" : "+") + xs[static_cast<std::size_t>(i)];
    if (sib.empty()) sib = "0";
    std::string body;
    int choice = 0;
    for (int i = 0; i < t.arity; ++i) {
      int ci = c[static_cast<std::size_t>(i + 1)];
      std::string atom = xs[static_cast<std::size_t>(i)];
      if (t.functional[static_cast<std::size_t>(i)])
        atom += "(" + std::string(c[static_cast<std::size_t>(1 + t.arity + choice++)] ? sib : "0") + ")";
      if (ci == 0) continue;
      body += (body.empty() ? "" : " + ") + (ci == 1 ? atom : std::to_string(ci) + "*" + atom);
    }
    if (c[0] != 0 || body.empty()) body += (body.empty() ? "" : " + ") + std::to_string(c[0]);
    out << (first ? "" : "; ") << "J(" << k << ")";
    if (t.arity > 0) {
      out << "(";
      for (int i = 0; i < t.arity; ++i) out << (i ? "," : "") << xs[static_cast<std::size_t>(i)];
      out << ")";
    }
    out << " = " << body;
    first = false;
  }
  return out.str();
}

} // namespace ho::poly
