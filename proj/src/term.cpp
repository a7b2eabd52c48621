#include "ho/term.hpp"

#include <algorithm>
#include <sstream>

namespace ho {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

} // namespace

// ---------------------------------------------------------------- types

Type sort_type(const std::string& name) {
  if (name.empty()) throw TypeError("empty sort name");
  auto n = std::make_shared<TypeNode>();
  n->sort = name;
  n->hash = std::hash<std::string>{}(name);
  return n;
}

Type arrow(Type dom, Type cod) {
  auto n = std::make_shared<TypeNode>();
  n->hash = mix(mix(0x51ed27, dom->hash), cod->hash);
  n->dom = std::move(dom);
  n->cod = std::move(cod);
  return n;
}

Type arrows(const std::vector<Type>& args, Type result) {
  for (auto it = args.rbegin(); it != args.rend(); ++it) result = arrow(*it, result);
  return result;
}

bool type_equal(const Type& a, const Type& b) { return type_compare(a, b) == 0; }

int type_compare(const Type& a, const Type& b) {
  if (a.get() == b.get()) return 0;
  if (is_sort(a) != is_sort(b)) return is_sort(a) ? -1 : 1;
  if (is_sort(a)) return a->sort.compare(b->sort) < 0 ? -1 : (a->sort == b->sort ? 0 : 1);
  if (int c = type_compare(a->dom, b->dom)) return c;
  return type_compare(a->cod, b->cod);
}

int max_arity(const Type& t) {
  int m = 0;
  for (const TypeNode* p = t.get(); p->sort.empty(); p = p->cod.get()) ++m;
  return m;
}

std::vector<Type> arg_types(const Type& t) {
  std::vector<Type> out;
  Type cur = t;
  while (!is_sort(cur)) {
    out.push_back(cur->dom);
    cur = cur->cod;
  }
  return out;
}

const std::string& target_sort(const Type& t) {
  const TypeNode* p = t.get();
  while (p->sort.empty()) p = p->cod.get();
  return p->sort;
}

Type drop_args(const Type& t, int n) {
  Type cur = t;
  for (int i = 0; i < n; ++i) {
    if (is_sort(cur)) throw TypeError("too many arguments for type " + show(t));
    cur = cur->cod;
  }
  return cur;
}

std::string show(const Type& t) {
  if (is_sort(t)) return t->sort;
  std::string d = show(t->dom);
  if (!is_sort(t->dom)) d = "(" + d + ")";
  return d + " -> " + show(t->cod);
}

void collect_sorts(const Type& t, std::set<std::string>& out) {
  if (is_sort(t)) {
    out.insert(t->sort);
    return;
  }
  collect_sorts(t->dom, out);
  collect_sorts(t->cod, out);
}

// -------------------------------------------------------------- symbols

bool Symbol::operator==(const Symbol& o) const { return mark == o.mark && name == o.name; }

bool Symbol::operator<(const Symbol& o) const {
  if (name != o.name) return name < o.name;
  return mark < o.mark;
}

Symbol plain_symbol(std::string name, Type type) { return Symbol{std::move(name), std::move(type), Mark::none}; }

Symbol sharp(const Symbol& f) { return Symbol{f.name, f.type, Mark::sharp}; }
Symbol tagged(const Symbol& f) { return Symbol{f.name, f.type, Mark::tag}; }
Symbol unmarked(const Symbol& f) {
  if (f.mark == Mark::bottom) return f;
  return Symbol{f.name, f.type, Mark::none};
}
Symbol bottom(Type type) {
  std::string n = "_|_<" + show(type) + ">";
  return Symbol{n, std::move(type), Mark::bottom};
}

std::string show(const Symbol& f) {
  switch (f.mark) {
  case Mark::sharp: return f.name + "#";
  case Mark::tag: return f.name + "-";
  default: return f.name;
  }
}

bool is_reserved_name(const std::string& name) { return !name.empty() && name[0] == '_'; }

bool MetaVar::operator==(const MetaVar& o) const {
  if (name != o.name || args.size() != o.args.size()) return false;
  for (std::size_t i = 0; i < args.size(); ++i)
    if (!type_equal(args[i], o.args[i])) return false;
  return type_equal(result, o.result);
}

// ---------------------------------------------------------------- terms

namespace {

std::shared_ptr<Node> node(Kind k, Type ty) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->type = std::move(ty);
  return n;
}

} // namespace

Term var(const std::string& name, Type type) {
  auto n = node(Kind::var, std::move(type));
  n->name = name;
  n->hash = mix(1, std::hash<std::string>{}(name));
  return n;
}

Term bvar(int index, Type type) {
  if (index < 0) throw TypeError("negative de Bruijn index");
  auto n = node(Kind::bound, std::move(type));
  n->index = index;
  n->hash = mix(2, static_cast<std::size_t>(index));
  n->max_loose = index;
  return n;
}

Term fun(const Symbol& f) {
  auto n = node(Kind::fun, f.type);
  n->sym = f;
  n->hash = mix(mix(3, std::hash<std::string>{}(f.name)), static_cast<std::size_t>(f.mark));
  return n;
}

Term app(Term f, Term x) {
  if (is_sort(f->type)) throw TypeError("applying a term of base type: " + show(f));
  if (!type_equal(f->type->dom, x->type))
    throw TypeError("argument type mismatch in " + show(f) + " applied to " + show(x) + ": expected " +
                    show(f->type->dom) + ", got " + show(x->type));
  auto n = node(Kind::app, f->type->cod);
  n->hash = mix(mix(4, f->hash), x->hash);
  n->size = f->size + x->size;
  n->max_loose = std::max(f->max_loose, x->max_loose);
  n->has_meta = f->has_meta || x->has_meta;
  n->left = std::move(f);
  n->right = std::move(x);
  return n;
}

Term apps(Term f, const std::vector<Term>& xs) {
  for (const auto& x : xs) f = app(f, x);
  return f;
}

Term meta(const MetaVar& z, const std::vector<Term>& args) {
  if (static_cast<int>(args.size()) < z.arity())
    throw TypeError("meta-variable " + z.name + " needs at least " + std::to_string(z.arity()) + " arguments");
  Type res = z.result;
  for (std::size_t i = 0; i < args.size(); ++i) {
    Type want;
    if (static_cast<int>(i) < z.arity()) {
      want = z.args[i];
    } else {
      if (is_sort(res)) throw TypeError("too many arguments for meta-variable " + z.name);
      want = res->dom;
      res = res->cod;
    }
    if (!type_equal(want, args[i]->type))
      throw TypeError("meta-variable " + z.name + " argument " + std::to_string(i + 1) + " has type " +
                      show(args[i]->type) + ", expected " + show(want));
  }
  auto n = node(Kind::meta, res);
  n->mv = z;
  n->args = args;
  std::size_t h = mix(5, std::hash<std::string>{}(z.name));
  for (const auto& a : args) {
    h = mix(h, a->hash);
    n->size += a->size;
    n->max_loose = std::max(n->max_loose, a->max_loose);
  }
  n->hash = h;
  n->has_meta = true;
  return n;
}

Term abs_raw(const std::string& hint, Type binder, Term body) {
  auto n = node(Kind::abs, arrow(binder, body->type));
  n->name = hint;
  n->hash = mix(mix(6, binder->hash), body->hash);
  n->size = body->size + 1;
  n->max_loose = body->max_loose >= 1 ? body->max_loose - 1 : -1;
  n->has_meta = body->has_meta;
  n->left = std::move(body);
  return n;
}

Term lam(const Term& x, const Term& body) {
  if (x->kind != Kind::var) throw TypeError("lam expects a variable");
  return abs_raw(x->name, x->type, abstract_var(body, x->name));
}

Term lam(const std::string& name, Type type, const Term& body) { return lam(var(name, std::move(type)), body); }

int compare(const Term& a, const Term& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
  case Kind::var:
    if (a->name != b->name) return a->name < b->name ? -1 : 1;
    return type_compare(a->type, b->type);
  case Kind::bound:
    if (a->index != b->index) return a->index < b->index ? -1 : 1;
    return type_compare(a->type, b->type);
  case Kind::fun:
    if (a->sym == b->sym) return 0;
    return a->sym < b->sym ? -1 : 1;
  case Kind::app:
    if (int c = compare(a->left, b->left)) return c;
    return compare(a->right, b->right);
  case Kind::abs:
    if (int c = type_compare(a->type->dom, b->type->dom)) return c;
    return compare(a->left, b->left);
  case Kind::meta:
    if (a->mv.name != b->mv.name) return a->mv.name < b->mv.name ? -1 : 1;
    if (a->args.size() != b->args.size()) return a->args.size() < b->args.size() ? -1 : 1;
    for (std::size_t i = 0; i < a->args.size(); ++i)
      if (int c = compare(a->args[i], b->args[i])) return c;
    return 0;
  }
  return 0;
}

bool alpha_equal(const Term& a, const Term& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash) return false;
  return compare(a, b) == 0;
}

// ---- de Bruijn plumbing

Term shift(const Term& t, int d, int cutoff) {
  if (d == 0 || t->max_loose < cutoff) return t;
  switch (t->kind) {
  case Kind::bound: return t->index >= cutoff ? bvar(t->index + d, t->type) : t;
  case Kind::app: return app(shift(t->left, d, cutoff), shift(t->right, d, cutoff));
  case Kind::abs: return abs_raw(t->name, t->type->dom, shift(t->left, d, cutoff + 1));
  case Kind::meta: {
    std::vector<Term> as;
    for (const auto& a : t->args) as.push_back(shift(a, d, cutoff));
    return meta(t->mv, as);
  }
  default: return t;
  }
}

namespace {

Term subst_at(const Term& t, int j, const Term& u, int depth) {
  if (t->max_loose < j + depth) return t;
  switch (t->kind) {
  case Kind::bound:
    if (t->index == j + depth) {
      if (!type_equal(t->type, u->type)) throw TypeError("substitution changes type");
      return shift(u, depth);
    }
    return t;
  case Kind::app: return app(subst_at(t->left, j, u, depth), subst_at(t->right, j, u, depth));
  case Kind::abs: return abs_raw(t->name, t->type->dom, subst_at(t->left, j, u, depth + 1));
  case Kind::meta: {
    std::vector<Term> as;
    for (const auto& a : t->args) as.push_back(subst_at(a, j, u, depth));
    return meta(t->mv, as);
  }
  default: return t;
  }
}

Term replace_var(const Term& t, const std::string& name, int depth) {
  switch (t->kind) {
  case Kind::var: return t->name == name ? bvar(depth, t->type) : t;
  case Kind::app: {
    Term l = replace_var(t->left, name, depth), r = replace_var(t->right, name, depth);
    if (l == t->left && r == t->right) return t;
    return app(l, r);
  }
  case Kind::abs: {
    Term b = replace_var(t->left, name, depth + 1);
    return b == t->left ? t : abs_raw(t->name, t->type->dom, b);
  }
  case Kind::meta: {
    std::vector<Term> as;
    bool changed = false;
    for (const auto& a : t->args) {
      as.push_back(replace_var(a, name, depth));
      changed = changed || as.back() != a;
    }
    return changed ? meta(t->mv, as) : t;
  }
  default: return t;
  }
}

} // namespace

Term subst_index(const Term& t, int j, const Term& u) { return subst_at(t, j, u, 0); }

Term beta(const Term& abstraction, const Term& u) {
  if (abstraction->kind != Kind::abs) throw TypeError("beta on a non-abstraction");
  return shift(subst_index(abstraction->left, 0, shift(u, 1)), -1);
}

Term abstract_var(const Term& t, const std::string& name) { return replace_var(shift(t, 1), name, 0); }

// ---- spine views

Term head(const Term& s) {
  Term cur = s;
  while (cur->kind == Kind::app) cur = cur->left;
  return cur;
}

std::vector<Term> spine_args(const Term& s) {
  std::vector<Term> out;
  Term cur = s;
  while (cur->kind == Kind::app) {
    out.push_back(cur->right);
    cur = cur->left;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// ---- free (meta-)variables

void free_vars_into(const Term& t, VarTypes& out) {
  switch (t->kind) {
  case Kind::var: out.emplace(t->name, t->type); break;
  case Kind::app:
    free_vars_into(t->left, out);
    free_vars_into(t->right, out);
    break;
  case Kind::abs: free_vars_into(t->left, out); break;
  case Kind::meta:
    for (const auto& a : t->args) free_vars_into(a, out);
    break;
  default: break;
  }
}

VarTypes free_vars(const Term& t) {
  VarTypes out;
  free_vars_into(t, out);
  return out;
}

void free_metas_into(const Term& t, std::map<std::string, MetaVar>& out) {
  if (!t->has_meta) return;
  switch (t->kind) {
  case Kind::app:
    free_metas_into(t->left, out);
    free_metas_into(t->right, out);
    break;
  case Kind::abs: free_metas_into(t->left, out); break;
  case Kind::meta:
    out.emplace(t->mv.name, t->mv);
    for (const auto& a : t->args) free_metas_into(a, out);
    break;
  default: break;
  }
}

std::map<std::string, MetaVar> free_metas(const Term& t) {
  std::map<std::string, MetaVar> out;
  free_metas_into(t, out);
  return out;
}

void symbols_into(const Term& t, std::map<std::string, Symbol>& out) {
  switch (t->kind) {
  case Kind::fun:
    if (t->sym.mark != Mark::bottom) out.emplace(t->sym.name, unmarked(t->sym));
    break;
  case Kind::app:
    symbols_into(t->left, out);
    symbols_into(t->right, out);
    break;
  case Kind::abs: symbols_into(t->left, out); break;
  case Kind::meta:
    for (const auto& a : t->args) symbols_into(a, out);
    break;
  default: break;
  }
}

std::string fresh_name(const std::string& hint, const std::set<std::string>& used) {
  std::string base = hint.empty() ? "x" : hint;
  if (!used.count(base)) return base;
  while (!base.empty() && std::isdigit(static_cast<unsigned char>(base.back()))) base.pop_back();
  if (base.empty()) base = "x";
  for (int i = 1;; ++i) {
    std::string c = base + std::to_string(i);
    if (!used.count(c)) return c;
  }
}

namespace {

void used_into(const Term& t, std::set<std::string>& out) {
  switch (t->kind) {
  case Kind::var: out.insert(t->name); break;
  case Kind::fun: out.insert(t->sym.name); break;
  case Kind::app:
    used_into(t->left, out);
    used_into(t->right, out);
    break;
  case Kind::abs: used_into(t->left, out); break;
  case Kind::meta:
    out.insert(t->mv.name);
    for (const auto& a : t->args) used_into(a, out);
    break;
  default: break;
  }
}

} // namespace

std::set<std::string> used_names(const Term& t) {
  std::set<std::string> out;
  used_into(t, out);
  return out;
}

std::pair<Term, Term> open_abs(const Term& abstraction, std::set<std::string>& used) {
  std::string n = fresh_name(abstraction->name, used);
  used.insert(n);
  Term x = var(n, abstraction->type->dom);
  return {x, beta(abstraction, x)};
}

// ---- typing

Type type_of(const Term& s, const VarTypes& env) {
  VarTypes fv = free_vars(s);
  for (const auto& [n, ty] : fv) {
    auto it = env.find(n);
    if (it == env.end()) throw TypeError("unbound variable " + n);
    if (!type_equal(it->second, ty)) throw TypeError("variable " + n + " used at type " + show(ty));
  }
  return s->type;
}

// ---- pattern predicates

namespace {

bool is_variable(const Term& t) { return t->kind == Kind::var || t->kind == Kind::bound; }

bool pattern_rec(const Term& l) {
  switch (l->kind) {
  case Kind::meta: {
    if (static_cast<int>(l->args.size()) != l->mv.arity()) return false;
    for (std::size_t i = 0; i < l->args.size(); ++i) {
      if (!is_variable(l->args[i])) return false;
      for (std::size_t j = 0; j < i; ++j)
        if (alpha_equal(l->args[i], l->args[j])) return false;
    }
    return true;
  }
  case Kind::abs: return pattern_rec(l->left);
  default: {
    Term h = head(l);
    if (h->kind != Kind::fun && !is_variable(h)) return false;
    for (const auto& a : spine_args(l))
      if (!pattern_rec(a)) return false;
    return true;
  }
  }
}

bool fully_extended_rec(const Term& l, int depth) {
  switch (l->kind) {
  case Kind::meta:
    for (int i = 0; i < depth; ++i) {
      bool found = false;
      for (const auto& a : l->args)
        if (a->kind == Kind::bound && a->index == i) found = true;
      if (!found) return false;
    }
    return true;
  case Kind::abs: return fully_extended_rec(l->left, depth + 1);
  case Kind::app: return fully_extended_rec(l->left, depth) && fully_extended_rec(l->right, depth);
  default: return true;
  }
}

void count_metas(const Term& t, std::map<std::string, int>& cnt) {
  if (!t->has_meta) return;
  switch (t->kind) {
  case Kind::meta:
    ++cnt[t->mv.name];
    for (const auto& a : t->args) count_metas(a, cnt);
    break;
  case Kind::abs: count_metas(t->left, cnt); break;
  case Kind::app:
    count_metas(t->left, cnt);
    count_metas(t->right, cnt);
    break;
  default: break;
  }
}

} // namespace

bool is_pattern(const Term& l) { return pattern_rec(l); }
bool is_fully_extended(const Term& l) { return fully_extended_rec(l, 0); }

bool is_linear(const Term& l) {
  std::map<std::string, int> cnt;
  count_metas(l, cnt);
  for (const auto& [n, c] : cnt)
    if (c > 1) return false;
  return true;
}

namespace {

void subterms_rec(const Term& s, std::set<std::string>& used, std::vector<Term>& out) {
  out.push_back(s);
  switch (s->kind) {
  case Kind::abs: {
    auto [x, body] = open_abs(s, used);
    subterms_rec(body, used, out);
    break;
  }
  case Kind::app:
    subterms_rec(s->left, used, out);
    subterms_rec(s->right, used, out);
    break;
  case Kind::meta:
    for (const auto& a : s->args) subterms_rec(a, used, out);
    break;
  default: break;
  }
}

} // namespace

std::vector<Term> subterms(const Term& s) {
  std::set<std::string> used = used_names(s);
  std::vector<Term> out;
  subterms_rec(s, used, out);
  return out;
}

bool subterm_eq(const Term& s, const Term& t) {
  for (const auto& u : subterms(s))
    if (alpha_equal(u, t)) return true;
  return false;
}

bool strict_subterm(const Term& s, const Term& t) {
  auto all = subterms(s);
  for (std::size_t i = 1; i < all.size(); ++i)
    if (alpha_equal(all[i], t)) return true;
  return false;
}

// ---- arities

int arity_of(const ArityMap& ar, const Symbol& f) {
  if (f.mark == Mark::bottom) return 0;
  auto it = ar.find(f.name);
  return it == ar.end() ? 0 : it->second;
}

namespace {

template <class F>
void walk_spines(const Term& t, int nargs, const F& visit) {
  switch (t->kind) {
  case Kind::app:
    walk_spines(t->left, nargs + 1, visit);
    walk_spines(t->right, 0, visit);
    break;
  case Kind::fun: visit(t->sym, nargs); break;
  case Kind::abs: walk_spines(t->left, 0, visit); break;
  case Kind::meta:
    for (const auto& a : t->args) walk_spines(a, 0, visit);
    break;
  default: break;
  }
}

} // namespace

ArityMap infer_max_arity(const std::vector<Term>& terms, const std::map<std::string, Symbol>& sig) {
  ArityMap ar;
  for (const auto& [n, f] : sig) ar[n] = max_arity(f.type);
  for (const auto& t : terms) {
    walk_spines(t, 0, [&](const Symbol& f, int n) {
      if (f.mark == Mark::bottom) return;
      auto it = ar.find(f.name);
      if (it == ar.end()) it = ar.emplace(f.name, max_arity(f.type)).first;
      it->second = std::min(it->second, n);
    });
  }
  return ar;
}

bool respects_arity(const Term& s, const ArityMap& ar) {
  bool ok = true;
  walk_spines(s, 0, [&](const Symbol& f, int n) {
    if (n < arity_of(ar, f)) ok = false;
  });
  return ok;
}

namespace {

Term inc_rec(const Term& s, const ArityMap& ar, std::set<std::string>& used) {
  Term h = head(s);
  std::vector<Term> args;
  for (const auto& a : spine_args(s)) args.push_back(inc_rec(a, ar, used));
  switch (h->kind) {
  case Kind::fun: {
    int k = arity_of(ar, h->sym);
    int n = static_cast<int>(args.size());
    if (n >= k) return apps(h, args);
    std::vector<Term> xs;
    Type ty = drop_args(h->type, n);
    for (int i = n; i < k; ++i) {
      std::string nm = fresh_name("x" + std::to_string(i + 1), used);
      used.insert(nm);
      xs.push_back(var(nm, ty->dom));
      ty = ty->cod;
    }
    Term body = apps(apps(h, args), xs);
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = lam(*it, body);
    return body;
  }
  case Kind::abs: return apps(abs_raw(h->name, h->type->dom, inc_rec(h->left, ar, used)), args);
  case Kind::meta: {
    std::vector<Term> margs;
    for (const auto& a : h->args) margs.push_back(inc_rec(a, ar, used));
    return apps(meta(h->mv, margs), args);
  }
  default: return apps(h, args);
  }
}

} // namespace

Term inc_ar(const Term& s, const ArityMap& ar) {
  std::set<std::string> used = used_names(s);
  return inc_rec(s, ar, used);
}

// ---- renaming equality

namespace {

struct Renaming {
  std::map<std::string, std::string> fwd_m, bwd_m, fwd_v, bwd_v;

  static bool bind(std::map<std::string, std::string>& f, std::map<std::string, std::string>& b,
                   const std::string& x, const std::string& y) {
    auto i = f.find(x);
    auto j = b.find(y);
    if (i == f.end() && j == b.end()) {
      f.emplace(x, y);
      b.emplace(y, x);
      return true;
    }
    return i != f.end() && j != b.end() && i->second == y && j->second == x;
  }

  bool eq(const Term& a, const Term& b) {
    if (a->kind != b->kind || !type_equal(a->type, b->type)) return false;
    switch (a->kind) {
    case Kind::var: return bind(fwd_v, bwd_v, a->name, b->name);
    case Kind::bound: return a->index == b->index;
    case Kind::fun: return a->sym == b->sym;
    case Kind::app: return eq(a->left, b->left) && eq(a->right, b->right);
    case Kind::abs: return eq(a->left, b->left);
    case Kind::meta:
      if (a->args.size() != b->args.size() || !(a->mv.arity() == b->mv.arity())) return false;
      if (!bind(fwd_m, bwd_m, a->mv.name, b->mv.name)) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!eq(a->args[i], b->args[i])) return false;
      return true;
    }
    return false;
  }
};

} // namespace

std::optional<std::map<std::string, std::string>> meta_renaming(const std::vector<Term>& as,
                                                                 const std::vector<Term>& bs) {
  if (as.size() != bs.size()) return std::nullopt;
  Renaming r;
  for (std::size_t i = 0; i < as.size(); ++i)
    if (!r.eq(as[i], bs[i])) return std::nullopt;
  return r.fwd_m;
}

bool equal_modulo_renaming(const std::vector<Term>& as, const std::vector<Term>& bs) {
  return meta_renaming(as, bs).has_value();
}

// ---- printing

namespace {

void print(const Term& t, std::vector<std::string>& names, std::set<std::string>& used, std::ostringstream& os,
           bool argpos);

void print_meta(const Term& t, std::vector<std::string>& names, std::set<std::string>& used,
                std::ostringstream& os) {
  os << t->mv.name;
  int k = t->mv.arity();
  int e = static_cast<int>(t->args.size());
  if (e == 0) return;
  os << (e == k ? "[" : "<");
  for (int i = 0; i < e; ++i) {
    if (i) os << ",";
    print(t->args[i], names, used, os, false);
  }
  os << (e == k ? "]" : ">");
}

void print(const Term& t, std::vector<std::string>& names, std::set<std::string>& used, std::ostringstream& os,
           bool argpos) {
  switch (t->kind) {
  case Kind::var: os << t->name; break;
  case Kind::bound:
    if (t->index < static_cast<int>(names.size())) os << names[names.size() - 1 - t->index];
    else os << "#" << t->index;
    break;
  case Kind::fun: os << show(t->sym); break;
  case Kind::meta: print_meta(t, names, used, os); break;
  case Kind::abs: {
    if (argpos) os << "(";
    std::string n = fresh_name(t->name, used);
    used.insert(n);
    names.push_back(n);
    os << "/\\" << n << ".";
    print(t->left, names, used, os, false);
    names.pop_back();
    used.erase(n);
    if (argpos) os << ")";
    break;
  }
  case Kind::app: {
    if (argpos) os << "(";
    Term h = head(t);
    if (h->kind == Kind::abs) {
      os << "(";
      print(h, names, used, os, false);
      os << ")";
    } else {
      print(h, names, used, os, false);
    }
    for (const auto& a : spine_args(t)) {
      os << " ";
      print(a, names, used, os, true);
    }
    if (argpos) os << ")";
    break;
  }
  }
}

} // namespace

std::string show(const Term& t) {
  std::ostringstream os;
  std::vector<std::string> names;
  std::set<std::string> used = used_names(t);
  print(t, names, used, os, false);
  return os.str();
}

} // namespace ho
