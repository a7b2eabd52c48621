#include "ho/subst.hpp"

#include <sstream>

namespace ho {

std::string show(const Conditions& a) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [z, i] : a) {
    if (!first) os << ", ";
    first = false;
    os << z << ":" << i;
  }
  os << "}";
  return os.str();
}

namespace {

int leading_abs(const Term& t) {
  int n = 0;
  for (const Node* p = t.get(); p->kind == Kind::abs; p = p->left.get()) ++n;
  return n;
}

bool occurs_loose(const Term& t, int idx) {
  if (t->max_loose < idx) return false;
  switch (t->kind) {
  case Kind::bound: return t->index == idx;
  case Kind::app: return occurs_loose(t->left, idx) || occurs_loose(t->right, idx);
  case Kind::abs: return occurs_loose(t->left, idx + 1);
  case Kind::meta:
    for (const auto& a : t->args)
      if (occurs_loose(a, idx)) return true;
    return false;
  default: return false;
  }
}

} // namespace

Expansion approx_e(const Term& value, int e) {
  if (e < 0 || e > max_arity(value->type)) throw TypeError("approx_e: arity out of range");
  std::set<std::string> used = used_names(value);
  Expansion out;
  Term cur = value;
  int i = std::min(leading_abs(value), e);
  for (int j = 0; j < i; ++j) {
    auto [x, body] = open_abs(cur, used);
    out.xs.push_back(x);
    cur = body;
  }
  for (int j = i; j < e; ++j) {
    std::string n = fresh_name("x" + std::to_string(j + 1), used);
    used.insert(n);
    Term x = var(n, cur->type->dom);
    out.xs.push_back(x);
    cur = app(cur, x);
  }
  out.body = cur;
  return out;
}

Expansion approx_e(const Substitution& g, const MetaVar& z, int e) {
  auto it = g.metas.find(z.name);
  if (it == g.metas.end()) throw TypeError("approx_e: " + z.name + " not in domain");
  if (e < z.arity()) throw TypeError("approx_e: e below minimal arity");
  return approx_e(it->second, e);
}

namespace {

Term apply_rec(const Term& s, const Substitution& g, int depth) {
  switch (s->kind) {
  case Kind::var: {
    auto it = g.vars.find(s->name);
    if (it == g.vars.end()) return s;
    if (!type_equal(it->second->type, s->type)) throw TypeError("substitution for " + s->name + " changes type");
    return shift(it->second, depth);
  }
  case Kind::app: {
    Term l = apply_rec(s->left, g, depth), r = apply_rec(s->right, g, depth);
    if (l == s->left && r == s->right) return s;
    return app(l, r);
  }
  case Kind::abs: {
    Term b = apply_rec(s->left, g, depth + 1);
    return b == s->left ? s : abs_raw(s->name, s->type->dom, b);
  }
  case Kind::meta: {
    std::vector<Term> as;
    for (const auto& a : s->args) as.push_back(apply_rec(a, g, depth));
    auto it = g.metas.find(s->mv.name);
    if (it == g.metas.end()) return meta(s->mv, as);
    const Term& v = it->second;
    if (!type_equal(v->type, s->mv.type()))
      throw TypeError("meta-substitution for " + s->mv.name + " changes type");
    int e = static_cast<int>(as.size());
    int i = std::min(leading_abs(v), e);
    Term cur = shift(v, depth);
    for (int j = 0; j < i; ++j) cur = beta(cur, as[j]);
    for (int j = i; j < e; ++j) cur = app(cur, as[j]);
    return cur;
  }
  default: return s;
  }
}

} // namespace

Term apply_subst(const Term& s, const Substitution& g) {
  if (g.empty()) return s;
  return apply_rec(s, g, 0);
}

bool regards_argument(const Term& value, int i) {
  Term cur = value;
  for (int j = 1; j < i; ++j) {
    if (cur->kind != Kind::abs) return true;
    cur = cur->left;
  }
  if (cur->kind != Kind::abs) return true;
  return occurs_loose(cur->left, 0);
}

bool respects(const Substitution& g, const Conditions& a) {
  for (const auto& [z, i] : a) {
    auto it = g.metas.find(z);
    if (it == g.metas.end()) continue;
    if (!regards_argument(it->second, i)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- match

namespace {

struct NoMatch {};

// Rewrites the body u of a meta-variable instance: references to the
// pattern's argument variables become binders of the new abstraction.
Term remap(const Term& u, int c, int depth, const std::vector<Term>& args) {
  int k = static_cast<int>(args.size());
  switch (u->kind) {
  case Kind::bound: {
    if (u->index < c) return u;
    int outer = u->index - c;
    if (outer >= depth) throw NoMatch{};
    for (int j = 0; j < k; ++j)
      if (args[j]->kind == Kind::bound && args[j]->index == outer) return bvar(c + (k - 1 - j), u->type);
    throw NoMatch{};
  }
  case Kind::var:
    for (int j = 0; j < k; ++j)
      if (args[j]->kind == Kind::var && args[j]->name == u->name) return bvar(c + (k - 1 - j), u->type);
    return u;
  case Kind::app: return app(remap(u->left, c, depth, args), remap(u->right, c, depth, args));
  case Kind::abs: return abs_raw(u->name, u->type->dom, remap(u->left, c + 1, depth, args));
  case Kind::meta: {
    std::vector<Term> as;
    for (const auto& a : u->args) as.push_back(remap(a, c, depth, args));
    return meta(u->mv, as);
  }
  default: return u;
  }
}

void match_rec(const Term& l, const Term& t, int depth, Substitution& d) {
  switch (l->kind) {
  case Kind::meta: {
    if (!type_equal(l->type, t->type)) throw NoMatch{};
    Term body = remap(t, 0, depth, l->args);
    for (int j = l->mv.arity() - 1; j >= 0; --j) {
      std::string hint = l->args[j]->kind == Kind::var ? l->args[j]->name : "x";
      body = abs_raw(hint, l->mv.args[j], body);
    }
    auto it = d.metas.find(l->mv.name);
    if (it == d.metas.end()) d.metas.emplace(l->mv.name, body);
    else if (!alpha_equal(it->second, body)) throw NoMatch{};
    return;
  }
  case Kind::abs:
    if (t->kind != Kind::abs || !type_equal(l->type, t->type)) throw NoMatch{};
    match_rec(l->left, t->left, depth + 1, d);
    return;
  case Kind::app:
    if (t->kind != Kind::app) throw NoMatch{};
    match_rec(l->left, t->left, depth, d);
    match_rec(l->right, t->right, depth, d);
    return;
  default:
    if (!alpha_equal(l, t)) throw NoMatch{};
    return;
  }
}

} // namespace

bool match_into(const Term& l, const Term& t, Substitution& d) {
  Substitution trial = d;
  try {
    match_rec(l, t, 0, trial);
  } catch (const NoMatch&) {
    return false;
  }
  d = std::move(trial);
  return true;
}

std::optional<Substitution> match(const Term& l, const Term& t) {
  Substitution d;
  if (!match_into(l, t, d)) return std::nullopt;
  return d;
}

} // namespace ho
