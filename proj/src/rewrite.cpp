#include "ho/rewrite.hpp"

#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace ho {

std::string show(const Rule& r) { return show(r.lhs) + " => " + show(r.rhs); }

std::string rule_error(const Rule& r) {
  if (!type_equal(r.lhs->type, r.rhs->type))
    return "sides have different types: " + show(r.lhs->type) + " and " + show(r.rhs->type);
  if (!locally_closed(r.lhs) || !free_vars(r.lhs).empty()) return "left-hand side is not closed";
  if (!locally_closed(r.rhs) || !free_vars(r.rhs).empty()) return "right-hand side has free variables";
  if (head(r.lhs)->kind != Kind::fun) return "left-hand side is not headed by a function symbol";
  if (head(r.lhs)->sym.mark != Mark::none) return "left-hand side head is a reserved symbol";
  if (!is_pattern(r.lhs)) return "left-hand side is not a pattern";
  auto lm = free_metas(r.lhs);
  for (const auto& [n, z] : free_metas(r.rhs)) {
    auto it = lm.find(n);
    if (it == lm.end()) return "meta-variable not in lhs: " + n;
    if (!(it->second == z)) return "meta-variable " + n + " used with different types";
  }
  return {};
}

bool rule_equal(const Rule& a, const Rule& b) { return equal_modulo_renaming({a.lhs, a.rhs}, {b.lhs, b.rhs}); }

Symbol root_symbol(const Rule& r) { return head(r.lhs)->sym; }

RuleSet::RuleSet(std::vector<Rule> rules, Signature sig, std::optional<ArityMap> ar)
    : rules_(std::move(rules)), sig_(std::move(sig)) {
  for (const auto& r : rules_) {
    if (auto e = rule_error(r); !e.empty()) throw TypeError("invalid rule " + show(r) + ": " + e);
    symbols_into(r.lhs, sig_);
    symbols_into(r.rhs, sig_);
    defined_.insert(root_symbol(r).name);
  }
  if (ar) {
    ar_ = *ar;
  } else {
    std::vector<Term> ts;
    for (const auto& r : rules_) {
      ts.push_back(r.lhs);
      ts.push_back(r.rhs);
    }
    ar_ = infer_max_arity(ts, sig_);
  }
  for (const auto& [n, f] : sig_)
    if (!ar_.count(n)) ar_[n] = max_arity(f.type);
}

RuleSet RuleSet::with_rules(std::vector<Rule> rules) const {
  Signature sig = sig_;
  RuleSet out(std::move(rules), std::move(sig), ar_);
  return out;
}

// ---------------------------------------------------------------- reduce

std::vector<Term> root_rule_reducts(const Term& s, const RuleSet& R) {
  std::vector<Term> out;
  Term h = head(s);
  if (h->kind != Kind::fun) return out;
  for (const auto& r : R.rules()) {
    if (head(r.lhs)->sym != h->sym) continue;
    if (auto d = match(r.lhs, s)) out.push_back(apply_subst(r.rhs, *d));
  }
  return out;
}

namespace {

void reduce_rec(const Term& s, const RuleSet& R, Position& pos, std::set<std::string>& used,
                std::vector<Reduct>& out, const std::function<Term(Term)>& wrap) {
  Term h = head(s);
  if (h->kind == Kind::fun) {
    for (std::size_t i = 0; i < R.rules().size(); ++i) {
      const Rule& r = R.rules()[i];
      if (head(r.lhs)->sym != h->sym) continue;
      if (auto d = match(r.lhs, s)) out.push_back(Reduct{pos, wrap(apply_subst(r.rhs, *d)), static_cast<int>(i)});
    }
  }
  if (s->kind == Kind::app && s->left->kind == Kind::abs) out.push_back(Reduct{pos, wrap(beta(s->left, s->right)), -1});
  switch (s->kind) {
  case Kind::app: {
    pos.push_back(1);
    Term right = s->right;
    reduce_rec(s->left, R, pos, used, out, [&](Term t) { return wrap(app(t, right)); });
    pos.back() = 2;
    Term left = s->left;
    reduce_rec(s->right, R, pos, used, out, [&](Term t) { return wrap(app(left, t)); });
    pos.pop_back();
    break;
  }
  case Kind::abs: {
    auto [x, body] = open_abs(s, used);
    pos.push_back(1);
    reduce_rec(body, R, pos, used, out, [&, x = x](Term t) { return wrap(lam(x, t)); });
    pos.pop_back();
    break;
  }
  case Kind::meta:
    for (std::size_t i = 0; i < s->args.size(); ++i) {
      pos.push_back(static_cast<int>(i) + 1);
      reduce_rec(s->args[i], R, pos, used, out, [&, i](Term t) {
        std::vector<Term> as = s->args;
        as[i] = t;
        return wrap(meta(s->mv, as));
      });
      pos.pop_back();
    }
    break;
  default: break;
  }
}

} // namespace

std::vector<Reduct> reduce_once(const Term& s, const RuleSet& R) {
  std::vector<Reduct> out;
  Position pos;
  std::set<std::string> used = used_names(s);
  reduce_rec(s, R, pos, used, out, [](Term t) { return t; });
  return out;
}

Term beta_normalize(const Term& s) {
  switch (s->kind) {
  case Kind::app: {
    Term f = beta_normalize(s->left);
    if (f->kind == Kind::abs) return beta_normalize(beta(f, s->right));
    return app(f, beta_normalize(s->right));
  }
  case Kind::abs: return abs_raw(s->name, s->type->dom, beta_normalize(s->left));
  case Kind::meta: {
    std::vector<Term> as;
    for (const auto& a : s->args) as.push_back(beta_normalize(a));
    return meta(s->mv, as);
  }
  default: return s;
  }
}

bool is_beta_normal(const Term& s) {
  switch (s->kind) {
  case Kind::app: return s->left->kind != Kind::abs && is_beta_normal(s->left) && is_beta_normal(s->right);
  case Kind::abs: return is_beta_normal(s->left);
  case Kind::meta:
    for (const auto& a : s->args)
      if (!is_beta_normal(a)) return false;
    return true;
  default: return true;
  }
}

Term subterm_at(const Term& s, const Position& p) {
  std::set<std::string> used = used_names(s);
  Term cur = s;
  for (int step : p) {
    switch (cur->kind) {
    case Kind::app:
      if (step == 1) cur = cur->left;
      else if (step == 2) cur = cur->right;
      else return nullptr;
      break;
    case Kind::abs:
      if (step != 1) return nullptr;
      cur = open_abs(cur, used).second;
      break;
    case Kind::meta:
      if (step < 1 || step > static_cast<int>(cur->args.size())) return nullptr;
      cur = cur->args[step - 1];
      break;
    default: return nullptr;
    }
  }
  return cur;
}

// ------------------------------------------------------------ R+ and R-up

std::vector<Rule> eta_extensions(const Rule& r) {
  std::vector<Rule> out{r};
  std::set<std::string> used = used_names(r.lhs);
  for (const auto& n : used_names(r.rhs)) used.insert(n);
  Term l = r.lhs, rr = r.rhs;
  for (const auto& ty : arg_types(r.rhs->type)) {
    std::string n = fresh_name("X", used);
    used.insert(n);
    Term z = meta(MetaVar{n, {}, ty}, {});
    l = app(l, z);
    rr = app(rr, z);
    out.push_back(Rule{l, rr});
  }
  return out;
}

RuleSet rules_eta(const RuleSet& R) {
  std::vector<Rule> out;
  for (const auto& r : R.rules())
    for (auto& e : eta_extensions(r)) out.push_back(std::move(e));
  return R.with_rules(std::move(out));
}

namespace {

Term up(const Term& s, std::set<std::string>& used);

Term half(const Term& s, std::set<std::string>& used) {
  switch (s->kind) {
  case Kind::meta: {
    std::vector<Term> as;
    for (const auto& a : s->args) as.push_back(half(a, used));
    return meta(s->mv, as);
  }
  case Kind::abs: return abs_raw(s->name, s->type->dom, up(s->left, used));
  case Kind::app: return app(half(s->left, used), up(s->right, used));
  default: return s;
  }
}

Term up(const Term& s, std::set<std::string>& used) {
  if (s->kind == Kind::meta || s->kind == Kind::abs) return half(s, used);
  Term body = half(s, used);
  std::vector<Term> ys;
  for (const auto& ty : arg_types(s->type)) {
    std::string n = fresh_name("y", used);
    used.insert(n);
    Term y = var(n, ty);
    ys.push_back(y);
    body = app(body, up(y, used));
  }
  for (auto it = ys.rbegin(); it != ys.rend(); ++it) body = lam(*it, body);
  return body;
}

} // namespace

Term eta_long(const Term& s) {
  std::set<std::string> used = used_names(s);
  return up(s, used);
}

RuleSet eta_expand_rules(const RuleSet& R) {
  std::vector<Rule> out;
  for (const auto& r : R.rules()) {
    auto ext = eta_extensions(r);
    const Rule& full = ext.back();
    std::set<std::string> used = used_names(full.lhs);
    for (const auto& n : used_names(full.rhs)) used.insert(n);
    Term l = up(full.lhs, used);
    Term rr = up(full.rhs, used);
    out.push_back(Rule{l, rr});
  }
  Signature sig = R.signature();
  return RuleSet(std::move(out), std::move(sig));
}

// ---------------------------------------------------------------- oracle

OracleResult terminates_bounded(const Term& s, const RuleSet& R, std::size_t fuel) {
  OracleResult res;
  struct Frame {
    Term t;
    std::vector<Reduct> succ;
    std::size_t next = 0;
  };
  std::unordered_map<Term, int, TermHash, TermEq> color; // 1 on stack, 2 finished
  std::vector<Frame> stack;
  color[s] = 1;
  stack.push_back(Frame{s, reduce_once(s, R)});
  res.explored = 1;
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next == top.succ.size()) {
      color[top.t] = 2;
      stack.pop_back();
      continue;
    }
    Term u = top.succ[top.next++].result;
    auto it = color.find(u);
    if (it != color.end()) {
      if (it->second == 1) {
        std::size_t i = 0;
        while (!alpha_equal(stack[i].t, u)) ++i;
        for (; i < stack.size(); ++i) res.cycle.push_back(stack[i].t);
        res.verdict = Termination::nonterminating;
        return res;
      }
      continue;
    }
    if (res.explored >= fuel) {
      res.verdict = Termination::unknown;
      return res;
    }
    ++res.explored;
    color[u] = 1;
    auto succ = reduce_once(u, R);
    stack.push_back(Frame{u, std::move(succ)});
  }
  res.verdict = Termination::terminating;
  return res;
}

bool reaches(const Term& s, const Term& t, const RuleSet& R, int max_steps, std::size_t max_nodes) {
  std::unordered_set<Term, TermHash, TermEq> seen;
  std::deque<std::pair<Term, int>> q;
  q.emplace_back(s, 0);
  while (!q.empty() && seen.size() < max_nodes) {
    auto [u, d] = q.front();
    q.pop_front();
    if (d >= max_steps) continue;
    for (const auto& r : reduce_once(u, R)) {
      if (alpha_equal(r.result, t)) return true;
      if (seen.insert(r.result).second) q.emplace_back(r.result, d + 1);
    }
  }
  return false;
}

} // namespace ho
