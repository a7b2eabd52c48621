#include "ho/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ho {

ParseError::ParseError(int l, int c, const std::string& msg)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c) {}

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok { ident, lbrack, rbrack, comma, lparen, rparen, lambda, dot, rule_arrow, type_arrow, colon, end };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

bool ident_start(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& s, int line, bool extended) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto col = [&](std::size_t p) { return static_cast<int>(p) + 1; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t st = i;
    if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      std::string name = s.substr(st, i - st);
      if (extended && i < s.size() && (s[i] == '#' || (s[i] == '-' && (i + 1 >= s.size() || s[i + 1] != '>'))))
        name += s[i++];
      out.push_back({Tok::ident, name, line, col(st)});
      continue;
    }
    if (c == '_') throw ParseError(line, col(st), "names starting with '_' are reserved");
    if (static_cast<unsigned char>(c) >= 0x80) {
      if (s.compare(i, 3, "\xe2\x8a\xa5") == 0) throw ParseError(line, col(st), "bottom symbols are reserved");
      throw ParseError(line, col(st), "unexpected non-ASCII character");
    }
    auto two = [&](const char* p) { return s.compare(i, 2, p) == 0; };
    if (two("/\\")) {
      out.push_back({Tok::lambda, "/\\", line, col(st)});
      i += 2;
    } else if (two("=>")) {
      out.push_back({Tok::rule_arrow, "=>", line, col(st)});
      i += 2;
    } else if (two("->")) {
      out.push_back({Tok::type_arrow, "->", line, col(st)});
      i += 2;
    } else {
      Tok k;
      switch (c) {
      case '[': k = Tok::lbrack; break;
      case ']': k = Tok::rbrack; break;
      case ',': k = Tok::comma; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case '.': k = Tok::dot; break;
      case ':': k = Tok::colon; break;
      default: throw ParseError(line, col(st), std::string("unexpected character '") + c + "'");
      }
      out.push_back({k, std::string(1, c), line, col(st)});
      ++i;
    }
  }
  out.push_back({Tok::end, "", line, col(s.size())});
  return out;
}

struct Cursor {
  const std::vector<Token>& toks;
  std::size_t i = 0;
  const Token& peek() const { return toks[i]; }
  const Token& next() { return toks[i++]; }
  bool at(Tok k) const { return toks[i].kind == k; }
  const Token& expect(Tok k, const char* what) {
    if (!at(k)) throw ParseError(peek().line, peek().col, std::string("expected ") + what);
    return next();
  }
};

// ---------------------------------------------------------------- types

Type parse_type_rec(Cursor& c) {
  Type dom;
  if (c.at(Tok::lparen)) {
    c.next();
    dom = parse_type_rec(c);
    c.expect(Tok::rparen, "')'");
  } else {
    const Token& t = c.expect(Tok::ident, "a sort name");
    dom = sort_type(t.text);
  }
  if (c.at(Tok::type_arrow)) {
    c.next();
    return arrow(dom, parse_type_rec(c));
  }
  return dom;
}

// ------------------------------------------------------------- raw terms

struct Raw {
  enum K { ident, meta, app, abs } kind;
  std::string name;
  std::vector<Raw> kids; // meta args; app: (fn, arg); abs: body
  int line = 0, col = 0;
};

Raw parse_raw(Cursor& c);

Raw parse_atom(Cursor& c) {
  const Token& t = c.peek();
  if (t.kind == Tok::lparen) {
    c.next();
    Raw r = parse_raw(c);
    c.expect(Tok::rparen, "')'");
    return r;
  }
  if (t.kind == Tok::ident) {
    c.next();
    if (c.at(Tok::lbrack)) {
      if (!std::isupper(static_cast<unsigned char>(t.text[0])))
        throw ParseError(t.line, t.col, "meta-variable names start with an uppercase letter: " + t.text);
      c.next();
      Raw r{Raw::meta, t.text, {}, t.line, t.col};
      if (!c.at(Tok::rbrack)) {
        r.kids.push_back(parse_raw(c));
        while (c.at(Tok::comma)) {
          c.next();
          r.kids.push_back(parse_raw(c));
        }
      }
      c.expect(Tok::rbrack, "']'");
      return r;
    }
    return Raw{Raw::ident, t.text, {}, t.line, t.col};
  }
  throw ParseError(t.line, t.col, t.kind == Tok::end ? "unexpected end of term" : "unexpected '" + t.text + "'");
}

bool atom_start(Tok k) { return k == Tok::ident || k == Tok::lparen || k == Tok::lambda; }

Raw parse_raw(Cursor& c) {
  if (c.at(Tok::lambda)) {
    const Token& l = c.next();
    std::vector<Token> names;
    names.push_back(c.expect(Tok::ident, "a bound variable"));
    while (c.at(Tok::ident)) names.push_back(c.next());
    c.expect(Tok::dot, "'.'");
    Raw body = parse_raw(c);
    for (auto it = names.rbegin(); it != names.rend(); ++it) {
      if (std::isupper(static_cast<unsigned char>(it->text[0])))
        throw ParseError(it->line, it->col, "bound variables start with a lowercase letter: " + it->text);
      body = Raw{Raw::abs, it->text, {body}, l.line, l.col};
    }
    return body;
  }
  Raw r = parse_atom(c);
  while (atom_start(c.peek().kind)) {
    if (c.at(Tok::lambda)) {
      Raw a = parse_raw(c);
      r = Raw{Raw::app, "", {r, a}, r.line, r.col};
      break;
    }
    Raw a = parse_atom(c);
    r = Raw{Raw::app, "", {r, a}, r.line, r.col};
  }
  return r;
}

// ------------------------------------------------------- type inference

struct Infer {
  struct TN {
    int kind; // 0 var, 1 sort, 2 arrow
    std::string sort;
    int a = -1, b = -1;
  };
  std::vector<TN> nodes;
  std::vector<int> bind;

  int fresh() {
    nodes.push_back({0, "", -1, -1});
    bind.push_back(-1);
    return static_cast<int>(nodes.size()) - 1;
  }
  int mk_sort(const std::string& s) {
    nodes.push_back({1, s, -1, -1});
    bind.push_back(-1);
    return static_cast<int>(nodes.size()) - 1;
  }
  int mk_arrow(int a, int b) {
    nodes.push_back({2, "", a, b});
    bind.push_back(-1);
    return static_cast<int>(nodes.size()) - 1;
  }
  int from_type(const Type& t) { return is_sort(t) ? mk_sort(t->sort) : mk_arrow(from_type(t->dom), from_type(t->cod)); }
  int find(int n) {
    while (nodes[n].kind == 0 && bind[n] >= 0) n = bind[n];
    return n;
  }
  bool occurs(int v, int n) {
    n = find(n);
    if (n == v) return true;
    if (nodes[n].kind == 2) return occurs(v, nodes[n].a) || occurs(v, nodes[n].b);
    return false;
  }
  bool unify(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return true;
    if (nodes[x].kind == 0) {
      if (occurs(x, y)) return false;
      bind[x] = y;
      return true;
    }
    if (nodes[y].kind == 0) return unify(y, x);
    if (nodes[x].kind != nodes[y].kind) return false;
    if (nodes[x].kind == 1) return nodes[x].sort == nodes[y].sort;
    return unify(nodes[x].a, nodes[y].a) && unify(nodes[x].b, nodes[y].b);
  }
  std::optional<Type> resolve(int n) {
    n = find(n);
    if (nodes[n].kind == 0) return std::nullopt;
    if (nodes[n].kind == 1) return sort_type(nodes[n].sort);
    auto a = resolve(nodes[n].a), b = resolve(nodes[n].b);
    if (!a || !b) return std::nullopt;
    return arrow(*a, *b);
  }
  std::string show_node(int n) {
    n = find(n);
    if (nodes[n].kind == 0) return "?" + std::to_string(n);
    if (nodes[n].kind == 1) return nodes[n].sort;
    std::string d = show_node(nodes[n].a);
    if (nodes[find(nodes[n].a)].kind == 2) d = "(" + d + ")";
    return d + " -> " + show_node(nodes[n].b);
  }
};

struct MetaInfo {
  int arity;
  std::vector<int> args;
  int result;
};

struct Elab {
  const Signature& sig;
  const VarTypes& free;
  bool extended;
  Infer inf;
  std::map<std::string, MetaInfo> metas;
  std::vector<std::pair<std::string, int>> scope; // bound variables
  std::map<std::string, int> free_tv;
  // binder type variables by Raw address, recorded during inference
  std::map<const Raw*, int> binder_tv;

  Elab(const Signature& s, const VarTypes& f, bool ext) : sig(s), free(f), extended(ext) {}

  std::optional<Symbol> symbol_of(const std::string& name) const {
    std::string base = name;
    Mark mk = Mark::none;
    if (extended && !base.empty() && (base.back() == '#' || base.back() == '-')) {
      mk = base.back() == '#' ? Mark::sharp : Mark::tag;
      base.pop_back();
    }
    auto it = sig.find(base);
    if (it == sig.end()) return std::nullopt;
    Symbol f = it->second;
    f.mark = mk;
    return f;
  }

  int lookup_bound(const std::string& n) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == n) return it->second;
    return -1;
  }

  MetaInfo& meta_info(const Raw& r, int arity) {
    auto it = metas.find(r.name);
    if (it == metas.end()) {
      MetaInfo mi{arity, {}, inf.fresh()};
      for (int i = 0; i < arity; ++i) mi.args.push_back(inf.fresh());
      it = metas.emplace(r.name, mi).first;
    } else if (it->second.arity != arity) {
      throw ParseError(r.line, r.col, "meta-variable " + r.name + " used with different numbers of arguments");
    }
    return it->second;
  }

  int infer(const Raw& r) {
    switch (r.kind) {
    case Raw::ident: {
      if (int tv = lookup_bound(r.name); tv >= 0) return tv;
      if (auto f = symbol_of(r.name)) return inf.from_type(f->type);
      if (std::isupper(static_cast<unsigned char>(r.name[0]))) return meta_info(r, 0).result;
      if (auto it = free.find(r.name); it != free.end()) {
        auto [pos, fresh] = free_tv.emplace(r.name, 0);
        if (fresh) pos->second = inf.from_type(it->second);
        return pos->second;
      }
      throw ParseError(r.line, r.col, "free variable or undeclared symbol: " + r.name);
    }
    case Raw::meta: {
      MetaInfo mi = meta_info(r, static_cast<int>(r.kids.size()));
      for (std::size_t i = 0; i < r.kids.size(); ++i) {
        int t = infer(r.kids[i]);
        if (!inf.unify(t, mi.args[i]))
          throw ParseError(r.kids[i].line, r.kids[i].col, "type error in argument of meta-variable " + r.name);
      }
      return mi.result;
    }
    case Raw::app: {
      int tf = infer(r.kids[0]);
      int tx = infer(r.kids[1]);
      int res = inf.fresh();
      if (!inf.unify(tf, inf.mk_arrow(tx, res)))
        throw ParseError(r.kids[1].line, r.kids[1].col,
                         "type error: cannot apply a term of type " + inf.show_node(tf) + " to an argument of type " +
                             inf.show_node(tx));
      return res;
    }
    case Raw::abs: {
      int tv = inf.fresh();
      binder_tv[&r] = tv;
      scope.emplace_back(r.name, tv);
      int tb = infer(r.kids[0]);
      scope.pop_back();
      return inf.mk_arrow(tv, tb);
    }
    }
    return -1;
  }

  Type resolved(int tv, const Raw& r, const std::string& what) {
    auto t = inf.resolve(tv);
    if (!t) throw ParseError(r.line, r.col, "cannot infer the type of " + what);
    return *t;
  }

  std::map<std::string, MetaVar> metavars;
  std::vector<std::pair<std::string, std::string>> bound_names; // source -> unique
  int counter = 0;

  void finish_metas(const Raw& at) {
    for (const auto& [n, mi] : metas) {
      MetaVar z{n, {}, resolved(mi.result, at, "meta-variable " + n)};
      for (int a : mi.args) z.args.push_back(resolved(a, at, "meta-variable " + n));
      metavars.emplace(n, z);
    }
  }

  Term build(const Raw& r) {
    switch (r.kind) {
    case Raw::ident: {
      for (auto it = bound_names.rbegin(); it != bound_names.rend(); ++it)
        if (it->first == r.name) {
          int tv = lookup_bound(r.name);
          return var(it->second, resolved(tv, r, r.name));
        }
      if (auto f = symbol_of(r.name)) return fun(*f);
      if (std::isupper(static_cast<unsigned char>(r.name[0]))) return meta(metavars.at(r.name), {});
      return var(r.name, free.at(r.name));
    }
    case Raw::meta: {
      std::vector<Term> as;
      for (const auto& k : r.kids) as.push_back(build(k));
      return meta(metavars.at(r.name), as);
    }
    case Raw::app: return app(build(r.kids[0]), build(r.kids[1]));
    case Raw::abs: {
      Type ty = resolved(binder_tv.at(&r), r, "bound variable " + r.name);
      std::string unique = "_b" + std::to_string(counter++);
      scope.emplace_back(r.name, binder_tv.at(&r));
      bound_names.emplace_back(r.name, unique);
      Term body = build(r.kids[0]);
      bound_names.pop_back();
      scope.pop_back();
      return abs_raw(r.name, ty, abstract_var(body, unique));
    }
    }
    return nullptr;
  }
};

std::string strip_comment(const std::string& line) {
  auto p = line.find('#');
  return p == std::string::npos ? line : line.substr(0, p);
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

Rule parse_rule_line(const std::string& line, int lineno, const Signature& sig) {
  auto toks = lex(line, lineno, false);
  Cursor c{toks};
  Raw lhs = parse_raw(c);
  c.expect(Tok::rule_arrow, "'=>'");
  Raw rhs = parse_raw(c);
  if (!c.at(Tok::end)) throw ParseError(c.peek().line, c.peek().col, "trailing input after rule");
  VarTypes none;
  Elab el(sig, none, false);
  int tl = el.infer(lhs);
  int tr = el.infer(rhs);
  if (!el.inf.unify(tl, tr))
    throw ParseError(lineno, 1,
                     "rule sides have incompatible types " + el.inf.show_node(tl) + " and " + el.inf.show_node(tr));
  el.finish_metas(lhs);
  Term l = el.build(lhs);
  Term r = el.build(rhs);
  Rule rule{l, r};
  if (head(l)->kind != Kind::fun) throw ParseError(lineno, 1, "left-hand side must be headed by a function symbol");
  if (!is_pattern(l)) throw ParseError(lineno, 1, "left-hand side is not a pattern");
  auto lm = free_metas(l);
  for (const auto& [n, z] : free_metas(r))
    if (!lm.count(n)) throw ParseError(lineno, 1, "meta-variable not in lhs: " + n);
  if (auto e = rule_error(rule); !e.empty()) throw ParseError(lineno, 1, e);
  return rule;
}

} // namespace

RuleSet InputSystem::rule_set() const { return RuleSet(rules, signature); }

InputSystem parse_system(const std::string& text) {
  InputSystem sys;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  enum { start, sig, rules } state = start;
  std::set<std::string> sorts_seen;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line == "SIG") {
      if (state != start) throw ParseError(lineno, 1, "SIG must be the first section and appear once");
      state = sig;
      continue;
    }
    if (line == "RULES") {
      if (state != sig) throw ParseError(lineno, 1, "RULES must follow SIG");
      state = rules;
      continue;
    }
    if (state == start) throw ParseError(lineno, 1, "expected SIG");
    if (state == sig) {
      auto toks = lex(line, lineno, false);
      Cursor c{toks};
      const Token& name = c.expect(Tok::ident, "a symbol name");
      c.expect(Tok::colon, "':'");
      Type ty = parse_type_rec(c);
      if (!c.at(Tok::end)) throw ParseError(c.peek().line, c.peek().col, "trailing input after type");
      if (sys.signature.count(name.text)) throw ParseError(name.line, name.col, "duplicate symbol " + name.text);
      sys.signature.emplace(name.text, plain_symbol(name.text, ty));
      sys.symbol_order.push_back(name.text);
      std::set<std::string> ss;
      collect_sorts(ty, ss);
      std::vector<std::string> order;
      std::function<void(const Type&)> walk = [&](const Type& t) {
        if (is_sort(t)) {
          if (sorts_seen.insert(t->sort).second) sys.sorts.push_back(t->sort);
          return;
        }
        walk(t->dom);
        walk(t->cod);
      };
      walk(ty);
      continue;
    }
    sys.rules.push_back(parse_rule_line(line, lineno, sys.signature));
  }
  if (state == start) throw ParseError(lineno, 1, "missing SIG section");
  return sys;
}

InputSystem parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_system(ss.str());
}

Term parse_term(const std::string& text, const Signature& sig, const VarTypes& vars) {
  auto toks = lex(text, 1, true);
  Cursor c{toks};
  Raw r = parse_raw(c);
  if (!c.at(Tok::end)) throw ParseError(c.peek().line, c.peek().col, "trailing input after term");
  Elab el(sig, vars, true);
  el.infer(r);
  el.finish_metas(r);
  return el.build(r);
}

std::vector<Term> parse_terms(const std::vector<std::string>& texts, const Signature& sig, const VarTypes& vars) {
  std::vector<Raw> raws;
  for (const auto& text : texts) {
    auto toks = lex(text, 1, true);
    Cursor c{toks};
    raws.push_back(parse_raw(c));
    if (!c.at(Tok::end)) throw ParseError(c.peek().line, c.peek().col, "trailing input after term");
  }
  Elab el(sig, vars, true);
  for (auto& r : raws) el.infer(r);
  if (!raws.empty()) el.finish_metas(raws.front());
  std::vector<Term> out;
  for (auto& r : raws) out.push_back(el.build(r));
  return out;
}

Type parse_type(const std::string& text) {
  auto toks = lex(text, 1, false);
  Cursor c{toks};
  Type t = parse_type_rec(c);
  if (!c.at(Tok::end)) throw ParseError(c.peek().line, c.peek().col, "trailing input after type");
  return t;
}

std::string render_system(const InputSystem& sys) {
  std::ostringstream os;
  os << "SIG\n";
  for (const auto& n : sys.symbol_order) os << "  " << n << " : " << show(sys.signature.at(n).type) << "\n";
  os << "RULES\n";
  for (const auto& r : sys.rules) os << "  " << show(r) << "\n";
  return os.str();
}

std::string render_system(const RuleSet& R) {
  InputSystem sys;
  sys.signature = R.signature();
  for (const auto& [n, f] : R.signature())
    if (!is_reserved_name(n)) sys.symbol_order.push_back(n);
  sys.rules = R.rules();
  return render_system(sys);
}

} // namespace ho
