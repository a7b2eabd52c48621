// Simple types, symbols, meta-variables and the unified term / meta-term AST.
//
// Terms use a locally nameless representation: bound variables are de Bruijn
// indices, free variables carry names.  Structural equality is therefore
// alpha-equivalence; binder names are kept only as printing hints.
#ifndef HO_TERM_HPP
#define HO_TERM_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ho {

class TypeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- types

struct TypeNode;
using Type = std::shared_ptr<const TypeNode>;

struct TypeNode {
  std::string sort; // non-empty iff this is a sort
  Type dom, cod;
  std::size_t hash = 0;
};

Type sort_type(const std::string& name);
Type arrow(Type dom, Type cod);
Type arrows(const std::vector<Type>& args, Type result);

bool type_equal(const Type& a, const Type& b);
int type_compare(const Type& a, const Type& b);
inline bool is_sort(const Type& t) { return !t->sort.empty(); }
// m in sigma_1 -> ... -> sigma_m -> iota
int max_arity(const Type& t);
std::vector<Type> arg_types(const Type& t);
const std::string& target_sort(const Type& t);
// type remaining after n arguments; throws if n > max_arity
Type drop_args(const Type& t, int n);
std::string show(const Type& t);
void collect_sorts(const Type& t, std::set<std::string>& out);

// -------------------------------------------------------------- symbols

enum class Mark : std::uint8_t { none, sharp, tag, bottom };

struct Symbol {
  std::string name; // for bottom symbols: derived from the type
  Type type;
  Mark mark = Mark::none;

  bool operator==(const Symbol& o) const;
  bool operator!=(const Symbol& o) const { return !(*this == o); }
  bool operator<(const Symbol& o) const;
};

Symbol plain_symbol(std::string name, Type type);
Symbol sharp(const Symbol& f);
Symbol tagged(const Symbol& f);
Symbol unmarked(const Symbol& f);
Symbol bottom(Type type);
std::string show(const Symbol& f);

// Names starting with '_' never come from input; fresh symbols live there.
bool is_reserved_name(const std::string& name);

struct MetaVar {
  std::string name;
  std::vector<Type> args; // sigma_1 .. sigma_k
  Type result;

  int arity() const { return static_cast<int>(args.size()); }
  Type type() const { return arrows(args, result); }
  bool operator==(const MetaVar& o) const;
  bool operator<(const MetaVar& o) const { return name < o.name; }
};

// ---------------------------------------------------------------- terms

enum class Kind : std::uint8_t { var, bound, fun, app, abs, meta };

struct Node;
using Term = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  Type type;
  std::string name; // var: name; abs: binder hint; meta: unused (see mv)
  int index = 0;    // bound: de Bruijn index
  Symbol sym;       // fun
  Term left, right; // app: (left right); abs: body in left
  MetaVar mv;       // meta
  std::vector<Term> args; // meta
  std::size_t hash = 0;
  int size = 1;
  int max_loose = -1; // largest loose de Bruijn index, -1 if locally closed
  bool has_meta = false;
};

Term var(const std::string& name, Type type);
Term bvar(int index, Type type);
Term fun(const Symbol& f);
Term app(Term f, Term x);
Term apps(Term f, const std::vector<Term>& xs);
Term meta(const MetaVar& z, const std::vector<Term>& args);
// lambda x. body, binding the free variable x of body
Term lam(const Term& x, const Term& body);
Term lam(const std::string& name, Type type, const Term& body);
// raw abstraction over a body whose index 0 refers to the new binder
Term abs_raw(const std::string& hint, Type binder, Term body);

bool alpha_equal(const Term& a, const Term& b);
int compare(const Term& a, const Term& b);
inline bool locally_closed(const Term& t) { return t->max_loose < 0; }

struct TermHash {
  std::size_t operator()(const Term& t) const { return t->hash; }
};
struct TermEq {
  bool operator()(const Term& a, const Term& b) const { return alpha_equal(a, b); }
};
struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
};

// ---- de Bruijn plumbing
Term shift(const Term& t, int d, int cutoff = 0);
// t[index j := u], u given relative to the context of t
Term subst_index(const Term& t, int j, const Term& u);
// (lambda.body) u
Term beta(const Term& abstraction, const Term& u);
// replace free variable `name` by the binder of a new outermost abstraction
Term abstract_var(const Term& t, const std::string& name);

// ---- spine views
Term head(const Term& s);
std::vector<Term> spine_args(const Term& s);

// ---- free (meta-)variables
using VarTypes = std::map<std::string, Type>;
VarTypes free_vars(const Term& t);
void free_vars_into(const Term& t, VarTypes& out);
std::map<std::string, MetaVar> free_metas(const Term& t);
void free_metas_into(const Term& t, std::map<std::string, MetaVar>& out);
void symbols_into(const Term& t, std::map<std::string, Symbol>& out);

std::string fresh_name(const std::string& hint, const std::set<std::string>& used);
std::set<std::string> used_names(const Term& t);

// Open an abstraction with a fresh free variable (named after the hint,
// avoiding `used`); returns (variable, body).
std::pair<Term, Term> open_abs(const Term& abstraction, std::set<std::string>& used);

// ---- typing
// Types are derived at construction; the env overload additionally requires
// every free variable to be declared in env with its type.
inline Type type_of(const Term& s) { return s->type; }
Type type_of(const Term& s, const VarTypes& env);

// ---- pattern predicates
bool is_pattern(const Term& l);
bool is_fully_extended(const Term& l);
bool is_linear(const Term& l);

// s |> t (clauses: equal, under lambda, either side of an application,
// meta-variable arguments). Binders are opened with their hint names.
bool subterm_eq(const Term& s, const Term& t);
bool strict_subterm(const Term& s, const Term& t);
std::vector<Term> subterms(const Term& s); // all, opened, pre-order

// ---- arities
using ArityMap = std::map<std::string, int>;
int arity_of(const ArityMap& ar, const Symbol& f);
// largest arity respected by every occurrence in `terms`; maximal for
// symbols of `sig` that do not occur
ArityMap infer_max_arity(const std::vector<Term>& terms, const std::map<std::string, Symbol>& sig);
bool respects_arity(const Term& s, const ArityMap& ar);
Term inc_ar(const Term& s, const ArityMap& ar);

// Equality up to a consistent bijective renaming of meta-variables and free
// variables across all pairs (as[i], bs[i]).
bool equal_modulo_renaming(const std::vector<Term>& as, const std::vector<Term>& bs);
// the meta-variable part of such a renaming, when one exists
std::optional<std::map<std::string, std::string>> meta_renaming(const std::vector<Term>& as,
                                                                 const std::vector<Term>& bs);

// ---- printing
std::string show(const Term& t);

} // namespace ho

#endif
