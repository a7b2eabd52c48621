// Higher-order polynomial interpretations over the naturals, used as the
// reduction-triple backend.
//
// Every sort is interpreted in one carrier N.  A symbol f : s1 -> .. -> sm -> i
// gets J(f)(x1..xm) = c0 + c1*a(x1) + .. + cm*a(xm) where a(x) = x at base
// type and x(v,..,v) at functional type, v being 0 or the sum of the
// base-type siblings (one choice bit per functional argument).  Bottom
// symbols are 0.  Applications of non-symbol heads are plain function
// application, or max(f(x), x(0..0)) when the scheme is collapsing.
//
// Values of free meta-variables are unknown weakly monotonic functions; they
// become atoms F(args) in the resulting max-polynomials.
#ifndef HO_POLYINT_HPP
#define HO_POLYINT_HPP

#include <functional>
#include <memory>
#include <optional>

#include "ho/rewrite.hpp"

namespace ho::poly {

using AtomId = int;
using Monomial = std::map<AtomId, int>; // atom -> exponent; empty is the constant
using Coeff = long long;

struct Poly {
  std::map<Monomial, Coeff> terms; // no zero coefficients

  bool operator==(const Poly& o) const { return terms == o.terms; }
  bool operator<(const Poly& o) const { return terms < o.terms; }
};

// max over a non-empty list of polynomials; weakly monotonic in every atom
struct PolyExpr {
  std::vector<Poly> alts;
};

PolyExpr constant(Coeff c);

enum class Relation { rule_geq, pair_geq, strict };
std::string show(Relation r);

struct Requirement {
  Term lhs, rhs;
  Relation rel;
  std::string origin; // e.g. "dp 2", "rule 1", "tag law f"
  // for pair requirements: the backend may orient it strictly (P1) or weakly (P2)
  bool optional_strict = false;
};

struct Template {
  Symbol sym;
  int arity = 0;                    // full arity of the type
  std::vector<bool> functional;     // per argument
  int choices() const;              // number of choice bits
  int size() const { return 1 + arity + choices(); }
};

struct Scheme {
  std::map<std::string, Template> symbols; // keyed by show(symbol)
  bool collapsing = false;
};

// Templates for every non-bottom symbol in the requirements.
Scheme make_scheme(const std::vector<Requirement>& reqs, bool collapsing);

// key -> [c0, c1..cm, choice bits]
using Assignment = std::map<std::string, std::vector<int>>;

class Interpretation {
public:
  Interpretation(const Scheme& scheme, const Assignment& a);
  ~Interpretation();
  Interpretation(const Interpretation&) = delete;
  Interpretation& operator=(const Interpretation&) = delete;

  // base-type value; functional values are applied to fresh parameters
  PolyExpr interpret(const Term& s);
  std::string show(const PolyExpr& p) const;

  bool geq(const Term& l, const Term& r);
  bool gt(const Term& l, const Term& r);
  bool holds(const Requirement& q);

  // numeric evaluation; `atom` receives the atom name (a meta-variable,
  // variable or parameter) and its evaluated arguments
  using Valuation = std::function<Coeff(const std::string&, const std::vector<Coeff>&)>;
  Coeff evaluate(const PolyExpr& p, const Valuation& atom) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct SolveStats {
  std::size_t nodes = 0;
  bool exhausted_budget = false;
};

// Lexicographically least assignment (symbols in a fixed greedy order,
// coefficients 0..bound) satisfying every requirement; optional_strict
// requirements must hold weakly and at least one of them strictly.
std::optional<Assignment> solve(const std::vector<Requirement>& reqs, const Scheme& scheme, int bound,
                                SolveStats* stats = nullptr, std::size_t max_nodes = 400000);

struct Triple {
  std::function<bool(const Term&, const Term&)> rule_geq, pair_geq, strict;
};

Triple triple_of(const Assignment& a, const Scheme& scheme);

std::string show(const Assignment& a, const Scheme& scheme);

} // namespace ho::poly

#endif
