// Meta-substitutions, the ~e expansion, application with one-level
// beta-development, meta-variable conditions and pattern matching.
#ifndef HO_SUBST_HPP
#define HO_SUBST_HPP

#include <optional>
#include <set>
#include <utility>

#include "ho/term.hpp"

namespace ho {

struct Substitution {
  std::map<std::string, Term> vars;  // free variable -> term
  std::map<std::string, Term> metas; // meta-variable -> closed term of type(Z)

  bool empty() const { return vars.empty() && metas.empty(); }
};

// (Z : i), i counted from 1
using Condition = std::pair<std::string, int>;
using Conditions = std::set<Condition>;

std::string show(const Conditions& a);

struct Expansion {
  std::vector<Term> xs; // fresh variables x1..xe
  Term body;
};

// gamma(Z) ~e lambda x1..xe. body
Expansion approx_e(const Term& value, int e);
Expansion approx_e(const Substitution& g, const MetaVar& z, int e);

Term apply_subst(const Term& s, const Substitution& g);

bool respects(const Substitution& g, const Conditions& a);
// lambda x1..xi.. u regards its i-th argument (the binder is used, or the
// i-th argument is only supplied through eta)
bool regards_argument(const Term& value, int i);

// Pattern matching; l a pattern, t a term or meta-term.  The result binds
// exactly the meta-variables of l.
std::optional<Substitution> match(const Term& l, const Term& t);
// Extends an existing substitution (used for non-linear or multi-term matching).
bool match_into(const Term& l, const Term& t, Substitution& d);

} // namespace ho

#endif
