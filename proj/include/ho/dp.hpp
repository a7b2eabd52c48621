// Dependency pairs: marking, beta-reduced sub-meta-terms and candidates,
// dynamic and static DP generation, accessibility and the AFP check.
#ifndef HO_DP_HPP
#define HO_DP_HPP

#include <optional>

#include "ho/rewrite.hpp"

namespace ho {

struct DP {
  Term lhs, rhs;
  Conditions conds;
};

std::string show(const DP& p);
// rhs headed by a meta-variable application
bool is_collapsing(const DP& p);
bool is_collapsing(const std::vector<DP>& ps);
// up to alpha and a bijective renaming of meta-variables
bool dp_equal(const DP& a, const DP& b);
// multiset-free comparison: every element of one has an equal in the other
bool same_dps(const std::vector<DP>& a, const std::vector<DP>& b);

struct Candidate {
  Term term;
  Conditions conds;
};

// f s1..sk => f# s1..sk when k = ar(f) exactly and f is defined
Term mark(const Term& s, const RuleSet& R);
// removes the mark of the head symbol, if any
Term unmark(const Term& s);
// removes every sharp and tag mark
Term unmark_all(const Term& s);

// All (t, A) with s reaching t, A minimal per t; binders are opened with
// fresh variables, so t may contain free variables that are bound in s.
std::vector<Candidate> brsmt_reachable(const Term& s);
std::vector<Candidate> candidates(const Term& s, const RuleSet& R);

// l |> p, choosing the names of opened binders freely
bool strict_subterm_open(const Term& l, const Term& p);

std::vector<DP> ddp(const RuleSet& R);

// Free variables become fresh 0-ary meta-variables (x : s becomes X : s).
// Names in `avoid` are not used.
Term metafy(const Term& p, const std::set<std::string>& avoid = {});

std::vector<DP> sdp(const RuleSet& R);

// ---- sort orderings and accessibility

struct SortOrdering {
  std::map<std::string, int> rank; // absent sorts have rank 0

  int rank_of(const std::string& s) const;
  bool geq(const std::string& a, const std::string& b) const { return rank_of(a) >= rank_of(b); }
  bool gt(const std::string& a, const std::string& b) const { return rank_of(a) > rank_of(b); }
};

std::string show(const SortOrdering& ord);

// iota >=+ sigma and iota >- sigma
bool pos_geq(const std::string& iota, const Type& sigma, const SortOrdering& ord);
bool neg_gt(const std::string& iota, const Type& sigma, const SortOrdering& ord);

// 1-based accessible argument positions
std::set<int> acc_indices(const Symbol& f, const SortOrdering& ord);
std::set<int> acc_indices_var(const Type& x, const SortOrdering& ord);

bool acc_subterm(const Term& s, const Term& t, const SortOrdering& ord);
// s |>acc Z<x1,..,xk> for some variables x1..xk
bool acc_reaches_meta(const Term& s, const std::string& z, const SortOrdering& ord);

bool arities_maximal(const RuleSet& R);
bool rules_afp_under(const RuleSet& R, const SortOrdering& ord);
std::optional<SortOrdering> find_afp_ordering(const RuleSet& R);

bool is_abstraction_simple(const std::vector<DP>& P, const RuleSet& R);

// f s1..sk with k = ar(f) and a free (or loosely bound) variable becomes
// f- s1..sk; marked heads are left alone
Term tag(const Term& s, const ArityMap& ar);

} // namespace ho

#endif
