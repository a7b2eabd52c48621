// Rules, rule sets, one-step rewriting (rule and beta steps at any
// position), beta-normalization, R+ and R-eta-expansion, and a bounded
// brute-force termination oracle.
#ifndef HO_REWRITE_HPP
#define HO_REWRITE_HPP

#include <optional>

#include "ho/subst.hpp"

namespace ho {

struct Rule {
  Term lhs, rhs;
};

std::string show(const Rule& r);
// Empty string when r is a well-formed rule.
std::string rule_error(const Rule& r);
bool rule_equal(const Rule& a, const Rule& b); // up to alpha and meta-variable renaming

using Signature = std::map<std::string, Symbol>;

class RuleSet {
public:
  RuleSet() = default;
  // ar defaults to infer_max_arity over the rules
  RuleSet(std::vector<Rule> rules, Signature sig, std::optional<ArityMap> ar = std::nullopt);

  const std::vector<Rule>& rules() const { return rules_; }
  const Signature& signature() const { return sig_; }
  const ArityMap& arity() const { return ar_; }
  const std::set<std::string>& defined() const { return defined_; }
  bool is_defined(const Symbol& f) const { return defined_.count(f.name) > 0; }
  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }

  // same signature and arity, different rules
  RuleSet with_rules(std::vector<Rule> rules) const;

private:
  std::vector<Rule> rules_;
  Signature sig_;
  ArityMap ar_;
  std::set<std::string> defined_;
};

Symbol root_symbol(const Rule& r);

// Positions: 1 = function part / abstraction body / first meta argument,
// 2 = argument part; meta-variable argument i is i.
using Position = std::vector<int>;

struct Reduct {
  Position pos;
  Term result;
  int rule = -1; // -1 for a beta step
};

// All one-step reducts, pre-order (root first), rules in order before beta.
std::vector<Reduct> reduce_once(const Term& s, const RuleSet& R);
// Only the rule steps at the root.
std::vector<Term> root_rule_reducts(const Term& s, const RuleSet& R);
Term beta_normalize(const Term& s);
bool is_beta_normal(const Term& s);

// Term at a position (binders opened with fresh names), nullptr if absent.
Term subterm_at(const Term& s, const Position& p);

// R+: the extensions l Z1..Zi => r Z1..Zi
RuleSet rules_eta(const RuleSet& R);
std::vector<Rule> eta_extensions(const Rule& r);
// R-up: eta-long forms at base type
RuleSet eta_expand_rules(const RuleSet& R);
Term eta_long(const Term& s);

enum class Termination { terminating, nonterminating, unknown };

struct OracleResult {
  Termination verdict = Termination::unknown;
  std::vector<Term> cycle; // when nonterminating: s_1 -> ... -> s_n -> s_1
  std::size_t explored = 0;
};

OracleResult terminates_bounded(const Term& s, const RuleSet& R, std::size_t fuel);

// true if t is reachable from s in between 1 and max_steps steps (BFS,
// bounded by max_nodes visited terms)
bool reaches(const Term& s, const Term& t, const RuleSet& R, int max_steps, std::size_t max_nodes = 20000);

} // namespace ho

#endif
