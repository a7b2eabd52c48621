// The processor catalog: dependency graph, static switch, useless-DP
// removal, extend, condition adding, formative and usable rules, both
// subterm criteria, loop search and the reduction triple processors.
//
// Every proc_* function is pure and returns not_applicable when its
// preconditions fail or it would make no progress.
#ifndef HO_PROCESSORS_HPP
#define HO_PROCESSORS_HPP

#include "ho/framework.hpp"
#include "ho/polyint.hpp"

namespace ho {

// ---- dependency graph

struct GraphApprox {
  std::vector<std::vector<bool>> edge; // edge[i][j]: DP i may be followed by DP j
  std::vector<std::string> notes;      // one line per suppressed edge
};

// An edge is kept unless a constructor clash or a variable-introduction
// argument refutes it; the result over-approximates the dependency graph.
GraphApprox graph_approx(const std::vector<DP>& P, const RuleSet& R);
// Components made of nodes that lie on a cycle, ordered by smallest index.
std::vector<std::vector<std::size_t>> scc_on_cycles(const GraphApprox& G);

ProcessorResult proc_graph(const DPProblem& M, const Options& opt);
ProcessorResult proc_to_static(const DPProblem& M, const Options& opt);

// ---- structural processors

ProcessorResult proc_useless(const DPProblem& M, const Options& opt);
ProcessorResult proc_extend(const DPProblem& M, const Options& opt);
ProcessorResult proc_addcond(const DPProblem& M, const Options& opt);

// rhs shape test: s : sigma has shape (a, sigma); a is a symbol name,
// "\\" for lambda or "_|_" for a variable head
bool has_shape(const Term& s, const std::string& a, const Type& tau);
// FR(P, R) computed over R+ and mapped back to R
RuleSet formative_rules(const std::vector<DP>& P, const RuleSet& R);
ProcessorResult proc_formative(const DPProblem& M, const Options& opt);

// symbol closure from the DP right-hand sides, all of R when an applied
// meta-variable or variable is reached; always joined with the projection
// rules _p_s X Y => X | Y for every sort s
RuleSet usable_rules(const std::vector<DP>& P, const RuleSet& R);
ProcessorResult proc_usable(const DPProblem& M, const Options& opt);

// ---- projections

using Projection = std::map<std::string, int>; // show(head) -> 1-based argument

// heads(P) with the largest index allowed for each; nullopt when P is
// collapsing or some side is not headed by a symbol
std::optional<std::map<std::string, int>> projection_heads(const std::vector<DP>& P);
std::optional<Term> project(const Term& s, const Projection& nu);
std::string show(const Projection& nu);

ProcessorResult proc_subterm(const DPProblem& M, const Options& opt);
ProcessorResult proc_static_subterm(const DPProblem& M, const Options& opt);

// ---- loops

// Closed beta-normal arity-respecting terms of `type` with exactly `size`
// symbols, variable occurrences and binders, over the given symbols.
std::vector<Term> enumerate_terms(const Type& type, int size, const std::vector<Symbol>& symbols,
                                  const ArityMap& ar = {});
ProcessorResult proc_nontermination(const DPProblem& M, const Options& opt);

// ---- reduction triples

enum class TripleVariant { basic, base, tagged };
std::string show(TripleVariant v);

struct OrderingRequirements {
  std::vector<poly::Requirement> strict;     // DPs in P1
  std::vector<poly::Requirement> weak_pair;  // DPs in P2
  std::vector<poly::Requirement> weak_rule;  // rules
  std::vector<poly::Requirement> auxiliary;  // projection, tag and marking laws
  bool collapsing = false;
};

// Requirements with every DP strict; nullopt when the variant does not
// apply (tagged: not abstraction-simple or f = all; basic: collapsing P).
std::optional<OrderingRequirements> triple_requirements(const DPProblem& M, TripleVariant v);
ProcessorResult proc_triple(const DPProblem& M, TripleVariant v, const Options& opt);

// ---- strategies

std::vector<std::string> processor_names();
std::optional<Processor> processor_by_name(const std::string& name);
std::vector<Processor> default_strategy();
std::vector<Processor> default_infinite_strategy();

} // namespace ho

#endif
